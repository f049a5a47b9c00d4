/* Copyright 2026 The oscnet Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oscnet/activations.hpp"
#include "oscnet/datasets.hpp"
#include "oscnet/network.hpp"
#include "oscnet/optimizers.hpp"
#include "oscnet/xor_lab.hpp"

namespace oscnet {

enum class DatasetKind { kCifar10, kIdx, kXor };

/// Everything that determines a training run. Text form is one `key = value`
/// per line with `#` comments; keys:
///
///   dataset           cifar10 | idx | xor
///   train_data        cifar10: batch file or directory of data_batch_*.bin;
///                     idx: image file
///   train_labels      idx label file
///   val_data          cifar10: batch file (default <dir>/test_batch.bin);
///                     idx: image file
///   val_labels        idx label file
///   subset_train, subset_val, epochs, batch_size, seed
///   optimizer         sgd | rmsprop
///   learning_rate, decay, rho, epsilon
///   conv_activation, dense_activation    activation names
///   arch              cifar-compact | single-neuron
///   record_timing     true | false (false writes wall_seconds as 0)
struct TrainConfig {
  DatasetKind dataset = DatasetKind::kCifar10;
  std::string train_data;
  std::string train_labels;
  std::string val_data;
  std::string val_labels;
  std::size_t subset_train = 5000;
  std::size_t subset_val = 1000;
  std::size_t epochs = 5;
  std::size_t batch_size = 64;
  std::uint64_t seed = 1;
  std::string optimizer = "rmsprop";
  double learning_rate = 1e-4;
  double decay = 1e-6;
  double rho = 0.9;
  double epsilon = 1e-7;
  Activation conv_activation = Activation::kReLU;
  Activation dense_activation = Activation::kReLU;
  std::string arch = "cifar-compact";
  bool record_timing = true;

  OptimizerConfig optimizer_config() const;
  void validate() const;
};

// Throws UsageError for unknown keys or unparsable values.
void apply_config_value(TrainConfig& cfg, const std::string& key, const std::string& value);
TrainConfig parse_config(const std::string& text, TrainConfig base = {});
TrainConfig load_config_file(const std::string& path, TrainConfig base = {});
std::string config_to_text(const TrainConfig& cfg);

/// "cifar-compact": Conv(32,3,s1,p1)+conv_act, Conv(32,3,s1,p1)+conv_act,
/// MaxPool(2,2), Conv(64,3,s1,p1)+conv_act, Conv(64,3,s1,p1)+conv_act,
/// MaxPool(2,2), Flatten, Dense(128)+dense_act, Dense(classes) logits.
/// "single-neuron": Dense(1)+dense_act over a 2-vector.
/// Parameters are zero; call init_xavier_uniform.
Network build_arch(const std::string& arch, Activation conv_act, Activation dense_act,
                   const Shape& input_shape = {3, 32, 32}, std::size_t classes = 10);

struct EpochMetrics {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double train_accuracy = 0.0;
  double val_loss = 0.0;
  double val_accuracy = 0.0;
  double wall_seconds = 0.0;
};

struct TrainResult {
  std::vector<EpochMetrics> epochs;
  Network model;
};

struct DataSplit {
  Dataset train;
  Dataset val;
};

// Loads and subsets the configured data. DataError on missing or bad files.
DataSplit load_data(const TrainConfig& cfg);

/// Shuffled mini-batch training, deterministic in cfg.seed: one Rng(seed)
/// supplies the Xavier draws and then every epoch's Fisher-Yates shuffle.
/// Classification data uses softmax cross-entropy and argmax accuracy; the
/// XOR set uses MSE and sign accuracy. Throws DivergenceError naming the
/// epoch and batch on a non-finite loss.
TrainResult train(const TrainConfig& cfg, const DataSplit& data);
TrainResult train(const TrainConfig& cfg);

std::string metrics_csv(const std::vector<EpochMetrics>& epochs);
std::string train_summary_json(const TrainConfig& cfg, const TrainResult& result);

struct ComparisonRow {
  Activation conv_activation;
  Activation dense_activation;
  std::vector<std::uint64_t> seeds;
  std::vector<double> final_val_accuracy;
  std::vector<double> final_val_loss;
  double mean_accuracy_pct = 0.0;
  double sd_accuracy_pct = 0.0;  // sample SD, 0 for one seed
  double mean_loss = 0.0;
  double sd_loss = 0.0;
};

using ActivationPair = std::pair<Activation, Activation>;

// "gcu:relu,relu:relu" -> pairs; "1,2,3" -> seeds.
std::vector<ActivationPair> parse_pairs(const std::string& text);
std::vector<std::uint64_t> parse_seeds(const std::string& text);
std::vector<std::size_t> parse_indices(const std::string& text);

/// Independent train() runs for every (pair, seed), rows in `pairs` order.
std::vector<ComparisonRow> compare_activations(const TrainConfig& base,
                                               const std::vector<ActivationPair>& pairs,
                                               const std::vector<std::uint64_t>& seeds);
std::vector<ComparisonRow> compare_activations(const TrainConfig& base, const DataSplit& data,
                                               const std::vector<ActivationPair>& pairs,
                                               const std::vector<std::uint64_t>& seeds);
// conv_activation,dense_activation,top1_acc_pct,sd_acc,loss,sd_loss,runs
std::string comparison_csv(const std::vector<ComparisonRow>& rows);
// conv_activation,dense_activation,seed,val_accuracy,val_loss
std::string comparison_runs_csv(const std::vector<ComparisonRow>& rows);

struct XorExperiment {
  Activation activation = Activation::kGCU;
  double alpha = 0.01;
  int max_epochs = 10000;
  std::vector<std::uint64_t> seeds;
  std::vector<XorTrainResult> results;

  std::size_t successes() const;
};

// train_xor with Rng(seed) for each seed.
XorExperiment run_xor_seeds(Activation activation, const std::vector<std::uint64_t>& seeds,
                            double alpha, int max_epochs);
// seed,success,epochs,w1,w2,b
std::string xor_runs_csv(const XorExperiment& exp);
std::string xor_summary_json(const XorExperiment& exp);

/// Netpbm 8-bit images: P5 grayscale or P6 color, or a CIFAR-10 batch file
/// (`record` picks the record). Returns a (1, C, H, W) tensor in [0, 1].
Tensor load_image(const std::string& path, std::size_t record = 0);

// Binary P5 of a row-major plane.
std::vector<std::uint8_t> encode_pgm(std::span<const std::uint8_t> pixels, std::size_t width,
                                     std::size_t height);

/// Min-max normalizes one channel to 0..255 (rounded); a constant channel
/// maps to 128.
std::vector<std::uint8_t> normalize_channel(std::span<const double> values);

/// Runs `image` through the network and writes the activation of every
/// channel of each listed Conv2d layer (0-based layer index) as
/// layer<LL>_ch<CCC>.pgm in out_dir. Returns the written paths. Throws
/// UsageError for an index that is not a conv layer.
std::vector<std::string> export_feature_maps(const Network& net, const Tensor& image,
                                             const std::vector<std::size_t>& layers,
                                             const std::string& out_dir);

}  // namespace oscnet
