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

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "oscnet/error.hpp"
#include "oscnet/experiment.hpp"

namespace oscnet {

namespace fs = std::filesystem;

namespace {

Shape sample_shape(const Tensor& inputs) {
  return Shape(inputs.shape().begin() + 1, inputs.shape().end());
}

std::string require_path(const std::string& path, const char* key) {
  if (path.empty()) throw DataError(fmt::format("config: {} is not set", key));
  if (!fs::exists(path)) throw DataError(fmt::format("{}: {} does not exist", key, path));
  return path;
}

std::vector<std::string> cifar_train_files(const std::string& path) {
  if (!fs::is_directory(path)) return {path};
  std::vector<std::string> files;
  for (int i = 1; i <= 5; ++i) {
    const fs::path p = fs::path(path) / fmt::format("data_batch_{}.bin", i);
    if (fs::exists(p)) files.push_back(p.string());
  }
  if (files.empty()) throw DataError("cifar10: no data_batch_*.bin in " + path);
  return files;
}

struct Batch {
  Tensor inputs;
  Tensor targets;
};

Batch make_batch(const Dataset& ds, std::span<const std::size_t> idx, LossKind loss) {
  Batch b{ds.gather(idx), {}};
  if (loss == LossKind::kMeanSquaredError) {
    b.targets = Tensor({idx.size(), 1});
  } else {
    b.targets = Tensor({idx.size()});
  }
  for (std::size_t i = 0; i < idx.size(); ++i) b.targets[i] = ds.labels[idx[i]];
  return b;
}

std::size_t count_correct(const Tensor& out, const Dataset& ds, std::span<const std::size_t> idx,
                          LossKind loss) {
  std::size_t correct = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const int label = ds.labels[idx[i]];
    if (loss == LossKind::kMeanSquaredError) {
      const double v = out.at(i, 0);
      const int sign = (v > 0.0) - (v < 0.0);
      correct += sign == label;
    } else {
      std::size_t best = 0;
      for (std::size_t c = 1; c < out.dim(1); ++c) {
        if (out.at(i, c) > out.at(i, best)) best = c;
      }
      correct += static_cast<int>(best) == label;
    }
  }
  return correct;
}

struct Evaluation {
  double loss = 0.0;
  double accuracy = 0.0;
};

Evaluation evaluate(const Network& net, const Dataset& ds, std::size_t batch_size, LossKind loss) {
  Evaluation ev;
  std::vector<std::size_t> idx;
  std::size_t correct = 0;
  for (std::size_t start = 0; start < ds.size(); start += batch_size) {
    idx.resize(std::min(batch_size, ds.size() - start));
    std::iota(idx.begin(), idx.end(), start);
    const Batch b = make_batch(ds, idx, loss);
    const Tensor out = net.predict(b.inputs);
    ev.loss += loss_value(loss, out, b.targets) * static_cast<double>(idx.size());
    correct += count_correct(out, ds, idx, loss);
  }
  ev.loss /= static_cast<double>(ds.size());
  ev.accuracy = static_cast<double>(correct) / static_cast<double>(ds.size());
  return ev;
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

Network build_arch(const std::string& arch, Activation conv_act, Activation dense_act,
                   const Shape& input_shape, std::size_t classes) {
  if (arch == "cifar-compact") {
    if (input_shape.size() != 3) {
      throw UsageError("cifar-compact needs CHW images, got input " + shape_string(input_shape));
    }
    return Network({LayerSpec::conv2d(32, 3, 1, 1, conv_act), LayerSpec::conv2d(32, 3, 1, 1, conv_act),
                    LayerSpec::maxpool(2, 2), LayerSpec::conv2d(64, 3, 1, 1, conv_act),
                    LayerSpec::conv2d(64, 3, 1, 1, conv_act), LayerSpec::maxpool(2, 2),
                    LayerSpec::flatten(), LayerSpec::dense(128, dense_act),
                    LayerSpec::dense(classes, std::nullopt)},
                   input_shape);
  }
  if (arch == "single-neuron") {
    if (input_shape != Shape{2}) {
      throw UsageError("single-neuron needs 2-vector inputs, got " + shape_string(input_shape));
    }
    return Network({LayerSpec::dense(1, dense_act)}, input_shape);
  }
  throw UsageError("unknown arch '" + arch + "' (known: cifar-compact, single-neuron)");
}

DataSplit load_data(const TrainConfig& cfg) {
  DataSplit split;
  switch (cfg.dataset) {
    case DatasetKind::kXor:
      split.train = xor_dataset();
      split.val = xor_dataset();
      break;
    case DatasetKind::kCifar10: {
      const std::string train = require_path(cfg.train_data, "train_data");
      std::string val = cfg.val_data;
      if (val.empty() && fs::is_directory(train)) val = (fs::path(train) / "test_batch.bin").string();
      split.train = load_cifar10_files(cifar_train_files(train), cfg.subset_train);
      split.val = load_cifar10_binary(require_path(val, "val_data"), cfg.subset_val);
      break;
    }
    case DatasetKind::kIdx:
      split.train = load_idx(require_path(cfg.train_data, "train_data"),
                             require_path(cfg.train_labels, "train_labels"), cfg.subset_train);
      split.val = load_idx(require_path(cfg.val_data, "val_data"),
                           require_path(cfg.val_labels, "val_labels"), cfg.subset_val);
      break;
  }
  if (split.train.size() == 0 || split.val.size() == 0) {
    throw DataError("dataset has no records");
  }
  return split;
}

TrainResult train(const TrainConfig& cfg) { return train(cfg, load_data(cfg)); }

TrainResult train(const TrainConfig& cfg, const DataSplit& data) {
  cfg.validate();
  const LossKind loss = cfg.dataset == DatasetKind::kXor ? LossKind::kMeanSquaredError
                                                         : LossKind::kSoftmaxCrossEntropy;
  const std::size_t classes = loss == LossKind::kMeanSquaredError ? 1 : data.train.num_classes;
  TrainResult result{{}, build_arch(cfg.arch, cfg.conv_activation, cfg.dense_activation,
                                    sample_shape(data.train.inputs), classes)};
  Network& net = result.model;
  Rng rng(cfg.seed);
  net.init_xavier_uniform(rng);
  auto opt = make_optimizer(cfg.optimizer_config());

  const std::size_t n = data.train.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i = n; i-- > 1;) std::swap(order[i], order[rng.index(i + 1)]);
    double loss_sum = 0.0;
    std::size_t correct = 0, batch_no = 0;
    for (std::size_t start = 0; start < n; start += cfg.batch_size, ++batch_no) {
      const std::span<const std::size_t> idx(order.data() + start, std::min(cfg.batch_size, n - start));
      const Batch b = make_batch(data.train, idx, loss);
      const Tensor out = net.forward(b.inputs);
      const double value = loss_value(loss, out, b.targets);
      if (!std::isfinite(value)) {
        throw DivergenceError(fmt::format("non-finite training loss at epoch {} batch {}", epoch, batch_no));
      }
      loss_sum += value * static_cast<double>(idx.size());
      correct += count_correct(out, data.train, idx, loss);
      opt->step(net.params(), net.backward(loss, b.targets));
    }
    net.clear_cache();
    const Evaluation val = evaluate(net, data.val, cfg.batch_size, loss);
    if (!std::isfinite(val.loss)) {
      throw DivergenceError(fmt::format("non-finite validation loss after epoch {} ({} batches)",
                                        epoch, batch_no));
    }
    EpochMetrics m;
    m.epoch = epoch;
    m.train_loss = loss_sum / static_cast<double>(n);
    m.train_accuracy = static_cast<double>(correct) / static_cast<double>(n);
    m.val_loss = val.loss;
    m.val_accuracy = val.accuracy;
    if (cfg.record_timing) {
      m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    result.epochs.push_back(m);
  }
  return result;
}

std::string metrics_csv(const std::vector<EpochMetrics>& epochs) {
  std::string out = "epoch,train_loss,train_acc,val_loss,val_acc,wall_seconds\n";
  for (const auto& m : epochs) {
    fmt::format_to(std::back_inserter(out), "{},{},{},{},{},{}\n", m.epoch, m.train_loss,
                   m.train_accuracy, m.val_loss, m.val_accuracy, m.wall_seconds);
  }
  return out;
}

std::string train_summary_json(const TrainConfig& cfg, const TrainResult& result) {
  nlohmann::ordered_json j;
  j["arch"] = cfg.arch;
  j["conv_activation"] = std::string(name(cfg.conv_activation));
  j["dense_activation"] = std::string(name(cfg.dense_activation));
  j["optimizer"] = cfg.optimizer;
  j["learning_rate"] = cfg.learning_rate;
  j["seed"] = cfg.seed;
  j["epochs"] = result.epochs.size();
  j["parameter_count"] = result.model.parameter_count();
  if (!result.epochs.empty()) {
    const auto& last = result.epochs.back();
    j["final_train_loss"] = last.train_loss;
    j["final_train_acc"] = last.train_accuracy;
    j["final_val_loss"] = last.val_loss;
    j["final_val_acc"] = last.val_accuracy;
  }
  return j.dump(2) + "\n";
}

std::vector<ActivationPair> parse_pairs(const std::string& text) {
  std::vector<ActivationPair> pairs;
  for (const std::string& item : split_list(text)) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw UsageError("pair '" + item + "' must look like conv:dense");
    }
    const auto conv = activation_from_name(item.substr(0, colon));
    const auto dense = activation_from_name(item.substr(colon + 1));
    if (!conv || !dense) throw UsageError("pair '" + item + "' names an unknown activation");
    pairs.emplace_back(*conv, *dense);
  }
  if (pairs.empty()) throw UsageError("need at least one activation pair");
  return pairs;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& idx : parse_indices(text)) seeds.push_back(idx);
  if (seeds.empty()) throw UsageError("need at least one seed");
  return seeds;
}

std::vector<std::size_t> parse_indices(const std::string& text) {
  std::vector<std::size_t> out;
  for (const std::string& item : split_list(text)) {
    if (item.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("'" + item + "' is not a non-negative integer");
    }
    out.push_back(static_cast<std::size_t>(std::stoull(item)));
  }
  return out;
}

std::vector<ComparisonRow> compare_activations(const TrainConfig& base,
                                               const std::vector<ActivationPair>& pairs,
                                               const std::vector<std::uint64_t>& seeds) {
  return compare_activations(base, load_data(base), pairs, seeds);
}

std::vector<ComparisonRow> compare_activations(const TrainConfig& base, const DataSplit& data,
                                               const std::vector<ActivationPair>& pairs,
                                               const std::vector<std::uint64_t>& seeds) {
  if (pairs.empty() || seeds.empty()) throw UsageError("compare: need pairs and seeds");
  std::vector<ComparisonRow> rows;
  for (const auto& [conv, dense] : pairs) {
    ComparisonRow row{conv, dense, seeds, {}, {}};
    for (std::uint64_t seed : seeds) {
      TrainConfig cfg = base;
      cfg.conv_activation = conv;
      cfg.dense_activation = dense;
      cfg.seed = seed;
      const TrainResult r = train(cfg, data);
      row.final_val_accuracy.push_back(r.epochs.back().val_accuracy);
      row.final_val_loss.push_back(r.epochs.back().val_loss);
    }
    std::vector<double> pct;
    for (double a : row.final_val_accuracy) pct.push_back(100.0 * a);
    row.mean_accuracy_pct = mean_of(pct);
    row.sd_accuracy_pct = sample_sd(pct);
    row.mean_loss = mean_of(row.final_val_loss);
    row.sd_loss = sample_sd(row.final_val_loss);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::string out = "conv_activation,dense_activation,top1_acc_pct,sd_acc,loss,sd_loss,runs\n";
  for (const auto& r : rows) {
    fmt::format_to(std::back_inserter(out), "{},{},{},{},{},{},{}\n", name(r.conv_activation),
                   name(r.dense_activation), r.mean_accuracy_pct, r.sd_accuracy_pct, r.mean_loss,
                   r.sd_loss, r.seeds.size());
  }
  return out;
}

std::string comparison_runs_csv(const std::vector<ComparisonRow>& rows) {
  std::string out = "conv_activation,dense_activation,seed,val_accuracy,val_loss\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.seeds.size(); ++i) {
      fmt::format_to(std::back_inserter(out), "{},{},{},{},{}\n", name(r.conv_activation),
                     name(r.dense_activation), r.seeds[i], r.final_val_accuracy[i],
                     r.final_val_loss[i]);
    }
  }
  return out;
}

std::size_t XorExperiment::successes() const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [](const auto& r) { return r.success; }));
}

XorExperiment run_xor_seeds(Activation activation, const std::vector<std::uint64_t>& seeds,
                            double alpha, int max_epochs) {
  XorExperiment exp{activation, alpha, max_epochs, seeds, {}};
  for (std::uint64_t seed : seeds) {
    Rng rng(seed);
    exp.results.push_back(train_xor(activation, rng, alpha, max_epochs));
  }
  return exp;
}

std::string xor_runs_csv(const XorExperiment& exp) {
  std::string out = "seed,success,epochs,w1,w2,b\n";
  for (std::size_t i = 0; i < exp.results.size(); ++i) {
    const auto& r = exp.results[i];
    fmt::format_to(std::back_inserter(out), "{},{},{},{},{},{}\n", exp.seeds[i], r.success ? 1 : 0,
                   r.epochs_used, r.neuron.w[0], r.neuron.w[1], r.neuron.b);
  }
  return out;
}

std::string xor_summary_json(const XorExperiment& exp) {
  nlohmann::ordered_json j;
  j["activation"] = std::string(name(exp.activation));
  j["alpha"] = exp.alpha;
  j["max_epochs"] = exp.max_epochs;
  j["seeds_run"] = exp.results.size();
  j["successes"] = exp.successes();
  j["success_rate"] = exp.results.empty()
                          ? 0.0
                          : static_cast<double>(exp.successes()) / static_cast<double>(exp.results.size());
  std::vector<int> epochs;
  for (const auto& r : exp.results) {
    if (r.success) epochs.push_back(r.epochs_used);
  }
  if (!epochs.empty()) {
    j["min_epochs_to_success"] = *std::min_element(epochs.begin(), epochs.end());
    j["max_epochs_to_success"] = *std::max_element(epochs.begin(), epochs.end());
    j["mean_epochs_to_success"] =
        std::accumulate(epochs.begin(), epochs.end(), 0.0) / static_cast<double>(epochs.size());
  }
  j["analytic_gcu_neuron_solves"] = solves_xor(analytic_gcu_xor_neuron());
  return j.dump(2) + "\n";
}

}  // namespace oscnet
