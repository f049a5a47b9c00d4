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
#include <vector>

#include "oscnet/activations.hpp"
#include "oscnet/rng.hpp"
#include "oscnet/tensor.hpp"

namespace oscnet {

enum class LayerKind : std::uint8_t {
  kDense = 0,
  kConv2d = 1,
  kMaxPool = 2,
  kFlatten = 3,
};

/// One entry of a sequential model. Dense layers use `units`; Conv2d uses
/// units (output channels), kernel, stride and padding; MaxPool uses kernel
/// as the window size and stride. MaxPool and Flatten never carry an
/// activation.
struct LayerSpec {
  LayerKind kind = LayerKind::kDense;
  std::size_t units = 0;
  std::size_t kernel = 0;
  std::size_t stride = 1;
  std::size_t padding = 0;
  std::optional<Activation> activation;

  static LayerSpec dense(std::size_t units, std::optional<Activation> act);
  static LayerSpec conv2d(std::size_t channels, std::size_t kernel,
                          std::size_t stride, std::size_t padding,
                          std::optional<Activation> act);
  static LayerSpec maxpool(std::size_t window, std::size_t stride);
  static LayerSpec flatten();

  bool has_params() const noexcept {
    return kind == LayerKind::kDense || kind == LayerKind::kConv2d;
  }

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

// Dense: weight (out, in), bias (out). Conv2d: weight (O, C, K, K), bias (O).
// Both empty for parameter-free layers.
struct LayerParams {
  Tensor weight;
  Tensor bias;

  friend bool operator==(const LayerParams&, const LayerParams&) = default;
};

using Gradients = std::vector<LayerParams>;

enum class LossKind : std::uint8_t {
  // mean over batch and outputs of (y - a)^2, no 1/2 factor
  kMeanSquaredError = 0,
  // mean over batch of -ln softmax(a)[target]; network output is logits
  kSoftmaxCrossEntropy = 1,
};

// Row-wise numerically stable softmax of an (N, C) tensor.
Tensor softmax(const Tensor& logits);

// Targets for SoftmaxCrossEntropy are either class indices of shape (N) or
// one-hot rows of shape (N, C). MSE targets have the output's shape.
double loss_value(LossKind loss, const Tensor& output, const Tensor& targets);

// dJ/d(output) of the mean loss.
Tensor loss_gradient(LossKind loss, const Tensor& output, const Tensor& targets);

/// Sequential feed-forward model with explicit forward and backward passes.
///
/// Shapes are per sample; a batch prepends N. forward() caches every layer's
/// input, pre-activation z and activation a; backward() consumes that cache,
/// so one instance must not be driven from two threads at once. Copies are
/// deep and may be evaluated concurrently through predict().
class Network {
 public:
  // Validates the chain and allocates zero parameters. Throws ShapeError
  // naming the first layer whose input does not fit.
  Network(std::vector<LayerSpec> layers, Shape input_shape);

  const std::vector<LayerSpec>& layers() const noexcept { return layers_; }
  const Shape& input_shape() const noexcept { return input_shape_; }
  // Per-sample output shape of layer k.
  const Shape& layer_output_shape(std::size_t k) const { return output_shapes_.at(k); }
  const Shape& output_shape() const { return output_shapes_.back(); }

  std::vector<LayerParams>& params() noexcept { return params_; }
  const std::vector<LayerParams>& params() const noexcept { return params_; }
  std::size_t parameter_count() const noexcept;

  // Weights ~ U[-sqrt(6/(fan_in+fan_out)), +sqrt(6/(fan_in+fan_out))] in layer
  // order, biases zero. Conv fans are C*K*K and O*K*K.
  void init_xavier_uniform(Rng& rng);

  Tensor forward(const Tensor& batch);
  // forward() without touching the cache.
  Tensor predict(const Tensor& batch) const;

  // Gradients of the mean loss over the cached batch. Throws StateError when
  // no forward pass is cached.
  Gradients backward(LossKind loss, const Tensor& targets) const;

  bool has_cache() const noexcept { return !cache_.empty(); }
  // Cached pre-activation z^k and activation a^k of layer k (equal for layers
  // without an activation).
  const Tensor& cached_pre_activation(std::size_t k) const;
  const Tensor& cached_activation(std::size_t k) const;
  void clear_cache() noexcept { cache_.clear(); }

 private:
  struct LayerCache {
    Tensor input;
    Tensor pre_activation;
    Tensor activation;
    std::vector<std::size_t> argmax;
  };

  Tensor run(const Tensor& batch, std::vector<LayerCache>* cache) const;

  std::vector<LayerSpec> layers_;
  Shape input_shape_;
  std::vector<Shape> output_shapes_;
  std::vector<LayerParams> params_;
  std::vector<LayerCache> cache_;
};

inline Network init_xavier_uniform(Network net, Rng& rng) {
  net.init_xavier_uniform(rng);
  return net;
}

/// OSC1 checkpoint, all integers and floats little-endian:
///
///   "OSC1"                         4 bytes
///   u32 input_rank, u32 dims[input_rank]
///   u32 layer_count
///   per layer: u8 kind, u8 activation (255 = none), u16 zero,
///              u32 units, u32 kernel, u32 stride, u32 padding
///   per parameterized layer in order: f64 weight[...], f64 bias[...]
std::vector<std::uint8_t> encode_checkpoint(const Network& net);
Network decode_checkpoint(const std::vector<std::uint8_t>& bytes);
void save_checkpoint(const Network& net, const std::string& path);
Network load_checkpoint(const std::string& path);

}  // namespace oscnet
