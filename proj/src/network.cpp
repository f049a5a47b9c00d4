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

#include "oscnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oscnet/error.hpp"

namespace oscnet {

namespace {

[[noreturn]] void layer_error(std::size_t k, const std::string& what) {
  std::ostringstream os;
  os << "layer " << k << ": " << what;
  throw ShapeError(os.str());
}

// Targets for cross-entropy as one class index per row.
std::vector<std::size_t> class_indices(const Tensor& output, const Tensor& targets) {
  const std::size_t n = output.dim(0), classes = output.dim(1);
  std::vector<std::size_t> idx(n);
  if (targets.rank() == 1 && targets.dim(0) == n) {
    for (std::size_t i = 0; i < n; ++i) {
      const double t = targets[i];
      if (!(t >= 0.0) || t != std::floor(t) || t >= static_cast<double>(classes)) {
        throw ShapeError("cross-entropy target out of range");
      }
      idx[i] = static_cast<std::size_t>(t);
    }
    return idx;
  }
  if (targets.shape() == output.shape()) {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t hot = classes;
      for (std::size_t c = 0; c < classes; ++c) {
        const double v = targets.at(i, c);
        if (v == 1.0 && hot == classes) {
          hot = c;
        } else if (v != 0.0) {
          throw ShapeError("cross-entropy targets must be one-hot rows");
        }
      }
      if (hot == classes) throw ShapeError("cross-entropy target row has no hot entry");
      idx[i] = hot;
    }
    return idx;
  }
  std::ostringstream os;
  os << "cross-entropy targets " << shape_string(targets.shape())
     << " do not fit output " << shape_string(output.shape());
  throw ShapeError(os.str());
}

void require_logits(const Tensor& output) {
  if (output.rank() != 2 || output.dim(0) == 0) {
    throw ShapeError("cross-entropy expects (N, C) logits, got " +
                     shape_string(output.shape()));
  }
}

void apply_activation(const std::optional<Activation>& act, const Tensor& z, Tensor& a) {
  if (act) {
    a = Tensor(z.shape());
    apply_forward(*act, z.data(), a.data());
  } else {
    a = z;
  }
}

}  // namespace

LayerSpec LayerSpec::dense(std::size_t units, std::optional<Activation> act) {
  return {LayerKind::kDense, units, 0, 1, 0, act};
}

LayerSpec LayerSpec::conv2d(std::size_t channels, std::size_t kernel, std::size_t stride,
                            std::size_t padding, std::optional<Activation> act) {
  return {LayerKind::kConv2d, channels, kernel, stride, padding, act};
}

LayerSpec LayerSpec::maxpool(std::size_t window, std::size_t stride) {
  return {LayerKind::kMaxPool, 0, window, stride, 0, std::nullopt};
}

LayerSpec LayerSpec::flatten() { return {LayerKind::kFlatten, 0, 0, 1, 0, std::nullopt}; }

Tensor softmax(const Tensor& logits) {
  require_logits(logits);
  const std::size_t n = logits.dim(0), c = logits.dim(1);
  Tensor p(logits.shape());
  for (std::size_t i = 0; i < n; ++i) {
    double mx = logits.at(i, 0);
    for (std::size_t j = 1; j < c; ++j) mx = std::max(mx, logits.at(i, j));
    double sum = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
      p.at(i, j) = std::exp(logits.at(i, j) - mx);
      sum += p.at(i, j);
    }
    for (std::size_t j = 0; j < c; ++j) p.at(i, j) /= sum;
  }
  return p;
}

double loss_value(LossKind loss, const Tensor& output, const Tensor& targets) {
  if (loss == LossKind::kMeanSquaredError) {
    if (output.shape() != targets.shape()) {
      throw ShapeError("mse: output " + shape_string(output.shape()) + " vs targets " +
                       shape_string(targets.shape()));
    }
    if (output.empty()) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < output.size(); ++i) {
      const double d = targets[i] - output[i];
      sum += d * d;
    }
    return sum / static_cast<double>(output.size());
  }
  require_logits(output);
  const auto idx = class_indices(output, targets);
  const std::size_t n = output.dim(0), c = output.dim(1);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double mx = output.at(i, 0);
    for (std::size_t j = 1; j < c; ++j) mx = std::max(mx, output.at(i, j));
    double sum = 0.0;
    for (std::size_t j = 0; j < c; ++j) sum += std::exp(output.at(i, j) - mx);
    // -ln p_t = log-sum-exp - z_t
    total += mx + std::log(sum) - output.at(i, idx[i]);
  }
  return total / static_cast<double>(n);
}

Tensor loss_gradient(LossKind loss, const Tensor& output, const Tensor& targets) {
  if (loss == LossKind::kMeanSquaredError) {
    if (output.shape() != targets.shape()) {
      throw ShapeError("mse: output " + shape_string(output.shape()) + " vs targets " +
                       shape_string(targets.shape()));
    }
    Tensor g(output.shape());
    const double scale = 2.0 / static_cast<double>(std::max<std::size_t>(output.size(), 1));
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = scale * (output[i] - targets[i]);
    return g;
  }
  const auto idx = class_indices(output, targets);
  Tensor g = softmax(output);
  const std::size_t n = output.dim(0), c = output.dim(1);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.at(i, idx[i]) -= 1.0;
    for (std::size_t j = 0; j < c; ++j) g.at(i, j) *= inv_n;
  }
  return g;
}

Network::Network(std::vector<LayerSpec> layers, Shape input_shape)
    : layers_(std::move(layers)), input_shape_(std::move(input_shape)) {
  if (input_shape_.empty() || shape_volume(input_shape_) == 0) {
    throw ShapeError("network input shape must be non-empty and positive");
  }
  Shape cur = input_shape_;
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const LayerSpec& spec = layers_[k];
    LayerParams p;
    switch (spec.kind) {
      case LayerKind::kDense:
        if (cur.size() != 1) {
          layer_error(k, "dense layer needs a flat input, got " + shape_string(cur));
        }
        if (spec.units == 0) layer_error(k, "dense layer needs at least one unit");
        p.weight = Tensor({spec.units, cur[0]});
        p.bias = Tensor({spec.units});
        cur = {spec.units};
        break;
      case LayerKind::kConv2d: {
        if (cur.size() != 3) {
          layer_error(k, "conv layer needs a CHW input, got " + shape_string(cur));
        }
        if (spec.units == 0 || spec.kernel == 0 || spec.stride == 0) {
          layer_error(k, "conv layer needs positive channels, kernel and stride");
        }
        try {
          const std::size_t h = window_output_size(cur[1], spec.kernel, spec.stride, spec.padding);
          const std::size_t w = window_output_size(cur[2], spec.kernel, spec.stride, spec.padding);
          p.weight = Tensor({spec.units, cur[0], spec.kernel, spec.kernel});
          p.bias = Tensor({spec.units});
          cur = {spec.units, h, w};
        } catch (const ShapeError& e) {
          layer_error(k, e.what());
        }
        break;
      }
      case LayerKind::kMaxPool:
        if (cur.size() != 3) {
          layer_error(k, "pool layer needs a CHW input, got " + shape_string(cur));
        }
        if (spec.activation) layer_error(k, "pool layer cannot carry an activation");
        try {
          cur = {cur[0], window_output_size(cur[1], spec.kernel, spec.stride, 0),
                 window_output_size(cur[2], spec.kernel, spec.stride, 0)};
        } catch (const Error& e) {
          layer_error(k, e.what());
        }
        break;
      case LayerKind::kFlatten:
        if (spec.activation) layer_error(k, "flatten cannot carry an activation");
        cur = {shape_volume(cur)};
        break;
    }
    params_.push_back(std::move(p));
    output_shapes_.push_back(cur);
  }
  if (layers_.empty()) output_shapes_.push_back(input_shape_);
}

std::size_t Network::parameter_count() const noexcept {
  std::size_t n = 0;
  for (const auto& p : params_) n += p.weight.size() + p.bias.size();
  return n;
}

void Network::init_xavier_uniform(Rng& rng) {
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const LayerSpec& spec = layers_[k];
    LayerParams& p = params_[k];
    if (!spec.has_params()) continue;
    double fan_in = 0.0, fan_out = 0.0;
    if (spec.kind == LayerKind::kDense) {
      fan_in = static_cast<double>(p.weight.dim(1));
      fan_out = static_cast<double>(p.weight.dim(0));
    } else {
      const double kk = static_cast<double>(spec.kernel * spec.kernel);
      fan_in = static_cast<double>(p.weight.dim(1)) * kk;
      fan_out = static_cast<double>(p.weight.dim(0)) * kk;
    }
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    p.weight = uniform(rng, p.weight.shape(), -limit, limit);
    p.bias = Tensor(p.bias.shape());
  }
  cache_.clear();
}

Tensor Network::forward(const Tensor& batch) {
  std::vector<LayerCache> cache;
  Tensor out = run(batch, &cache);
  cache_ = std::move(cache);
  return out;
}

Tensor Network::predict(const Tensor& batch) const { return run(batch, nullptr); }

Tensor Network::run(const Tensor& batch, std::vector<LayerCache>* cache) const {
  if (batch.rank() != input_shape_.size() + 1 ||
      !std::equal(input_shape_.begin(), input_shape_.end(), batch.shape().begin() + 1)) {
    layer_error(0, "input batch " + shape_string(batch.shape()) +
                       " does not match network input " + shape_string(input_shape_));
  }
  const std::size_t n = batch.dim(0);
  Tensor a = batch;
  if (cache) cache->resize(layers_.size());
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const LayerSpec& spec = layers_[k];
    const LayerParams& p = params_[k];
    Tensor z;
    std::vector<std::size_t> argmax;
    switch (spec.kind) {
      case LayerKind::kDense: {
        z = matmul_bt(a, p.weight);
        const std::size_t units = spec.units;
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < units; ++j) z.at(i, j) += p.bias[j];
        }
        break;
      }
      case LayerKind::kConv2d: {
        z = conv2d(a, p.weight, spec.stride, spec.padding);
        const std::size_t plane = z.dim(2) * z.dim(3);
        auto zd = z.data();
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t c = 0; c < spec.units; ++c) {
            double* row = zd.data() + (i * spec.units + c) * plane;
            for (std::size_t q = 0; q < plane; ++q) row[q] += p.bias[c];
          }
        }
        break;
      }
      case LayerKind::kMaxPool: {
        PoolResult pooled = maxpool2d(a, spec.kernel, spec.stride);
        z = std::move(pooled.output);
        argmax = std::move(pooled.argmax);
        break;
      }
      case LayerKind::kFlatten:
        z = a.reshaped({n, shape_volume(a.shape()) / std::max<std::size_t>(n, 1)});
        break;
    }
    Tensor out;
    apply_activation(spec.activation, z, out);
    if (cache) {
      LayerCache& c = (*cache)[k];
      c.input = std::move(a);
      c.pre_activation = std::move(z);
      c.activation = out;
      c.argmax = std::move(argmax);
    }
    a = std::move(out);
  }
  return a;
}

Gradients Network::backward(LossKind loss, const Tensor& targets) const {
  if (cache_.size() != layers_.size() || layers_.empty()) {
    throw StateError("backward called without a cached forward pass");
  }
  Tensor grad = loss_gradient(loss, cache_.back().activation, targets);
  Gradients grads(layers_.size());
  for (std::size_t k = layers_.size(); k-- > 0;) {
    const LayerSpec& spec = layers_[k];
    const LayerCache& c = cache_[k];
    // delta^k = dJ/da^k (.) g'(z^k)
    if (spec.activation) {
      const auto z = c.pre_activation.data();
      auto g = grad.data();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] *= derivative(*spec.activation, z[i]);
    }
    const LayerParams& p = params_[k];
    switch (spec.kind) {
      case LayerKind::kDense: {
        // dJ/dW^k = delta^k (a^{k-1})^T, summed over the batch rows
        grads[k].weight = matmul_at(grad, c.input);
        grads[k].bias = Tensor({spec.units});
        for (std::size_t i = 0; i < grad.dim(0); ++i) {
          for (std::size_t j = 0; j < spec.units; ++j) grads[k].bias[j] += grad.at(i, j);
        }
        if (k > 0) grad = matmul(grad, p.weight);
        break;
      }
      case LayerKind::kConv2d: {
        Conv2dGradients cg = conv2d_backward(c.input, p.weight, grad, spec.stride, spec.padding);
        grads[k].weight = std::move(cg.kernels);
        grads[k].bias = Tensor({spec.units});
        const std::size_t plane = grad.dim(2) * grad.dim(3);
        const auto gd = grad.data();
        for (std::size_t i = 0; i < grad.dim(0); ++i) {
          for (std::size_t ch = 0; ch < spec.units; ++ch) {
            const double* row = gd.data() + (i * spec.units + ch) * plane;
            double s = 0.0;
            for (std::size_t q = 0; q < plane; ++q) s += row[q];
            grads[k].bias[ch] += s;
          }
        }
        grad = std::move(cg.input);
        break;
      }
      case LayerKind::kMaxPool:
        grad = maxpool2d_backward(grad, c.argmax, c.input.shape());
        break;
      case LayerKind::kFlatten:
        grad = grad.reshaped(c.input.shape());
        break;
    }
  }
  return grads;
}

const Tensor& Network::cached_pre_activation(std::size_t k) const {
  if (k >= cache_.size()) throw StateError("no cached pass for layer " + std::to_string(k));
  return cache_[k].pre_activation;
}

const Tensor& Network::cached_activation(std::size_t k) const {
  if (k >= cache_.size()) throw StateError("no cached pass for layer " + std::to_string(k));
  return cache_[k].activation;
}

}  // namespace oscnet
