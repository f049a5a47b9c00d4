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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "oscnet/network.hpp"
#include "oscnet/rng.hpp"

namespace oscnet::testing {

inline constexpr double kGradStep = 1e-5;
inline constexpr double kGradRelTol = 1e-5;
// Relative error is taken against max(|a|, |n|, kGradFloor) so parameters
// whose true gradient is ~0 are not judged on rounding noise.
inline constexpr double kGradFloor = 1e-2;

struct GradCheckResult {
  std::size_t checked = 0;
  std::size_t failed = 0;
  double worst_rel = 0.0;
  std::string worst_where;
};

inline double grad_rel_error(double a, double n) {
  return std::abs(a - n) / std::max({std::abs(a), std::abs(n), kGradFloor});
}

/// Compares Network::backward with central differences of loss_value for
/// every weight and bias entry.
inline GradCheckResult check_gradients(Network& net, const Tensor& x, LossKind loss, const Tensor& y) {
  net.forward(x);
  const Gradients g = net.backward(loss, y);
  GradCheckResult r;
  auto& params = net.params();
  for (std::size_t k = 0; k < params.size(); ++k) {
    for (int which = 0; which < 2; ++which) {
      Tensor& t = which == 0 ? params[k].weight : params[k].bias;
      const Tensor& gt = which == 0 ? g[k].weight : g[k].bias;
      for (std::size_t i = 0; i < t.size(); ++i) {
        const double saved = t[i];
        t[i] = saved + kGradStep;
        const double up = loss_value(loss, net.predict(x), y);
        t[i] = saved - kGradStep;
        const double down = loss_value(loss, net.predict(x), y);
        t[i] = saved;
        const double numeric = (up - down) / (2 * kGradStep);
        const double rel = grad_rel_error(gt[i], numeric);
        ++r.checked;
        if (rel > kGradRelTol) ++r.failed;
        if (rel > r.worst_rel) {
          r.worst_rel = rel;
          r.worst_where = "layer " + std::to_string(k) + (which == 0 ? " weight[" : " bias[") +
                          std::to_string(i) + "]";
        }
      }
    }
  }
  return r;
}

// Smallest |z| over every cached pre-activation of layers with an activation;
// kinked activations are only checked away from their kink.
inline double min_abs_pre_activation(const Network& net) {
  double m = INFINITY;
  for (std::size_t k = 0; k < net.layers().size(); ++k) {
    if (!net.layers()[k].activation) continue;
    for (double z : net.cached_pre_activation(k).values()) m = std::min(m, std::abs(z));
  }
  return m;
}

// Smallest gap between the largest and second-largest entry of any pooling
// window after the first layer, so a finite-difference step cannot swap the
// winner.
inline double min_pool_margin(const Network& net) {
  double m = INFINITY;
  for (std::size_t k = 0; k < net.layers().size(); ++k) {
    const LayerSpec& s = net.layers()[k];
    if (s.kind != LayerKind::kMaxPool || k == 0) continue;
    const Shape& in = net.layer_output_shape(k - 1);
    const Tensor& z = net.cached_pre_activation(k);
    const Tensor& a = net.cached_activation(k - 1);
    const std::size_t n = a.dim(0), c = in[0], h = in[1], w = in[2];
    const std::size_t oh = z.dim(2), ow = z.dim(3);
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t ch = 0; ch < c; ++ch)
        for (std::size_t i = 0; i < oh; ++i)
          for (std::size_t j = 0; j < ow; ++j) {
            double best = -INFINITY, second = -INFINITY;
            for (std::size_t u = 0; u < s.kernel; ++u)
              for (std::size_t v = 0; v < s.kernel; ++v) {
                const double val = a[((b * c + ch) * h + i * s.stride + u) * w + j * s.stride + v];
                if (val > best) {
                  second = best;
                  best = val;
                } else if (val > second) {
                  second = val;
                }
              }
            // exact ties are ReLU zeros on both sides and stay tied
            if (best > second) m = std::min(m, best - second);
          }
  }
  return m;
}


// Small nets covering every layer type: dense, padded conv with pooling,
// strided unpadded conv.
inline Network dense_net(Activation act) {
  return Network({LayerSpec::dense(4, act), LayerSpec::dense(3, act), LayerSpec::dense(2, std::nullopt)}, {5});
}

inline Network conv_net(Activation act) {
  return Network({LayerSpec::conv2d(2, 3, 1, 1, act), LayerSpec::maxpool(2, 2), LayerSpec::conv2d(3, 2, 1, 0, act),
                  LayerSpec::flatten(), LayerSpec::dense(4, act), LayerSpec::dense(3, std::nullopt)},
                 {2, 6, 6});
}

inline Network strided_net(Activation act) {
  return Network({LayerSpec::conv2d(2, 3, 2, 0, act), LayerSpec::flatten(), LayerSpec::dense(2, act)}, {1, 7, 7});
}

inline Tensor class_targets(Rng& rng, std::size_t n, std::size_t classes) {
  Tensor t({n});
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(rng.index(classes));
  return t;
}

// Kinked activations and pooling winners must sit clear of the step.
inline bool well_conditioned(Network& net, const Tensor& x) {
  net.forward(x);
  bool ok = min_pool_margin(net) > 1e-3;
  for (std::size_t k = 0; k < net.layers().size(); ++k) {
    const auto& a = net.layers()[k].activation;
    if (!a || traits(*a).smooth) continue;
    for (double z : net.cached_pre_activation(k).values()) ok = ok && std::abs(z) > 1e-3;
  }
  return ok;
}

inline void randomize_biases(Network& net, Rng& rng) {
  for (auto& p : net.params()) {
    if (!p.bias.empty()) p.bias = uniform(rng, p.bias.shape(), -0.5, 0.5);
  }
}

struct GradSuiteResult {
  std::size_t instances = 0;
  std::size_t failed_instances = 0;
  std::size_t undrawable = 0;  // no well-conditioned draw within 100 tries
  double worst_rel = 0.0;
  std::string worst_where;
};

/// Every activation x {dense_net, conv_net, strided_net} x `reps` random
/// draws, batch 4. strided_net uses MSE, the others softmax cross-entropy.
inline GradSuiteResult run_gradient_suite(std::uint64_t seed, int reps) {
  Rng rng(seed);
  GradSuiteResult out;
  for (Activation act : kAllActivations) {
    for (int rep = 0; rep < reps; ++rep) {
      for (int arch = 0; arch < 3; ++arch) {
        Network net = arch == 0 ? dense_net(act) : arch == 1 ? conv_net(act) : strided_net(act);
        Shape xs = net.input_shape();
        xs.insert(xs.begin(), 4);
        Tensor x;
        int tries = 0;
        do {
          net.init_xavier_uniform(rng);
          randomize_biases(net, rng);
          x = uniform(rng, xs, -1, 1);
        } while (!well_conditioned(net, x) && ++tries < 100);
        if (tries == 100) {
          ++out.undrawable;
          continue;
        }
        const bool mse = arch == 2;
        const std::size_t outs = net.output_shape()[0];
        const Tensor y = mse ? uniform(rng, {4, outs}, -1, 1) : class_targets(rng, 4, outs);
        const auto r = check_gradients(net, x, mse ? LossKind::kMeanSquaredError : LossKind::kSoftmaxCrossEntropy, y);
        ++out.instances;
        if (r.failed > 0) ++out.failed_instances;
        if (r.worst_rel > out.worst_rel) {
          out.worst_rel = r.worst_rel;
          out.worst_where = std::string(name(act)) + " arch " + std::to_string(arch) + " " + r.worst_where;
        }
      }
    }
  }
  return out;
}

}  // namespace oscnet::testing
