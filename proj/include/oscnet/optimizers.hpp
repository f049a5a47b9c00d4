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

#include <cstdint>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "oscnet/network.hpp"

namespace oscnet {

// Plain SGD without momentum.
struct SgdConfig {
  double learning_rate = 0.01;

  void validate() const;
};

/// RMSprop with inverse-time learning-rate decay applied per update:
///
///   s      <- rho * s + (1 - rho) * g^2
///   lr_t    = learning_rate / (1 + decay * t)
///   param  <- param - lr_t * g / (sqrt(s) + epsilon)
///
/// where t counts updates from 0.
struct RmspropConfig {
  double learning_rate = 1e-4;
  double decay = 1e-6;
  double rho = 0.9;
  double epsilon = 1e-7;

  void validate() const;
  double learning_rate_at(std::uint64_t step_index) const {
    return learning_rate / (1.0 + decay * static_cast<double>(step_index));
  }
};

using OptimizerConfig = std::variant<SgdConfig, RmspropConfig>;

// params <- params - lr * grads. Throws ShapeError on length mismatch.
void sgd_step(std::span<double> params, std::span<const double> grads, const SgdConfig& cfg);

// An empty accumulator is zero-initialized to the parameter length.
void rmsprop_step(std::span<double> params, std::span<const double> grads,
                  std::vector<double>& accumulator, const RmspropConfig& cfg,
                  std::uint64_t step_index);

// Applies one update to every parameter tensor of a network.
class Optimizer {
 public:
  virtual ~Optimizer() = default;
  virtual void step(std::vector<LayerParams>& params, const Gradients& grads) = 0;
  std::uint64_t steps_taken() const noexcept { return steps_; }

 protected:
  std::uint64_t steps_ = 0;
};

std::unique_ptr<Optimizer> make_optimizer(const OptimizerConfig& cfg);

}  // namespace oscnet
