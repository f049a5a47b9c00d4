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

#include "oscnet/optimizers.hpp"

#include <cmath>

#include "oscnet/error.hpp"

namespace oscnet {

namespace {

void require_aligned(std::size_t params, std::size_t grads, const char* who) {
  if (params != grads) {
    throw ShapeError(std::string(who) + ": " + std::to_string(params) +
                     " parameters vs " + std::to_string(grads) + " gradients");
  }
}

class Sgd final : public Optimizer {
 public:
  explicit Sgd(SgdConfig cfg) : cfg_(cfg) {}

  void step(std::vector<LayerParams>& params, const Gradients& grads) override {
    require_aligned(params.size(), grads.size(), "sgd");
    for (std::size_t k = 0; k < params.size(); ++k) {
      if (params[k].weight.empty()) continue;
      sgd_step(params[k].weight.data(), grads[k].weight.data(), cfg_);
      sgd_step(params[k].bias.data(), grads[k].bias.data(), cfg_);
    }
    ++steps_;
  }

 private:
  SgdConfig cfg_;
};

class Rmsprop final : public Optimizer {
 public:
  explicit Rmsprop(RmspropConfig cfg) : cfg_(cfg) {}

  void step(std::vector<LayerParams>& params, const Gradients& grads) override {
    require_aligned(params.size(), grads.size(), "rmsprop");
    if (weight_acc_.empty()) {
      weight_acc_.resize(params.size());
      bias_acc_.resize(params.size());
    }
    for (std::size_t k = 0; k < params.size(); ++k) {
      if (params[k].weight.empty()) continue;
      rmsprop_step(params[k].weight.data(), grads[k].weight.data(), weight_acc_[k], cfg_, steps_);
      rmsprop_step(params[k].bias.data(), grads[k].bias.data(), bias_acc_[k], cfg_, steps_);
    }
    ++steps_;
  }

 private:
  RmspropConfig cfg_;
  std::vector<std::vector<double>> weight_acc_;
  std::vector<std::vector<double>> bias_acc_;
};

}  // namespace

void SgdConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw UsageError("sgd: learning rate must be positive");
  }
}

void RmspropConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw UsageError("rmsprop: learning rate must be positive");
  }
  if (!(decay >= 0.0) || !std::isfinite(decay)) {
    throw UsageError("rmsprop: decay must be non-negative");
  }
  if (!(rho > 0.0 && rho < 1.0)) throw UsageError("rmsprop: rho must lie in (0, 1)");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw UsageError("rmsprop: epsilon must be positive");
  }
}

void sgd_step(std::span<double> params, std::span<const double> grads, const SgdConfig& cfg) {
  require_aligned(params.size(), grads.size(), "sgd_step");
  for (std::size_t i = 0; i < params.size(); ++i) params[i] -= cfg.learning_rate * grads[i];
}

void rmsprop_step(std::span<double> params, std::span<const double> grads,
                  std::vector<double>& accumulator, const RmspropConfig& cfg,
                  std::uint64_t step_index) {
  require_aligned(params.size(), grads.size(), "rmsprop_step");
  if (accumulator.empty()) accumulator.assign(params.size(), 0.0);
  require_aligned(params.size(), accumulator.size(), "rmsprop_step accumulator");
  const double lr = cfg.learning_rate_at(step_index);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    accumulator[i] = cfg.rho * accumulator[i] + (1.0 - cfg.rho) * g * g;
    params[i] -= lr * g / (std::sqrt(accumulator[i]) + cfg.epsilon);
  }
}

std::unique_ptr<Optimizer> make_optimizer(const OptimizerConfig& cfg) {
  if (const auto* sgd = std::get_if<SgdConfig>(&cfg)) {
    sgd->validate();
    return std::make_unique<Sgd>(*sgd);
  }
  const auto& rms = std::get<RmspropConfig>(cfg);
  rms.validate();
  return std::make_unique<Rmsprop>(rms);
}

}  // namespace oscnet
