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

#include <gtest/gtest.h>

#include <cmath>

#include "oscnet/error.hpp"
#include "oscnet/optimizers.hpp"
#include "oscnet/xor_lab.hpp"

namespace oscnet {
namespace {

TEST(Sgd, Arithmetic) {
  std::vector<double> p{1.0, -2.0}, g{0.5, 0.0};
  sgd_step(p, g, SgdConfig{0.01});
  EXPECT_DOUBLE_EQ(p[0], 0.995);
  EXPECT_EQ(p[1], -2.0);
  std::vector<double> short_g{1.0};
  EXPECT_THROW(sgd_step(p, short_g, SgdConfig{0.01}), ShapeError);
  EXPECT_THROW(SgdConfig{0.0}.validate(), UsageError);
  EXPECT_THROW(SgdConfig{-1.0}.validate(), UsageError);
}

TEST(Sgd, DecreasesConvexQuadratic) {
  // J(x) = 3 (x - 2)^2
  std::vector<double> x{-5.0}, g(1);
  double prev = INFINITY;
  for (int i = 0; i < 1000; ++i) {
    const double j = 3 * (x[0] - 2) * (x[0] - 2);
    EXPECT_LE(j, prev);
    prev = j;
    g[0] = 6 * (x[0] - 2);
    sgd_step(x, g, SgdConfig{0.01});
  }
  EXPECT_NEAR(x[0], 2.0, 1e-12);
}

TEST(Sgd, XorEpochMatchesScalarDeltaRule) {
  // Hand-rolled delta rule on the four points, same draws as train_xor.
  Rng init(77);
  double w1 = init.uniform(), w2 = init.uniform(), b = init.uniform();
  const double alpha = 0.01;
  for (const auto& s : kXorDataset) {
    const double z = w1 * s.x[0] + w2 * s.x[1] + b;
    const double delta = alpha * (s.label - z * std::cos(z)) * (std::cos(z) - z * std::sin(z));
    w1 += delta * s.x[0];
    w2 += delta * s.x[1];
    b += delta;
  }
  Rng rng(77);
  const XorTrainResult r = train_xor(Activation::kGCU, rng, alpha, 1);
  EXPECT_NEAR(r.neuron.w[0], w1, 1e-12);
  EXPECT_NEAR(r.neuron.w[1], w2, 1e-12);
  EXPECT_NEAR(r.neuron.b, b, 1e-12);
  EXPECT_EQ(r.epochs_used, 1);
}

TEST(Rmsprop, ZeroGradientLeavesParams) {
  std::vector<double> p{0.3, -0.1}, g{0.0, 0.0}, s;
  rmsprop_step(p, g, s, RmspropConfig{}, 0);
  EXPECT_EQ(p, (std::vector<double>{0.3, -0.1}));
  EXPECT_EQ(s, (std::vector<double>{0.0, 0.0}));
}

TEST(Rmsprop, QuadraticBowlMatchesScalarReference) {
  const RmspropConfig cfg{0.05, 0.01, 0.9, 1e-7};
  // J = 0.5 * (a x^2 + c y^2)
  const double a = 1.0, c = 10.0;
  std::vector<double> p{3.0, -2.0}, s;
  double rx = 3.0, ry = -2.0, sx = 0.0, sy = 0.0;
  for (std::uint64_t t = 0; t < 10; ++t) {
    std::vector<double> g{a * p[0], c * p[1]};
    rmsprop_step(p, g, s, cfg, t);
    const double gx = a * rx, gy = c * ry;
    sx = 0.9 * sx + 0.1 * gx * gx;
    sy = 0.9 * sy + 0.1 * gy * gy;
    const double lr = 0.05 / (1.0 + 0.01 * static_cast<double>(t));
    rx -= lr * gx / (std::sqrt(sx) + 1e-7);
    ry -= lr * gy / (std::sqrt(sy) + 1e-7);
    EXPECT_NEAR(p[0], rx, 1e-12);
    EXPECT_NEAR(p[1], ry, 1e-12);
    EXPECT_GE(s[0], 0.0);
    EXPECT_GE(s[1], 0.0);
  }
}

TEST(Rmsprop, ConstantGradientStepApproachesLearningRate) {
  const RmspropConfig cfg{1e-3, 0.0, 0.9, 1e-7};
  std::vector<double> p{0.0}, g{-4.0}, s;
  double last = 0.0;
  for (std::uint64_t t = 0; t < 400; ++t) {
    const double before = p[0];
    rmsprop_step(p, g, s, cfg, t);
    last = p[0] - before;
  }
  EXPECT_NEAR(last, 1e-3, 1e-9);
  EXPECT_NEAR(s[0], 16.0, 1e-12);
}

TEST(Rmsprop, DecaySchedule) {
  const RmspropConfig none{1e-4, 0.0, 0.9, 1e-7};
  EXPECT_EQ(none.learning_rate_at(0), none.learning_rate_at(100000));
  const RmspropConfig d{1e-4, 1e-6, 0.9, 1e-7};
  EXPECT_DOUBLE_EQ(d.learning_rate_at(0), 1e-4);
  EXPECT_DOUBLE_EQ(d.learning_rate_at(1000000), 5e-5);
  EXPECT_THROW((RmspropConfig{1e-4, -1.0, 0.9, 1e-7}).validate(), UsageError);
  EXPECT_THROW((RmspropConfig{1e-4, 0.0, 1.0, 1e-7}).validate(), UsageError);
  EXPECT_THROW((RmspropConfig{1e-4, 0.0, 0.9, 0.0}).validate(), UsageError);
}

TEST(Optimizer, AppliesToEveryTensor) {
  Network net({LayerSpec::dense(2, Activation::kTanh), LayerSpec::flatten()}, {3});
  auto& params = net.params();
  params[0].weight = Tensor({2, 3}, 1.0);
  Gradients g(2);
  g[0].weight = Tensor({2, 3}, 2.0);
  g[0].bias = Tensor({2}, -1.0);
  auto sgd = make_optimizer(SgdConfig{0.1});
  sgd->step(params, g);
  for (double v : params[0].weight.values()) EXPECT_DOUBLE_EQ(v, 0.8);
  for (double v : params[0].bias.values()) EXPECT_DOUBLE_EQ(v, 0.1);
  EXPECT_EQ(sgd->steps_taken(), 1u);

  auto rms = make_optimizer(RmspropConfig{0.01, 0.0, 0.9, 1e-7});
  rms->step(params, g);
  rms->step(params, g);
  EXPECT_EQ(rms->steps_taken(), 2u);
  // first step: s = 0.1 g^2, update lr * g / sqrt(0.1 g^2)
  const double s1 = 0.4, s2 = 0.9 * s1 + 0.4;
  const double expected = 0.8 - 0.01 * 2.0 / (std::sqrt(s1) + 1e-7) - 0.01 * 2.0 / (std::sqrt(s2) + 1e-7);
  EXPECT_NEAR(params[0].weight[0], expected, 1e-15);
}

}  // namespace
}  // namespace oscnet
