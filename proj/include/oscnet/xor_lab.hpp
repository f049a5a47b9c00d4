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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oscnet/activations.hpp"
#include "oscnet/network.hpp"
#include "oscnet/rng.hpp"

namespace oscnet {

using Vec2 = std::array<double, 2>;

struct XorSample {
  Vec2 x;
  int label;
};

inline constexpr std::array<XorSample, 4> kXorDataset = {{
    {{-1.0, -1.0}, -1},
    {{1.0, -1.0}, 1},
    {{-1.0, 1.0}, 1},
    {{1.0, 1.0}, -1},
}};

struct SingleNeuron {
  Vec2 w{};
  double b = 0.0;
  Activation activation = Activation::kGCU;

  double pre_activation(const Vec2& x) const { return w[0] * x[0] + w[1] * x[1] + b; }
  double output(const Vec2& x) const { return forward(activation, pre_activation(x)); }
};

// Three-valued signum of the activated output: 1, -1, or 0 on the boundary.
int classify(const SingleNeuron& neuron, const Vec2& x);
bool solves_xor(const SingleNeuron& neuron);

// The hand-built GCU solution w = (pi/4, pi/4), b = pi/4.
SingleNeuron analytic_gcu_xor_neuron();

// Dense(1) network over a 2-vector input holding the neuron, and back.
Network neuron_to_network(const SingleNeuron& neuron);
SingleNeuron network_to_neuron(const Network& net);

struct XorTrainResult {
  SingleNeuron neuron;
  int epochs_used = 0;
  bool success = false;
};

/// Per-sample SGD on the four XOR points in dataset order with the delta
/// rule w += alpha (y - g(z)) g'(z) x, b += alpha (y - g(z)) g'(z). Initial
/// w1, w2, b are drawn in that order from U[0, 1). Success is checked after
/// every full epoch.
XorTrainResult train_xor(Activation activation, Rng& rng, double alpha, int max_epochs);

struct Box {
  double x0 = -3.0, y0 = -3.0, x1 = 3.0, y1 = 3.0;
};

/// Lines w.x + b = c for every c in `offsets`, which together make up the
/// analytic decision boundary inside the queried window.
struct BoundaryStripSet {
  Vec2 unit_normal{};
  double weight_norm = 0.0;
  std::vector<double> offsets;
};

struct DecisionBoundary {
  Box window;
  int resolution = 0;
  // labels[j * resolution + i] is the class at (x(i), y(j)).
  std::vector<int> labels;
  BoundaryStripSet strips;

  double x(int i) const { return window.x0 + (window.x1 - window.x0) * i / (resolution - 1); }
  double y(int j) const { return window.y0 + (window.y1 - window.y0) * j / (resolution - 1); }
  int label(int i, int j) const { return labels[static_cast<std::size_t>(j) * resolution + i]; }
};

// resolution x resolution grid including the window corners.
DecisionBoundary decision_boundary(const SingleNeuron& neuron, const Box& window, int resolution);

struct SignChangeAudit {
  std::size_t sign_changes = 0;
  std::size_t off_boundary = 0;  // changes farther than one cell from any analytic line
  double worst_distance = 0.0;   // in input units
  double cell_size = 0.0;        // diagonal of one grid cell
};

// Checks that every pair of horizontally or vertically adjacent grid points
// with different labels sits within one cell of the analytic zero set.
SignChangeAudit audit_sign_changes(const SingleNeuron& neuron, const DecisionBoundary& boundary);

std::string boundary_csv(const DecisionBoundary& boundary);
std::string strips_json(const SingleNeuron& neuron, const DecisionBoundary& boundary);

struct ScanResult {
  std::uint64_t triples_checked = 0;
  std::uint64_t solutions = 0;
  // (w1, w2, b) of the first solutions in scan order.
  std::vector<std::array<double, 3>> witnesses;
};

/// Exhaustive scan of (w1, w2, b) over [-bound, bound]^3 on the lattice
/// -bound + i * step, counting neurons that classify all four XOR points
/// correctly. Slices over w1 run on `threads` workers (0 picks the hardware
/// count); the result does not depend on the thread count.
ScanResult impossibility_scan(Activation activation, double bound, double step,
                              std::size_t max_witnesses = 16, unsigned threads = 0);

struct HalfSpaceReport {
  bool holds = true;
  std::uint64_t trials = 0;
  std::optional<SingleNeuron> counterexample_neuron;
  std::optional<std::array<Vec2, 2>> counterexample_points;
};

/// Random search for a violation of: if x1 is classified nonzero and x2 lies
/// in the same half-space strictly farther from w.x + b = 0, then x2 gets the
/// class of x1. Requires a strictly increasing activation with g(0) = 0
/// unless `enforce_precondition` is false; throws UsageError otherwise.
HalfSpaceReport verify_proposition1(Activation activation, int trials, Rng& rng,
                                bool enforce_precondition = true);

}  // namespace oscnet
