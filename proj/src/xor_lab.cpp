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

#include "oscnet/xor_lab.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "oscnet/error.hpp"

namespace oscnet {

namespace {

int signum(double v) { return (v > 0.0) - (v < 0.0); }

// Distance in z from z_value to the nearest root of the activation.
double nearest_root_gap(Activation activation, double z_value) {
  if (activation == Activation::kGCU) {
    using std::numbers::pi;
    const double n = std::round((z_value - pi / 2) / pi);
    return std::min(std::abs(z_value), std::abs(z_value - (pi / 2 + n * pi)));
  }
  const auto roots = zero_set(activation, -std::numeric_limits<double>::max(),
                              std::numeric_limits<double>::max());
  double best = std::numeric_limits<double>::infinity();
  for (double r : roots) best = std::min(best, std::abs(z_value - r));
  return best;
}

}  // namespace

int classify(const SingleNeuron& neuron, const Vec2& x) { return signum(neuron.output(x)); }

bool solves_xor(const SingleNeuron& neuron) {
  return std::all_of(kXorDataset.begin(), kXorDataset.end(), [&](const XorSample& s) {
    return classify(neuron, s.x) == s.label;
  });
}

SingleNeuron analytic_gcu_xor_neuron() {
  constexpr double q = std::numbers::pi / 4;
  return {{q, q}, q, Activation::kGCU};
}

Network neuron_to_network(const SingleNeuron& neuron) {
  Network net({LayerSpec::dense(1, neuron.activation)}, {2});
  net.params()[0].weight = Tensor({1, 2}, {neuron.w[0], neuron.w[1]});
  net.params()[0].bias = Tensor({1}, {neuron.b});
  return net;
}

SingleNeuron network_to_neuron(const Network& net) {
  if (net.layers().size() != 1 || net.layers()[0].kind != LayerKind::kDense ||
      net.layers()[0].units != 1 || net.input_shape() != Shape{2}) {
    throw UsageError("checkpoint does not hold a single neuron over 2-D inputs");
  }
  const auto& p = net.params()[0];
  return {{p.weight[0], p.weight[1]}, p.bias[0],
          net.layers()[0].activation.value_or(Activation::kIdentity)};
}

XorTrainResult train_xor(Activation activation, Rng& rng, double alpha, int max_epochs) {
  if (!(alpha > 0.0)) throw UsageError("train_xor: alpha must be positive");
  if (max_epochs < 1) throw UsageError("train_xor: max_epochs must be positive");
  XorTrainResult result;
  SingleNeuron& n = result.neuron;
  n.activation = activation;
  n.w[0] = rng.uniform();
  n.w[1] = rng.uniform();
  n.b = rng.uniform();
  for (int epoch = 1; epoch <= max_epochs; ++epoch) {
    for (const XorSample& s : kXorDataset) {
      const double z = n.pre_activation(s.x);
      const double delta =
          alpha * (s.label - forward(activation, z)) * derivative(activation, z);
      n.w[0] += delta * s.x[0];
      n.w[1] += delta * s.x[1];
      n.b += delta;
    }
    result.epochs_used = epoch;
    if (solves_xor(n)) {
      result.success = true;
      break;
    }
  }
  return result;
}

DecisionBoundary decision_boundary(const SingleNeuron& neuron, const Box& window, int resolution) {
  if (resolution < 2) throw UsageError("decision_boundary: resolution must be at least 2");
  if (!(window.x0 < window.x1) || !(window.y0 < window.y1)) {
    throw UsageError("decision_boundary: window must have x0 < x1 and y0 < y1");
  }
  DecisionBoundary db;
  db.window = window;
  db.resolution = resolution;
  db.labels.resize(static_cast<std::size_t>(resolution) * resolution);
  for (int j = 0; j < resolution; ++j) {
    for (int i = 0; i < resolution; ++i) {
      db.labels[static_cast<std::size_t>(j) * resolution + i] =
          classify(neuron, {db.x(i), db.y(j)});
    }
  }
  const double norm = std::hypot(neuron.w[0], neuron.w[1]);
  db.strips.weight_norm = norm;
  if (norm > 0.0) db.strips.unit_normal = {neuron.w[0] / norm, neuron.w[1] / norm};
  // z is affine in x, so its range over the box is attained at the corners.
  double zlo = std::numeric_limits<double>::infinity(), zhi = -zlo;
  for (const Vec2& c : {Vec2{window.x0, window.y0}, Vec2{window.x0, window.y1},
                        Vec2{window.x1, window.y0}, Vec2{window.x1, window.y1}}) {
    const double z = neuron.pre_activation(c);
    zlo = std::min(zlo, z);
    zhi = std::max(zhi, z);
  }
  db.strips.offsets = zero_set(neuron.activation, zlo, zhi);
  return db;
}

SignChangeAudit audit_sign_changes(const SingleNeuron& neuron, const DecisionBoundary& db) {
  SignChangeAudit audit;
  const double dx = (db.window.x1 - db.window.x0) / (db.resolution - 1);
  const double dy = (db.window.y1 - db.window.y0) / (db.resolution - 1);
  audit.cell_size = std::hypot(dx, dy);
  const double norm = std::hypot(neuron.w[0], neuron.w[1]);
  auto check = [&](int i0, int j0, int i1, int j1) {
    if (db.label(i0, j0) == db.label(i1, j1)) return;
    ++audit.sign_changes;
    const Vec2 mid{(db.x(i0) + db.x(i1)) / 2, (db.y(j0) + db.y(j1)) / 2};
    const double gap = nearest_root_gap(neuron.activation, neuron.pre_activation(mid));
    const double dist = norm > 0.0 ? gap / norm : std::numeric_limits<double>::infinity();
    audit.worst_distance = std::max(audit.worst_distance, dist);
    if (!(dist <= audit.cell_size)) ++audit.off_boundary;
  };
  for (int j = 0; j < db.resolution; ++j) {
    for (int i = 0; i < db.resolution; ++i) {
      if (i + 1 < db.resolution) check(i, j, i + 1, j);
      if (j + 1 < db.resolution) check(i, j, i, j + 1);
    }
  }
  return audit;
}

std::string boundary_csv(const DecisionBoundary& db) {
  std::string out = "x,y,class\n";
  out.reserve(out.size() + db.labels.size() * 24);
  for (int j = 0; j < db.resolution; ++j) {
    for (int i = 0; i < db.resolution; ++i) {
      fmt::format_to(std::back_inserter(out), "{},{},{}\n", db.x(i), db.y(j), db.label(i, j));
    }
  }
  return out;
}

std::string strips_json(const SingleNeuron& neuron, const DecisionBoundary& db) {
  nlohmann::ordered_json j;
  j["activation"] = std::string(name(neuron.activation));
  j["w"] = {neuron.w[0], neuron.w[1]};
  j["b"] = neuron.b;
  j["weight_norm"] = db.strips.weight_norm;
  j["unit_normal"] = {db.strips.unit_normal[0], db.strips.unit_normal[1]};
  j["window"] = {db.window.x0, db.window.y0, db.window.x1, db.window.y1};
  j["resolution"] = db.resolution;
  j["offsets"] = db.strips.offsets;
  return j.dump(2) + "\n";
}

ScanResult impossibility_scan(Activation activation, double bound, double step,
                              std::size_t max_witnesses, unsigned threads) {
  if (!(bound > 0.0) || !(step > 0.0)) {
    throw UsageError("impossibility_scan: bound and step must be positive");
  }
  const auto points = static_cast<std::size_t>(std::floor(2.0 * bound / step + 1e-9)) + 1;
  auto value = [&](std::size_t i) { return -bound + static_cast<double>(i) * step; };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, points));

  // Each worker owns a contiguous block of w1 indices so merging in worker
  // order reproduces the sequential scan order.
  std::vector<ScanResult> partial(threads);
  auto worker = [&](unsigned t) {
    const std::size_t begin = points * t / threads, end = points * (t + 1) / threads;
    ScanResult& r = partial[t];
    SingleNeuron n{{0.0, 0.0}, 0.0, activation};
    for (std::size_t i = begin; i < end; ++i) {
      n.w[0] = value(i);
      for (std::size_t j = 0; j < points; ++j) {
        n.w[1] = value(j);
        for (std::size_t k = 0; k < points; ++k) {
          n.b = value(k);
          ++r.triples_checked;
          if (solves_xor(n)) {
            ++r.solutions;
            if (r.witnesses.size() < max_witnesses) r.witnesses.push_back({n.w[0], n.w[1], n.b});
          }
        }
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  }
  ScanResult total;
  for (const ScanResult& r : partial) {
    total.triples_checked += r.triples_checked;
    total.solutions += r.solutions;
    for (const auto& w : r.witnesses) {
      if (total.witnesses.size() < max_witnesses) total.witnesses.push_back(w);
    }
  }
  return total;
}

HalfSpaceReport verify_proposition1(Activation activation, int trials, Rng& rng,
                                bool enforce_precondition) {
  if (trials < 1) throw UsageError("verify_proposition1: trials must be positive");
  if (enforce_precondition &&
      (!traits(activation).monotone_strictly_increasing || forward(activation, 0.0) != 0.0)) {
    throw UsageError(fmt::format(
        "half-space check needs a strictly increasing activation with g(0) = 0; {} is not",
        name(activation)));
  }
  HalfSpaceReport report;
  for (int t = 0; t < trials; ++t) {
    SingleNeuron n{{rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)}, rng.uniform(-5.0, 5.0),
                   activation};
    const double norm = std::hypot(n.w[0], n.w[1]);
    const Vec2 x1{rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)};
    // x2 moves away from the hyperplane along the normal on x1's side, plus
    // an arbitrary tangential shift that leaves the distance unchanged.
    const double away = rng.uniform(1e-3, 10.0);
    const double along = rng.uniform(-10.0, 10.0);
    ++report.trials;
    const double z1 = n.pre_activation(x1);
    if (norm == 0.0 || z1 == 0.0 || classify(n, x1) == 0) continue;
    const double side = z1 > 0.0 ? 1.0 : -1.0;
    const Vec2 normal{n.w[0] / norm, n.w[1] / norm};
    const Vec2 tangent{-normal[1], normal[0]};
    const Vec2 x2{x1[0] + side * away * normal[0] + along * tangent[0],
                  x1[1] + side * away * normal[1] + along * tangent[1]};
    const double d1 = std::abs(z1) / norm;
    const double z2 = n.pre_activation(x2);
    const double d2 = std::abs(z2) / norm;
    if (signum(z2) != signum(z1) || !(d2 > d1)) continue;
    if (classify(n, x2) != classify(n, x1)) {
      report.holds = false;
      report.counterexample_neuron = n;
      report.counterexample_points = std::array<Vec2, 2>{x1, x2};
      break;
    }
  }
  return report;
}

}  // namespace oscnet
