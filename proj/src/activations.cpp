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

#include "oscnet/activations.hpp"

#include <algorithm>
#include <numbers>

#include "oscnet/error.hpp"

namespace oscnet {

namespace {

//                                name          mono   signeq osc    smooth
constexpr std::array<ActivationTraits, 9> kTraits = {{
    {"sigmoid",    true,  false, false, true},
    {"tanh",       true,  true,  false, true},
    {"relu",       false, false, false, false},
    {"leaky_relu", true,  true,  false, false},
    {"swish",      false, true,  false, true},
    {"mish",       false, true,  false, true},
    {"gcu",        false, false, true,  true},
    {"poly_cubic", false, false, false, true},
    {"identity",   true,  true,  false, true},
}};

template <class F>
void apply_loop(std::span<const double> in, std::span<double> out, F f) {
  const std::size_t n = in.size();
  const double* src = in.data();
  double* dst = out.data();
  for (std::size_t i = 0; i < n; ++i) dst[i] = f(src[i]);
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

void check_probe_args(double lo, double hi, int samples) {
  if (!(lo < hi) || samples < 2) {
    throw UsageError("probe: need lo < hi and at least two samples");
  }
}

double grid_point(double lo, double hi, int i, int samples) {
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
}

}  // namespace

const ActivationTraits& traits(Activation kind) {
  return kTraits.at(static_cast<std::size_t>(kind));
}

std::string_view name(Activation kind) { return traits(kind).name; }

std::optional<Activation> activation_from_name(std::string_view name) {
  for (Activation a : kAllActivations) {
    if (traits(a).name == name) return a;
  }
  return std::nullopt;
}

void apply_forward(Activation kind, std::span<const double> in, std::span<double> out) {
  if (in.size() != out.size()) throw ShapeError("apply_forward: length mismatch");
  switch (kind) {
    case Activation::kSigmoid:
      apply_loop(in, out, [](double z) { return forward(Activation::kSigmoid, z); });
      break;
    case Activation::kTanh:
      apply_loop(in, out, [](double z) { return forward(Activation::kTanh, z); });
      break;
    case Activation::kReLU:
      apply_loop(in, out, [](double z) { return forward(Activation::kReLU, z); });
      break;
    case Activation::kLeakyReLU:
      apply_loop(in, out, [](double z) { return forward(Activation::kLeakyReLU, z); });
      break;
    case Activation::kSwish:
      apply_loop(in, out, [](double z) { return forward(Activation::kSwish, z); });
      break;
    case Activation::kMish:
      apply_loop(in, out, [](double z) { return forward(Activation::kMish, z); });
      break;
    case Activation::kGCU:
      apply_loop(in, out, [](double z) { return forward(Activation::kGCU, z); });
      break;
    case Activation::kPolyCubic:
      apply_loop(in, out, [](double z) { return forward(Activation::kPolyCubic, z); });
      break;
    case Activation::kIdentity:
      std::copy(in.begin(), in.end(), out.begin());
      break;
  }
}

void apply_derivative(Activation kind, std::span<const double> in, std::span<double> out) {
  if (in.size() != out.size()) throw ShapeError("apply_derivative: length mismatch");
  apply_loop(in, out, [kind](double z) { return derivative(kind, z); });
}

bool probe_monotonicity(Activation kind, double lo, double hi, int samples) {
  check_probe_args(lo, hi, samples);
  double prev = forward(kind, grid_point(lo, hi, 0, samples));
  for (int i = 1; i < samples; ++i) {
    const double v = forward(kind, grid_point(lo, hi, i, samples));
    if (!(v > prev)) return false;
    prev = v;
  }
  return true;
}

bool probe_sign_equivalence(Activation kind, double lo, double hi, int samples) {
  check_probe_args(lo, hi, samples);
  for (int i = 0; i < samples; ++i) {
    const double z = grid_point(lo, hi, i, samples);
    if (sign_of(forward(kind, z)) != sign_of(z)) return false;
  }
  return true;
}

std::vector<double> zero_set(Activation kind, double lo, double hi) {
  std::vector<double> roots;
  auto keep = [&](double r) {
    if (r >= lo && r <= hi) roots.push_back(r);
  };
  switch (kind) {
    case Activation::kSigmoid:
      break;
    case Activation::kGCU: {
      using std::numbers::pi;
      keep(0.0);
      const auto first = static_cast<long>(std::ceil((lo - pi / 2) / pi));
      const auto last = static_cast<long>(std::floor((hi - pi / 2) / pi));
      for (long n = first; n <= last; ++n) keep(pi / 2 + static_cast<double>(n) * pi);
      break;
    }
    case Activation::kPolyCubic:
      keep(-std::numbers::sqrt2);
      keep(0.0);
      keep(std::numbers::sqrt2);
      break;
    default:
      keep(0.0);
      break;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace oscnet
