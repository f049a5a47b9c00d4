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
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace oscnet {

enum class Activation : std::uint8_t {
  kSigmoid = 0,
  kTanh = 1,
  kReLU = 2,
  kLeakyReLU = 3,
  kSwish = 4,
  kMish = 5,
  kGCU = 6,
  kPolyCubic = 7,
  kIdentity = 8,
};

inline constexpr std::array<Activation, 9> kAllActivations = {
    Activation::kSigmoid, Activation::kTanh,      Activation::kReLU,
    Activation::kLeakyReLU, Activation::kSwish,   Activation::kMish,
    Activation::kGCU,     Activation::kPolyCubic, Activation::kIdentity,
};

inline constexpr double kLeakySlope = 0.01;

/// Analytic facts about an activation. These are declared, not computed; the
/// test suite cross-checks them with probe_monotonicity and
/// probe_sign_equivalence on [-10, 10].
struct ActivationTraits {
  std::string_view name;  // lowercase CLI/config vocabulary
  bool monotone_strictly_increasing;
  bool sign_equivalent_to_identity;
  // Infinitely many zero crossings.
  bool oscillatory;
  // Derivative continuous everywhere (false for the ReLU family).
  bool smooth;
};

const ActivationTraits& traits(Activation kind);
std::string_view name(Activation kind);
std::optional<Activation> activation_from_name(std::string_view name);

// Transcendental functions behind the scalar kernels. The kernels are
// templates over this policy so tests can count calls.
struct StdMath {
  static double exp(double x) { return std::exp(x); }
  static double log1p(double x) { return std::log1p(x); }
  static double tanh(double x) { return std::tanh(x); }
  static double cos(double x) { return std::cos(x); }
  static double sin(double x) { return std::sin(x); }
};

namespace detail {

template <class M>
double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + M::exp(-z));
  const double e = M::exp(z);
  return e / (1.0 + e);
}

// sigmoid(z) and 1 - sigmoid(z), each without cancellation.
template <class M>
std::pair<double, double> sigmoid_pair(double z) {
  const double e = M::exp(-std::abs(z));
  const double big = 1.0 / (1.0 + e), small = e / (1.0 + e);
  return z >= 0.0 ? std::pair{big, small} : std::pair{small, big};
}

// 1 - tanh(x)^2 without cancellation for large |x|.
template <class M>
double sech2(double x) {
  const double e = M::exp(-2.0 * std::abs(x));
  return 4.0 * e / ((1.0 + e) * (1.0 + e));
}

// ln(1 + e^z) without overflow.
template <class M>
double softplus(double z) {
  return z > 0.0 ? z + M::log1p(M::exp(-z)) : M::log1p(M::exp(z));
}

}  // namespace detail

template <class M = StdMath>
double forward(Activation kind, double z) {
  switch (kind) {
    case Activation::kSigmoid: return detail::sigmoid<M>(z);
    case Activation::kTanh: return M::tanh(z);
    case Activation::kReLU: return z <= 0.0 ? 0.0 : z;
    case Activation::kLeakyReLU: return z > 0.0 ? z : kLeakySlope * z;
    case Activation::kSwish: return z * detail::sigmoid<M>(z);
    case Activation::kMish: return z * M::tanh(detail::softplus<M>(z));
    case Activation::kGCU: return z * M::cos(z);
    case Activation::kPolyCubic: return z - 0.5 * z * z * z;
    case Activation::kIdentity: return z;
  }
  return z;
}

// At the ReLU kink the derivative is 0, and 0.01 for LeakyReLU.
template <class M = StdMath>
double derivative(Activation kind, double z) {
  switch (kind) {
    case Activation::kSigmoid: {
      const auto [s, sc] = detail::sigmoid_pair<M>(z);
      return s * sc;
    }
    case Activation::kTanh: return detail::sech2<M>(z);
    case Activation::kReLU: return z > 0.0 ? 1.0 : 0.0;
    case Activation::kLeakyReLU: return z > 0.0 ? 1.0 : kLeakySlope;
    case Activation::kSwish: {
      const auto [s, sc] = detail::sigmoid_pair<M>(z);
      return s + z * s * sc;
    }
    case Activation::kMish: {
      const double s = detail::sigmoid<M>(z);
      const double sp = detail::softplus<M>(z);
      return M::tanh(sp) + z * detail::sech2<M>(sp) * s;
    }
    case Activation::kGCU: return M::cos(z) - z * M::sin(z);
    case Activation::kPolyCubic: return 1.0 - 1.5 * z * z;
    case Activation::kIdentity: return 1.0;
  }
  return 1.0;
}

// Piecewise-linear kinds return 0 everywhere, kinks included.
template <class M = StdMath>
double second_derivative(Activation kind, double z) {
  switch (kind) {
    case Activation::kSigmoid: {
      const auto [s, sc] = detail::sigmoid_pair<M>(z);
      return s * sc * (sc - s);
    }
    case Activation::kTanh: return -2.0 * M::tanh(z) * detail::sech2<M>(z);
    case Activation::kReLU:
    case Activation::kLeakyReLU:
    case Activation::kIdentity: return 0.0;
    case Activation::kSwish: {
      const auto [s, sc] = detail::sigmoid_pair<M>(z);
      const double ds = s * sc;
      return 2.0 * ds + z * ds * (sc - s);
    }
    case Activation::kMish: {
      // M = z t,  t = tanh(sp(z)),  sp' = s,  t' = (1 - t^2) s
      const auto [s, sc] = detail::sigmoid_pair<M>(z);
      const double sp = detail::softplus<M>(z);
      const double t = M::tanh(sp);
      return detail::sech2<M>(sp) * s * (2.0 + z * sc - 2.0 * z * t * s);
    }
    case Activation::kGCU: return -2.0 * M::sin(z) - z * M::cos(z);
    case Activation::kPolyCubic: return -3.0 * z;
  }
  return 0.0;
}

// Elementwise forward pass with the dispatch hoisted out of the loop.
void apply_forward(Activation kind, std::span<const double> in, std::span<double> out);
void apply_derivative(Activation kind, std::span<const double> in, std::span<double> out);

/// True iff forward(kind, .) is strictly increasing along `samples` equally
/// spaced points covering [lo, hi].
bool probe_monotonicity(Activation kind, double lo, double hi, int samples);

/// True iff sign(forward(kind, z)) == sign(z) at every one of `samples`
/// equally spaced points covering [lo, hi].
bool probe_sign_equivalence(Activation kind, double lo, double hi, int samples);

// Roots of forward(kind, .) inside [lo, hi], ascending. Kinds without a
// discrete zero set (ReLU vanishes on a half-line) report the point where the
// output leaves zero; Sigmoid has none.
std::vector<double> zero_set(Activation kind, double lo, double hi);

}  // namespace oscnet
