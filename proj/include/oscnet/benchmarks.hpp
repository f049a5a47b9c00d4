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
#include <span>
#include <string>
#include <vector>

#include "oscnet/activations.hpp"
#include "oscnet/rng.hpp"

namespace oscnet {

struct BenchReport {
  std::string activation;
  std::size_t runs = 0;
  std::size_t vector_length = 0;
  double mean_seconds = 0.0;
  double std_seconds = 0.0;  // population standard deviation over runs
  double min_seconds = 0.0;
  // Sum of every output produced by the timed runs.
  double checksum = 0.0;
};

inline constexpr int kBenchWarmupRuns = 3;

/// Times one elementwise forward pass over a fresh U[-5, 5) vector per run,
/// after kBenchWarmupRuns untimed passes. Input generation is not timed.
/// Durations below one clock tick are recorded as one nanosecond.
BenchReport bench_activation(Activation kind, std::size_t runs, std::size_t length, Rng& rng);

// Each listed activation in the given order, each with its own Rng(seed).
std::vector<BenchReport> bench_activations(std::span<const Activation> kinds, std::size_t runs,
                                           std::size_t length, std::uint64_t seed);

// JSON array of reports. With `include_timings` false the three timing fields
// are written as 0 so repeated runs give identical bytes.
std::string bench_report_json(const std::vector<BenchReport>& reports, bool include_timings = true);

}  // namespace oscnet
