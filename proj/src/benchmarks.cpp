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

#include "oscnet/benchmarks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "oscnet/error.hpp"

namespace oscnet {

namespace {

void fill_input(Rng& rng, std::vector<double>& v) {
  for (double& x : v) x = rng.uniform(-5.0, 5.0);
}

}  // namespace

BenchReport bench_activation(Activation kind, std::size_t runs, std::size_t length, Rng& rng) {
  if (runs == 0 || length == 0) throw UsageError("bench: runs and length must be positive");
  using Clock = std::chrono::steady_clock;
  std::vector<double> in(length), out(length);
  for (int i = 0; i < kBenchWarmupRuns; ++i) {
    fill_input(rng, in);
    apply_forward(kind, in, out);
  }
  std::vector<double> seconds(runs);
  double checksum = 0.0;
  for (std::size_t r = 0; r < runs; ++r) {
    fill_input(rng, in);
    const auto t0 = Clock::now();
    apply_forward(kind, in, out);
    const auto t1 = Clock::now();
    seconds[r] = std::max(std::chrono::duration<double>(t1 - t0).count(), 1e-9);
    checksum += std::accumulate(out.begin(), out.end(), 0.0);
  }
  BenchReport report;
  report.activation = std::string(name(kind));
  report.runs = runs;
  report.vector_length = length;
  report.checksum = checksum;
  report.min_seconds = *std::min_element(seconds.begin(), seconds.end());
  const double mean = std::accumulate(seconds.begin(), seconds.end(), 0.0) / static_cast<double>(runs);
  double var = 0.0;
  for (double s : seconds) var += (s - mean) * (s - mean);
  report.mean_seconds = std::max(mean, report.min_seconds);
  report.std_seconds = std::sqrt(var / static_cast<double>(runs));
  return report;
}

std::vector<BenchReport> bench_activations(std::span<const Activation> kinds, std::size_t runs,
                                           std::size_t length, std::uint64_t seed) {
  std::vector<BenchReport> reports;
  for (Activation kind : kinds) {
    Rng rng(seed);
    reports.push_back(bench_activation(kind, runs, length, rng));
  }
  return reports;
}

std::string bench_report_json(const std::vector<BenchReport>& reports, bool include_timings) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const BenchReport& r : reports) {
    nlohmann::ordered_json j;
    j["activation"] = r.activation;
    j["runs"] = r.runs;
    j["vector_length"] = r.vector_length;
    j["mean_seconds"] = include_timings ? r.mean_seconds : 0.0;
    j["std_seconds"] = include_timings ? r.std_seconds : 0.0;
    j["min_seconds"] = include_timings ? r.min_seconds : 0.0;
    j["checksum"] = r.checksum;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace oscnet
