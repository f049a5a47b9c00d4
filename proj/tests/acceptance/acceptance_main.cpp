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

// Acceptance runner: one PASS/FAIL/SKIP line per criterion.
//
//   oscnet_acceptance            run everything
//   oscnet_acceptance --only 4   run criterion 4
//   oscnet_acceptance --digits-supplement DIR
//                                the CNN comparison on the digits IDX files
//
// Exit status is 0 when every selected criterion passes, 1 on any failure,
// and 77 when everything selected was skipped.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <fmt/core.h>
#include <json.hpp>

#include "gradcheck.hpp"
#include "oscnet/activations.hpp"
#include "oscnet/datasets.hpp"
#include "oscnet/experiment.hpp"
#include "oscnet/network.hpp"
#include "oscnet/xor_lab.hpp"

#ifndef OSCNET_CLI_PATH
#error "OSCNET_CLI_PATH must name the oscnet executable"
#endif

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace oscnet;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

enum class Status { kPass, kFail, kSkip };

struct Outcome {
  Status status;
  std::string detail;
};

Outcome pass(std::string d) { return {Status::kPass, std::move(d)}; }
Outcome fail(std::string d) { return {Status::kFail, std::move(d)}; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

fs::path workdir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "oscnet_acceptance" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct CliRun {
  int exit_code = -1;
  std::string out;
};

// Runs the oscnet executable and captures stdout.
CliRun cli(const std::string& args) {
  const std::string cmd = std::string("\"") + OSCNET_CLI_PATH + "\" " + args;
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  const auto bytes = read_file(p.string());
  return std::string(bytes.begin(), bytes.end());
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

// ---------------------------------------------------------------------------

Outcome criterion1() {
  const fs::path dir = workdir("c1");
  const auto t0 = std::chrono::steady_clock::now();
  const CliRun r = cli("xor --activation gcu --seeds 100 --out " + q(dir));
  const double secs = seconds_since(t0);
  if (r.exit_code != 0) return fail(fmt::format("xor exited {}", r.exit_code));
  const json s = json::parse(slurp(dir / "summary.json"));
  const int successes = s["successes"].get<int>();
  const bool analytic_json = s["analytic_gcu_neuron_solves"].get<bool>();
  const SingleNeuron a = analytic_gcu_xor_neuron();
  const double quarter = std::numbers::pi / 4;
  const bool pinned = a.w[0] == quarter && a.w[1] == quarter && a.b == quarter;
  const bool analytic = solves_xor(a) && analytic_json && pinned;
  // the saved neuron must really classify all four signs
  bool saved_ok = false;
  if (successes > 0 && fs::exists(dir / "neuron.osc")) {
    saved_ok = solves_xor(network_to_neuron(load_checkpoint((dir / "neuron.osc").string())));
  }
  const std::string detail =
      fmt::format("{}/100 seeds reach 4/4, saved neuron {}, analytic (pi/4,pi/4,pi/4) {}, {:.2f} s", successes,
                  saved_ok ? "solves" : "fails", analytic ? "solves" : "fails", secs);
  return successes >= 1 && saved_ok && analytic && secs < 10.0 ? pass(detail) : fail(detail);
}

Outcome criterion2() {
  const std::regex line(R"((\w+): (\d+) solutions among (\d+) triples)");
  const std::vector<std::pair<std::string, bool>> cases = {
      {"relu", false}, {"swish", false}, {"mish", false}, {"sigmoid", false},
      {"tanh", false}, {"gcu", true},    {"poly_cubic", true}};
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (const auto& [act, solvable] : cases) {
    const CliRun r = cli("scan-impossibility --activation " + act + " --bound 10 --step 0.1");
    std::smatch m;
    if (r.exit_code != 0 || !std::regex_search(r.out, m, line)) {
      return fail(fmt::format("scan {} exited {}: {}", act, r.exit_code, r.out));
    }
    const unsigned long long solutions = std::stoull(m[2]), triples = std::stoull(m[3]);
    ok = ok && triples == 201ull * 201 * 201 && (solvable ? solutions >= 1 : solutions == 0);
    detail += fmt::format("{}={} ", act, solutions);
  }
  const double secs = seconds_since(t0);
  detail += fmt::format("of 201^3 lattice points, {:.1f} s", secs);
  return ok && secs < 300.0 ? pass(detail) : fail(detail);
}

Outcome criterion3() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 100; ++s) seeds.push_back(s);
  const XorExperiment exp = run_xor_seeds(Activation::kGCU, seeds, 0.01, 10000);
  std::size_t audited = 0, off = 0, changes = 0;
  double worst = 0.0, cell = 0.0;
  for (const auto& r : exp.results) {
    if (!r.success) continue;
    const DecisionBoundary b = decision_boundary(r.neuron, Box{}, 400);
    const SignChangeAudit a = audit_sign_changes(r.neuron, b);
    ++audited;
    off += a.off_boundary;
    changes += a.sign_changes;
    worst = std::max(worst, a.worst_distance);
    cell = a.cell_size;
  }
  const double secs = seconds_since(t0);
  const std::string detail =
      fmt::format("{} successful neurons, {} sign changes, {} farther than one cell ({:.4g}); worst {:.4g}, {:.2f} s",
                  audited, changes, off, cell, worst, secs);
  return audited > 0 && changes > 0 && off == 0 && secs < 10.0 ? pass(detail) : fail(detail);
}

Outcome criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = testing::run_gradient_suite(13, 4);
  const double secs = seconds_since(t0);
  const std::string detail = fmt::format(
      "{} instances (9 activations x dense/conv+pool/strided conv), {} failing, {} undrawable, worst rel {:.3g} "
      "({}), {:.1f} s",
      r.instances, r.failed_instances, r.undrawable, r.worst_rel, r.worst_where, secs);
  return r.instances >= 100 && r.failed_instances == 0 && r.undrawable == 0 && secs < 120.0 ? pass(detail)
                                                                                            : fail(detail);
}

Outcome criterion5() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> problems;
#define CHECK_OR_NOTE(cond, ...)                                                  \
  do {                                                                            \
    if (!(cond) && problems.size() < 8) problems.push_back(fmt::format(__VA_ARGS__)); \
  } while (0)
  Rng rng(2026);
  // first derivative: 64 random z per kind, h = 1e-5, 1e-6 relative
  for (Activation k : kAllActivations) {
    for (int i = 0; i < 64; ++i) {
      const double z = rng.uniform(-5.0, 5.0);
      const double h = 1e-5;
      if (!traits(k).smooth && std::abs(z) < 2 * h) continue;
      const double fd = (forward(k, z + h) - forward(k, z - h)) / (2 * h);
      const double a = derivative(k, z);
      CHECK_OR_NOTE(std::abs(a - fd) <= 1e-6 * std::max(1.0, std::abs(a)), "{}' at {}", name(k), z);
    }
  }
  // second derivative: smooth kinds, second-order central difference
  for (Activation k : kAllActivations) {
    if (!traits(k).smooth) continue;
    for (int i = 0; i < 64; ++i) {
      const double z = rng.uniform(-5.0, 5.0);
      const double h = 1e-4;
      const double fd = (forward(k, z + h) - 2 * forward(k, z) + forward(k, z - h)) / (h * h);
      const double a = second_derivative(k, z);
      CHECK_OR_NOTE(std::abs(a - fd) <= 1e-4 * std::max(1.0, std::abs(a)), "{}'' at {}", name(k), z);
    }
  }
  // declared traits against probes
  for (Activation k : kAllActivations) {
    CHECK_OR_NOTE(probe_monotonicity(k, -10, 10, 10000) == traits(k).monotone_strictly_increasing,
                  "{} monotonicity", name(k));
    CHECK_OR_NOTE(probe_sign_equivalence(k, -10, 10, 10000) == traits(k).sign_equivalent_to_identity,
                  "{} sign equivalence", name(k));
  }
  // dense grids
  const int n = 2000001;
  std::size_t roots_checked = 0;
  for (int i = 0; i < n; ++i) {
    const double z = -100.0 + 200.0 * i / (n - 1);
    for (Activation k : {Activation::kGCU, Activation::kTanh, Activation::kPolyCubic}) {
      CHECK_OR_NOTE(forward(k, -z) == -forward(k, z), "{} oddness at {}", name(k), z);
    }
    const double c = forward(Activation::kGCU, z);
    CHECK_OR_NOTE(std::abs(c) <= std::abs(z), "|gcu({})| > |z|", z);
    // |z|^3 / 2 plus two ulps of z for rounding
    if (std::abs(z) <= 0.5) {
      CHECK_OR_NOTE(std::abs(c - z) <= std::abs(z * z * z) / 2 + 2 * kEps * std::abs(z), "near identity at {}", z);
    }
    if (std::abs(z) <= 10.0) {
      const double n_half = std::round(z / std::numbers::pi - 0.5);
      const double root_dist = std::min(std::abs(z), std::abs(z - (std::numbers::pi / 2 + n_half * std::numbers::pi)));
      if (root_dist > 1e-3) CHECK_OR_NOTE(c != 0.0, "gcu vanishes at {}", z);
    }
  }
  for (int m = -4; m <= 3; ++m) {
    const double root = std::numbers::pi / 2 + m * std::numbers::pi;
    if (std::abs(root) > 10.0) continue;
    CHECK_OR_NOTE(std::abs(forward(Activation::kGCU, root)) < 1e-12, "gcu root {}", root);
    ++roots_checked;
  }
  CHECK_OR_NOTE(forward(Activation::kGCU, 0.0) == 0.0, "gcu(0)");
  const double secs = seconds_since(t0);
#undef CHECK_OR_NOTE
  std::string detail = fmt::format(
      "FD d1 (h=1e-5, 1e-6) and d2 (h=1e-4, 1e-4), trait probes, oddness/bound on {} points, {} roots + 0, {:.1f} s",
      n, roots_checked, secs);
  for (const auto& p : problems) detail += "; " + p;
  return problems.empty() && secs < 60.0 ? pass(detail) : fail(detail);
}

Outcome criterion6() {
  const fs::path dir = workdir("c6");
  const auto t0 = std::chrono::steady_clock::now();
  const CliRun r = cli("bench-activations --runs 1000 --length 1000000 --out " + q(dir / "report.json"));
  const double secs = seconds_since(t0);
  if (r.exit_code != 0) return fail(fmt::format("bench exited {}", r.exit_code));
  const json j = json::parse(slurp(dir / "report.json"));
  std::optional<double> gcu, mish;
  std::size_t members = 0;
  std::string table;
  for (const auto& e : j) {
    const std::string a = e["activation"];
    const double mean = e["mean_seconds"];
    if (e["runs"] == 1000 && e["vector_length"] == 1000000) ++members;
    if (a == "gcu") gcu = mean;
    if (a == "mish") mish = mean;
    table += fmt::format(" {}={:.3f}ms", a, mean * 1e3);
  }
  const bool ok = members == kAllActivations.size() && gcu && mish && *gcu < *mish && secs < 600.0;
  return ok ? pass(fmt::format("gcu mean < mish mean;{}; {:.0f} s", table, secs))
            : fail(fmt::format("{} members;{}; {:.0f} s", members, table, secs));
}

// (gcu, relu) vs (relu, relu) over seeds 1..3 with desk defaults.
Outcome cnn_comparison(const TrainConfig& cfg, double budget_seconds) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = compare_activations(cfg, {{Activation::kGCU, Activation::kReLU}, {Activation::kReLU, Activation::kReLU}},
                                        {1, 2, 3});
  const double secs = seconds_since(t0);
  const double gcu = rows[0].mean_accuracy_pct, relu = rows[1].mean_accuracy_pct;
  const std::string detail =
      fmt::format("(gcu, relu) {:.2f}% +- {:.2f}, (relu, relu) {:.2f}% +- {:.2f} over 3 seeds, {:.0f} s", gcu,
                  rows[0].sd_accuracy_pct, relu, rows[1].sd_accuracy_pct, secs);
  return gcu >= relu - 2.0 && gcu > 25.0 && relu > 25.0 && secs < budget_seconds ? pass(detail) : fail(detail);
}

Outcome criterion7() {
  const char* root = std::getenv("OSC_CIFAR10_DIR");
  if (!root || !*root) {
    return {Status::kSkip, "OSC_CIFAR10_DIR not set; needs the CIFAR-10 binary batches (data_batch_1..5.bin, test_batch.bin)"};
  }
  TrainConfig cfg;
  cfg.dataset = DatasetKind::kCifar10;
  cfg.train_data = root;
  cfg.record_timing = false;
  return cnn_comparison(cfg, 1800.0);
}

// Same protocol on the scikit-learn digits IDX files, all 1297/500 samples.
Outcome digits_supplement(const fs::path& dir) {
  TrainConfig cfg;
  cfg.dataset = DatasetKind::kIdx;
  cfg.train_data = (dir / "digits-train-images.idx").string();
  cfg.train_labels = (dir / "digits-train-labels.idx").string();
  cfg.val_data = (dir / "digits-val-images.idx").string();
  cfg.val_labels = (dir / "digits-val-labels.idx").string();
  cfg.record_timing = false;
  return cnn_comparison(cfg, 1800.0);
}

// Synthetic 10-class 8x8 IDX data so the CNN path runs without downloads.
void write_idx_fixture(const fs::path& dir, std::size_t n, std::uint64_t seed, const std::string& stem) {
  Rng rng(seed);
  std::vector<std::uint8_t> px(n * 64), lab(n);
  for (std::size_t i = 0; i < n; ++i) {
    lab[i] = static_cast<std::uint8_t>(rng.index(10));
    for (std::size_t p = 0; p < 64; ++p) {
      const bool on = p / 8 == lab[i] % 8 || (lab[i] >= 8 && p % 8 == lab[i]);
      px[i * 64 + p] = static_cast<std::uint8_t>((on ? 180 : 0) + rng.index(60));
    }
  }
  write_file((dir / (stem + "-images.idx")).string(), encode_idx_images(px, static_cast<std::uint32_t>(n), 8, 8));
  write_file((dir / (stem + "-labels.idx")).string(), encode_idx_labels(lab));
}

// Every command twice into separate directories; the trees must match byte
// for byte and contain no NaN.
Outcome criterion8() {
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path data = workdir("c8_data");
  write_idx_fixture(data, 120, 1, "train");
  write_idx_fixture(data, 40, 2, "val");
  write_text((data / "idx.cfg").string(),
             fmt::format("dataset = idx\ntrain_data = {0}/train-images.idx\ntrain_labels = {0}/train-labels.idx\n"
                         "val_data = {0}/val-images.idx\nval_labels = {0}/val-labels.idx\nepochs = 2\n"
                         "batch_size = 16\nconv_activation = gcu\nrecord_timing = false\n",
                         data.string()));
  write_text((data / "xor.cfg").string(),
             "dataset = xor\narch = single-neuron\ndense_activation = gcu\noptimizer = sgd\n"
             "learning_rate = 0.01\nbatch_size = 1\nepochs = 100\nrecord_timing = false\n");
  std::vector<std::uint8_t> img(64);
  for (std::size_t i = 0; i < 64; ++i) img[i] = static_cast<std::uint8_t>(i * 4);
  write_file((data / "img.pgm").string(), encode_pgm(img, 8, 8));

  std::array<fs::path, 2> roots;
  for (int pass_no = 0; pass_no < 2; ++pass_no) {
    const fs::path d = workdir(fmt::format("c8_run{}", pass_no));
    roots[pass_no] = d;
    const std::vector<std::string> cmds = {
        "xor --seeds 20 --out " + q(d / "xor"),
        "boundary --checkpoint " + q(d / "xor" / "neuron.osc") + " --resolution 120 --out " + q(d / "boundary"),
        "scan-impossibility --activation gcu --bound 2 --step 0.25 > " + q(d / "scan.txt"),
        "bench-activations --runs 3 --length 10000 --no-timings --out " + q(d / "report.json"),
        "train --config " + q(data / "idx.cfg") + " --out " + q(d / "train"),
        "train --config " + q(data / "xor.cfg") + " --out " + q(d / "train_xor"),
        "compare --config " + q(data / "xor.cfg") + " --pairs gcu:gcu,tanh:poly_cubic --seeds 1,2 --out " +
            q(d / "compare"),
        "export-filters --checkpoint " + q(d / "train" / "model.osc") + " --image " + q(data / "img.pgm") +
            " --layers 0,3 --out " + q(d / "maps"),
    };
    for (const auto& c : cmds) {
      const CliRun r = cli(c);
      if (r.exit_code != 0) return fail(fmt::format("'{}' exited {}", c, r.exit_code));
    }
  }
  std::size_t files = 0;
  std::vector<std::string> diffs;
  for (const auto& e : fs::recursive_directory_iterator(roots[0])) {
    if (!e.is_regular_file()) continue;
    const fs::path rel = fs::relative(e.path(), roots[0]);
    const fs::path twin = roots[1] / rel;
    ++files;
    if (!fs::exists(twin) || slurp(e.path()) != slurp(twin)) diffs.push_back(rel.string());
    const auto ext = e.path().extension();
    if ((ext == ".csv" || ext == ".json" || ext == ".txt") && slurp(e.path()).find("nan") != std::string::npos) {
      diffs.push_back(rel.string() + " has nan");
    }
  }
  const double secs = seconds_since(t0);
  std::string detail = fmt::format("{} files from 8 commands identical across two runs, {:.1f} s", files, secs);
  for (const auto& d : diffs) detail += "; differs: " + d;
  return diffs.empty() && files > 0 ? pass(detail) : fail(detail);
}

Outcome criterion9() {
  Rng rng(99);
  double worst = 0.0;
  int nets = 0;
  // dense stacks against the explicitly composed affine map
  for (int t = 0; t < 20; ++t) {
    const std::size_t d0 = 2 + rng.index(6), d1 = 2 + rng.index(6), d2 = 2 + rng.index(6), d3 = 1 + rng.index(6);
    Network net({LayerSpec::dense(d1, Activation::kIdentity), LayerSpec::dense(d2, Activation::kIdentity),
                 LayerSpec::dense(d3, Activation::kIdentity)},
                {d0});
    net.init_xavier_uniform(rng);
    testing::randomize_biases(net, rng);
    const auto& p = net.params();
    // weights are (out x in); x rows map to x W^T + b
    const Tensor w = matmul(matmul(p[2].weight, p[1].weight), p[0].weight);
    Tensor b = p[2].bias;
    const Tensor inner_b = matmul(p[2].weight, matmul(p[1].weight, p[0].bias.reshaped({d1, 1})).reshaped({d2, 1}));
    const Tensor mid_b = matmul(p[2].weight, p[1].bias.reshaped({d2, 1}));
    for (std::size_t i = 0; i < d3; ++i) b[i] += inner_b[i] + mid_b[i];
    const Tensor x = uniform(rng, {16, d0}, -3, 3);
    const Tensor y = net.predict(x);
    const Tensor want = matmul_bt(x, w);
    for (std::size_t r = 0; r < 16; ++r)
      for (std::size_t c = 0; c < d3; ++c) worst = std::max(worst, std::abs(y.at(r, c) - (want.at(r, c) + b[c])));
    ++nets;
  }
  // conv stacks: f(x) must equal f(0) + sum_i x_i (f(e_i) - f(0))
  for (int t = 0; t < 10; ++t) {
    Network net({LayerSpec::conv2d(3, 3, 1, 1, Activation::kIdentity), LayerSpec::conv2d(2, 2, 2, 0, Activation::kIdentity),
                 LayerSpec::flatten(), LayerSpec::dense(4, Activation::kIdentity)},
                {2, 6, 6});
    net.init_xavier_uniform(rng);
    testing::randomize_biases(net, rng);
    const std::size_t in = 72;
    Tensor basis({in + 1, 2, 6, 6});
    for (std::size_t i = 0; i < in; ++i) basis[(i + 1) * in + i] = 1.0;
    const Tensor fb = net.predict(basis);
    const Tensor x = uniform(rng, {8, 2, 6, 6}, -3, 3);
    const Tensor y = net.predict(x);
    for (std::size_t r = 0; r < 8; ++r) {
      for (std::size_t c = 0; c < 4; ++c) {
        double v = fb.at(0, c);
        for (std::size_t i = 0; i < in; ++i) v += x[r * in + i] * (fb.at(i + 1, c) - fb.at(0, c));
        worst = std::max(worst, std::abs(y.at(r, c) - v));
      }
    }
    ++nets;
  }
  const std::string detail = fmt::format("{} identity networks, max |forward - affine| = {:.3g}", nets, worst);
  return worst <= 1e-9 ? pass(detail) : fail(detail);
}

}  // namespace

int main(int argc, char** argv) {
  std::optional<int> only;
  std::optional<fs::path> digits;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (a == "--digits-supplement" && i + 1 < argc) {
      digits = argv[++i];
    } else {
      std::fprintf(stderr, "usage: %s [--only N | --digits-supplement DIR]\n", argv[0]);
      return 2;
    }
  }
  if (digits) {
    Outcome o;
    try {
      o = digits_supplement(*digits);
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    std::printf("%s supplement cnn comparison on digits (not CIFAR-10): %s\n",
                o.status == Status::kPass ? "PASS" : "FAIL", o.detail.c_str());
    return o.status == Status::kPass ? 0 : 1;
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"xor solvability", criterion1},      {"xor impossibility scan", criterion2},
      {"boundary geometry", criterion3},    {"gradient correctness", criterion4},
      {"activation numerics", criterion5},  {"timing ordering", criterion6},
      {"desk-scale cnn comparison", criterion7}, {"determinism", criterion8},
      {"linear collapse", criterion9},
  };
  int failed = 0, passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (only && *only != id) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const char* tag = o.status == Status::kPass ? "PASS" : o.status == Status::kFail ? "FAIL" : "SKIP";
    std::printf("%s c%d %s: %s\n", tag, id, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
    if (o.status == Status::kFail) ++failed;
    if (o.status == Status::kPass) ++passed;
  }
  if (failed > 0) return 1;
  return passed == 0 ? 77 : 0;
}
