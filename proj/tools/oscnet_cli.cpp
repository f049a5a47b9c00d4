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

// oscnet command-line front end. Talks to the library only through oscnet.h.

#include <array>
#include <cstdio>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oscnet.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitDivergence = 3;

int exit_code(osc_status s) {
  switch (s) {
    case OSC_OK: return kExitOk;
    case OSC_ERR_USAGE:
    case OSC_ERR_STATE: return kExitUsage;
    case OSC_ERR_DIVERGENCE: return kExitDivergence;
    default: return kExitData;
  }
}

int report(osc_status s) {
  if (s != OSC_OK) std::fprintf(stderr, "oscnet: %s\n", osc_last_error());
  return exit_code(s);
}

const char* const kConfigKeys[] = {
    "dataset",       "train_data", "train_labels",    "val_data",         "val_labels",
    "subset_train",  "subset_val", "epochs",          "batch_size",       "seed",
    "optimizer",     "learning_rate", "decay",        "rho",              "epsilon",
    "conv_activation", "dense_activation", "arch",    "record_timing",
};

std::string flag_for(const std::string& key) {
  std::string f = "--" + key;
  for (char& c : f) if (c == '_') c = '-';
  return f;
}

struct ConfigFlags {
  std::string file;
  std::map<std::string, std::string> values;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", file, "key = value config file")->check(CLI::ExistingFile);
    for (const char* key : kConfigKeys) {
      cmd->add_option(flag_for(key), values[key], std::string("override config key ") + key);
    }
  }

  // File first, then flags given on the command line.
  osc_status build(CLI::App* cmd, osc_config** out) const {
    osc_config* cfg = nullptr;
    osc_status s = osc_config_create(&cfg);
    if (s == OSC_OK && !file.empty()) s = osc_config_load_file(cfg, file.c_str());
    for (const char* key : kConfigKeys) {
      if (s != OSC_OK) break;
      if (cmd->count(flag_for(key)) > 0) s = osc_config_set(cfg, key, values.at(key).c_str());
    }
    if (s != OSC_OK) {
      osc_config_free(cfg);
      return s;
    }
    *out = cfg;
    return OSC_OK;
  }
};

osc_status parse_activation(const std::string& name, osc_activation* out) {
  return osc_activation_parse(name.c_str(), out);
}

std::vector<osc_activation> all_activations() {
  std::vector<osc_activation> v;
  for (int i = 0; i < OSC_ACTIVATION_COUNT; ++i) v.push_back(static_cast<osc_activation>(i));
  return v;
}

bool parse_window(const std::string& text, std::array<double, 4>& w) {
  std::stringstream ss(text);
  std::string item;
  std::size_t n = 0;
  while (std::getline(ss, item, ',')) {
    if (n == 4) return false;
    try {
      std::size_t used = 0;
      w[n++] = std::stod(item, &used);
      if (used != item.size()) return false;
    } catch (const std::exception&) {
      return false;
    }
  }
  return n == 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oscnet: oscillatory activations, XOR lab and CNN experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(osc_version()));

  // xor
  auto* xor_cmd = app.add_subcommand("xor", "train single neurons on XOR over seeds 1..N");
  std::string xor_act = "gcu", xor_out = "xor_out";
  osc_xor_options xor_opts;
  osc_xor_default_options(&xor_opts);
  xor_cmd->add_option("--activation", xor_act, "activation name")->capture_default_str();
  xor_cmd->add_option("--seeds", xor_opts.seeds, "number of seeds")->capture_default_str();
  xor_cmd->add_option("--alpha", xor_opts.alpha, "learning rate")->capture_default_str();
  xor_cmd->add_option("--max-epochs", xor_opts.max_epochs, "epoch budget per seed")->capture_default_str();
  xor_cmd->add_option("--out", xor_out, "output directory")->capture_default_str();

  // boundary
  auto* bnd_cmd = app.add_subcommand("boundary", "rasterize a neuron's decision regions");
  std::string bnd_ckpt, bnd_window = "-3,-3,3,3", bnd_out = "boundary_out";
  int bnd_res = 400;
  bnd_cmd->add_option("--checkpoint", bnd_ckpt, "single-neuron checkpoint")->required();
  bnd_cmd->add_option("--window", bnd_window, "x0,y0,x1,y1")->capture_default_str();
  bnd_cmd->add_option("--resolution", bnd_res, "grid points per side")->capture_default_str();
  bnd_cmd->add_option("--out", bnd_out, "output directory")->capture_default_str();

  // scan-impossibility
  auto* scan_cmd = app.add_subcommand("scan-impossibility", "count XOR-solving neurons on a lattice");
  std::string scan_act = "relu";
  double scan_bound = 10.0, scan_step = 0.1;
  unsigned scan_threads = 0;
  scan_cmd->add_option("--activation", scan_act, "activation name")->capture_default_str();
  scan_cmd->add_option("--bound", scan_bound, "half-width of the cube")->capture_default_str();
  scan_cmd->add_option("--step", scan_step, "lattice spacing")->capture_default_str();
  scan_cmd->add_option("--threads", scan_threads, "worker threads, 0 = all")->capture_default_str();

  // bench-activations
  auto* bench_cmd = app.add_subcommand("bench-activations", "time elementwise forward passes");
  std::size_t bench_runs = 1000, bench_len = 1000000;
  std::uint64_t bench_seed = 1;
  std::string bench_out = "report.json", bench_acts;
  bool bench_no_timings = false;
  bench_cmd->add_option("--runs", bench_runs, "timed runs")->capture_default_str();
  bench_cmd->add_option("--length", bench_len, "vector length")->capture_default_str();
  bench_cmd->add_option("--seed", bench_seed, "input generator seed")->capture_default_str();
  bench_cmd->add_option("--out", bench_out, "JSON report path")->capture_default_str();
  bench_cmd->add_option("--activations", bench_acts, "comma list, default all");
  bench_cmd->add_flag("--no-timings", bench_no_timings, "write timing fields as 0");

  // train
  auto* train_cmd = app.add_subcommand("train", "train a network from a config");
  ConfigFlags train_flags;
  std::string train_out = "train_out";
  train_flags.attach(train_cmd);
  train_cmd->add_option("--out", train_out, "output directory")->capture_default_str();

  // compare
  auto* cmp_cmd = app.add_subcommand("compare", "train activation pairs over several seeds");
  ConfigFlags cmp_flags;
  std::string cmp_pairs, cmp_seeds = "1,2,3", cmp_out = "compare_out";
  cmp_flags.attach(cmp_cmd);
  cmp_cmd->add_option("--pairs", cmp_pairs, "conv:dense,...")->required();
  cmp_cmd->add_option("--seeds", cmp_seeds, "comma list of seeds")->capture_default_str();
  cmp_cmd->add_option("--out", cmp_out, "output directory")->capture_default_str();

  // export-filters
  auto* exp_cmd = app.add_subcommand("export-filters", "write conv feature maps as PGM");
  std::string exp_ckpt, exp_image, exp_layers, exp_out = "filters_out";
  std::size_t exp_record = 0;
  exp_cmd->add_option("--checkpoint", exp_ckpt, "network checkpoint")->required();
  exp_cmd->add_option("--image", exp_image, "P5/P6 image or CIFAR-10 batch")->required();
  exp_cmd->add_option("--record", exp_record, "record index in a CIFAR batch")->capture_default_str();
  exp_cmd->add_option("--layers", exp_layers, "comma list of conv layer indices")->required();
  exp_cmd->add_option("--out", exp_out, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (*xor_cmd) {
    osc_status s = parse_activation(xor_act, &xor_opts.activation);
    osc_xor_summary sum{};
    if (s == OSC_OK) s = osc_xor_run(&xor_opts, xor_out.c_str(), &sum);
    if (s != OSC_OK) return report(s);
    std::printf("%s: %llu/%llu seeds solved XOR", xor_act.c_str(),
                static_cast<unsigned long long>(sum.successes), static_cast<unsigned long long>(sum.runs));
    if (sum.successes > 0) std::printf(" (fastest %d epochs, first seed %llu)", sum.min_epochs,
                                       static_cast<unsigned long long>(sum.first_success_seed));
    std::printf("\nanalytic gcu neuron (pi/4, pi/4, pi/4): %s\n", sum.analytic_solves ? "solves" : "fails");
    return kExitOk;
  }

  if (*bnd_cmd) {
    std::array<double, 4> w{};
    if (!parse_window(bnd_window, w)) {
      std::fprintf(stderr, "oscnet: --window expects x0,y0,x1,y1\n");
      return kExitUsage;
    }
    osc_boundary_summary sum{};
    const osc_status s = osc_boundary_run(bnd_ckpt.c_str(), w.data(), bnd_res, bnd_out.c_str(), &sum);
    if (s != OSC_OK) return report(s);
    std::printf("sign changes %llu, off boundary %llu, worst distance %.6g (cell %.6g)\n",
                static_cast<unsigned long long>(sum.sign_changes),
                static_cast<unsigned long long>(sum.off_boundary), sum.worst_distance, sum.cell_size);
    return kExitOk;
  }

  if (*scan_cmd) {
    osc_activation a{};
    osc_scan_result r{};
    osc_status s = parse_activation(scan_act, &a);
    if (s == OSC_OK) s = osc_scan_impossibility(a, scan_bound, scan_step, scan_threads, &r);
    if (s != OSC_OK) return report(s);
    std::printf("%s: %llu solutions among %llu triples\n", scan_act.c_str(),
                static_cast<unsigned long long>(r.solutions), static_cast<unsigned long long>(r.triples));
    for (std::size_t i = 0; i < r.witness_count; ++i) {
      std::printf("  w1=%.4f w2=%.4f b=%.4f\n", r.witnesses[i][0], r.witnesses[i][1], r.witnesses[i][2]);
    }
    return kExitOk;
  }

  if (*bench_cmd) {
    std::vector<osc_activation> kinds;
    if (bench_acts.empty()) {
      kinds = all_activations();
    } else {
      std::stringstream ss(bench_acts);
      std::string item;
      while (std::getline(ss, item, ',')) {
        osc_activation a{};
        if (const osc_status s = parse_activation(item, &a); s != OSC_OK) return report(s);
        kinds.push_back(a);
      }
    }
    std::vector<osc_bench_report> reports(kinds.size());
    const osc_status s = osc_bench_activations(kinds.data(), kinds.size(), bench_runs, bench_len, bench_seed,
                                               reports.data(), bench_out.c_str(), bench_no_timings ? 0 : 1);
    if (s != OSC_OK) return report(s);
    for (const auto& r : reports) {
      std::printf("%-11s mean %.6f ms  sd %.6f ms  min %.6f ms\n", osc_activation_name(r.activation),
                  1e3 * r.mean_seconds, 1e3 * r.std_seconds, 1e3 * r.min_seconds);
    }
    return kExitOk;
  }

  if (*train_cmd) {
    osc_config* cfg = nullptr;
    osc_status s = train_flags.build(train_cmd, &cfg);
    if (s != OSC_OK) return report(s);
    std::unique_ptr<osc_config, decltype(&osc_config_free)> guard(cfg, osc_config_free);
    osc_train_summary sum{};
    s = osc_train(cfg, train_out.c_str(), &sum);
    if (s != OSC_OK) return report(s);
    std::printf("%zu epochs, %zu parameters, val accuracy %.4f, val loss %.4f\n", sum.epochs,
                sum.parameter_count, sum.final_val_accuracy, sum.final_val_loss);
    return kExitOk;
  }

  if (*cmp_cmd) {
    osc_config* cfg = nullptr;
    osc_status s = cmp_flags.build(cmp_cmd, &cfg);
    if (s != OSC_OK) return report(s);
    std::unique_ptr<osc_config, decltype(&osc_config_free)> guard(cfg, osc_config_free);
    std::vector<osc_compare_row> rows(64);
    std::size_t n = 0;
    s = osc_compare(cfg, cmp_pairs.c_str(), cmp_seeds.c_str(), cmp_out.c_str(), rows.data(), rows.size(), &n);
    if (s != OSC_OK) return report(s);
    for (std::size_t i = 0; i < std::min(n, rows.size()); ++i) {
      const auto& r = rows[i];
      std::printf("%-11s %-11s acc %.2f%% (sd %.2f)  loss %.4f (sd %.4f)  runs %zu\n",
                  osc_activation_name(r.conv), osc_activation_name(r.dense), r.mean_accuracy_pct,
                  r.sd_accuracy_pct, r.mean_loss, r.sd_loss, r.runs);
    }
    return kExitOk;
  }

  if (*exp_cmd) {
    std::size_t files = 0;
    const osc_status s = osc_export_filters(exp_ckpt.c_str(), exp_image.c_str(), exp_record,
                                            exp_layers.c_str(), exp_out.c_str(), &files);
    if (s != OSC_OK) return report(s);
    std::printf("wrote %zu feature maps to %s\n", files, exp_out.c_str());
    return kExitOk;
  }
  return kExitUsage;
}
