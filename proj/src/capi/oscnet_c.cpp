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

#include "oscnet.h"

#include <algorithm>
#include <filesystem>
#include <new>
#include <string>

#include "oscnet/benchmarks.hpp"
#include "oscnet/error.hpp"
#include "oscnet/experiment.hpp"

struct osc_network {
  oscnet::Network net;
};

struct osc_config {
  oscnet::TrainConfig cfg;
};

namespace {

namespace fs = std::filesystem;
using namespace oscnet;

thread_local std::string g_last_error;

template <typename F>
osc_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return OSC_OK;
  } catch (const UsageError& e) {
    g_last_error = e.what();
    return OSC_ERR_USAGE;
  } catch (const DataError& e) {
    g_last_error = e.what();
    return OSC_ERR_DATA;
  } catch (const DivergenceError& e) {
    g_last_error = e.what();
    return OSC_ERR_DIVERGENCE;
  } catch (const ShapeError& e) {
    g_last_error = e.what();
    return OSC_ERR_SHAPE;
  } catch (const StateError& e) {
    g_last_error = e.what();
    return OSC_ERR_STATE;
  } catch (const fs::filesystem_error& e) {
    g_last_error = e.what();
    return OSC_ERR_DATA;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return OSC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return OSC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return OSC_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw UsageError(what);
}

Activation to_cpp(osc_activation a) {
  const auto i = static_cast<int>(a);
  if (i < 0 || i >= OSC_ACTIVATION_COUNT) throw UsageError("activation kind out of range");
  return static_cast<Activation>(i);
}

osc_activation to_c(Activation a) { return static_cast<osc_activation>(a); }

std::string out_path(const char* dir, const char* file) {
  fs::create_directories(dir);
  return (fs::path(dir) / file).string();
}

}  // namespace

extern "C" {

const char* osc_last_error(void) { return g_last_error.c_str(); }

const char* osc_version(void) { return "0.1.0"; }

osc_status osc_activation_parse(const char* name, osc_activation* out) {
  return guarded([&] {
    require(name && out, "null argument");
    const auto a = activation_from_name(name);
    if (!a) throw UsageError(std::string("unknown activation '") + name + "'");
    *out = to_c(*a);
  });
}

const char* osc_activation_name(osc_activation kind) {
  const auto i = static_cast<int>(kind);
  if (i < 0 || i >= OSC_ACTIVATION_COUNT) return nullptr;
  // names in the traits table are string literals
  return name(static_cast<Activation>(i)).data();
}

osc_status osc_activation_eval(osc_activation kind, double z, double* value, double* d1, double* d2) {
  return guarded([&] {
    const Activation a = to_cpp(kind);
    if (value) *value = forward(a, z);
    if (d1) *d1 = derivative(a, z);
    if (d2) *d2 = second_derivative(a, z);
  });
}

osc_status osc_network_build(const char* arch, osc_activation conv, osc_activation dense,
                             uint64_t seed, osc_network** out) {
  return guarded([&] {
    require(arch && out, "null argument");
    const std::string id = arch;
    const Shape input = id == "single-neuron" ? Shape{2} : Shape{3, 32, 32};
    const std::size_t classes = id == "single-neuron" ? 1 : 10;
    Network net = build_arch(id, to_cpp(conv), to_cpp(dense), input, classes);
    Rng rng(seed);
    net.init_xavier_uniform(rng);
    *out = new osc_network{std::move(net)};
  });
}

osc_status osc_network_load(const char* path, osc_network** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new osc_network{load_checkpoint(path)};
  });
}

osc_status osc_network_save(const osc_network* net, const char* path) {
  return guarded([&] {
    require(net && path, "null argument");
    save_checkpoint(net->net, path);
  });
}

void osc_network_free(osc_network* net) { delete net; }

size_t osc_network_layer_count(const osc_network* net) { return net ? net->net.layers().size() : 0; }

size_t osc_network_parameter_count(const osc_network* net) {
  return net ? net->net.parameter_count() : 0;
}

size_t osc_network_input_size(const osc_network* net) {
  return net ? shape_volume(net->net.input_shape()) : 0;
}

size_t osc_network_output_size(const osc_network* net) {
  return net ? shape_volume(net->net.output_shape()) : 0;
}

osc_status osc_network_predict(const osc_network* net, const double* input, size_t batch,
                               double* output) {
  return guarded([&] {
    require(net && input && output, "null argument");
    require(batch > 0, "batch must be positive");
    Shape shape = net->net.input_shape();
    shape.insert(shape.begin(), batch);
    const std::size_t n = shape_volume(shape);
    const Tensor out = net->net.predict(Tensor(shape, std::vector<double>(input, input + n)));
    std::copy(out.data().begin(), out.data().end(), output);
  });
}

void osc_xor_default_options(osc_xor_options* opts) {
  if (!opts) return;
  opts->activation = OSC_GCU;
  opts->seeds = 100;
  opts->alpha = 0.01;
  opts->max_epochs = 10000;
}

osc_status osc_xor_run(const osc_xor_options* opts, const char* out_dir, osc_xor_summary* summary) {
  return guarded([&] {
    require(opts && out_dir, "null argument");
    require(opts->seeds > 0, "seeds must be positive");
    require(opts->max_epochs > 0, "max_epochs must be positive");
    require(opts->alpha > 0.0, "alpha must be positive");
    std::vector<std::uint64_t> seeds(opts->seeds);
    for (std::uint64_t i = 0; i < opts->seeds; ++i) seeds[i] = i + 1;
    const XorExperiment exp = run_xor_seeds(to_cpp(opts->activation), seeds, opts->alpha, opts->max_epochs);
    write_text(out_path(out_dir, "runs.csv"), xor_runs_csv(exp));
    write_text(out_path(out_dir, "summary.json"), xor_summary_json(exp));
    osc_xor_summary s{exp.results.size(), exp.successes(), 0, solves_xor(analytic_gcu_xor_neuron()), 0};
    for (std::size_t i = 0; i < exp.results.size(); ++i) {
      const auto& r = exp.results[i];
      if (!r.success) continue;
      if (s.first_success_seed == 0) {
        s.first_success_seed = exp.seeds[i];
        save_checkpoint(neuron_to_network(r.neuron), out_path(out_dir, "neuron.osc"));
      }
      if (s.min_epochs == 0 || r.epochs_used < s.min_epochs) s.min_epochs = r.epochs_used;
    }
    if (summary) *summary = s;
  });
}

osc_status osc_boundary_run(const char* checkpoint, const double window[4], int resolution,
                            const char* out_dir, osc_boundary_summary* summary) {
  return guarded([&] {
    require(checkpoint && window && out_dir, "null argument");
    require(resolution >= 2, "resolution must be at least 2");
    require(window[2] > window[0] && window[3] > window[1], "window must have x1 > x0 and y1 > y0");
    const SingleNeuron neuron = network_to_neuron(load_checkpoint(checkpoint));
    const Box box{window[0], window[1], window[2], window[3]};
    const DecisionBoundary db = decision_boundary(neuron, box, resolution);
    write_text(out_path(out_dir, "boundary.csv"), boundary_csv(db));
    write_text(out_path(out_dir, "strips.json"), strips_json(neuron, db));
    const SignChangeAudit audit = audit_sign_changes(neuron, db);
    if (summary) {
      *summary = {audit.sign_changes, audit.off_boundary, audit.worst_distance, audit.cell_size,
                  solves_xor(neuron)};
    }
  });
}

osc_status osc_scan_impossibility(osc_activation activation, double bound, double step,
                                  unsigned threads, osc_scan_result* result) {
  return guarded([&] {
    require(result != nullptr, "null argument");
    const ScanResult r = impossibility_scan(to_cpp(activation), bound, step, OSC_MAX_WITNESSES, threads);
    result->triples = r.triples_checked;
    result->solutions = r.solutions;
    result->witness_count = r.witnesses.size();
    for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
      std::copy(r.witnesses[i].begin(), r.witnesses[i].end(), result->witnesses[i]);
    }
  });
}

osc_status osc_bench_activations(const osc_activation* kinds, size_t count, size_t runs, size_t length,
                                 uint64_t seed, osc_bench_report* reports, const char* json_path,
                                 int include_timings) {
  return guarded([&] {
    require(kinds && reports, "null argument");
    require(count > 0, "need at least one activation");
    std::vector<Activation> list;
    for (size_t i = 0; i < count; ++i) list.push_back(to_cpp(kinds[i]));
    const auto rs = bench_activations(list, runs, length, seed);
    if (json_path) {
      const fs::path parent = fs::path(json_path).parent_path();
      if (!parent.empty()) fs::create_directories(parent);
      write_text(json_path, bench_report_json(rs, include_timings != 0));
    }
    for (size_t i = 0; i < rs.size(); ++i) {
      reports[i] = {kinds[i], rs[i].runs, rs[i].vector_length, rs[i].mean_seconds,
                    rs[i].std_seconds, rs[i].min_seconds, rs[i].checksum};
    }
  });
}

osc_status osc_config_create(osc_config** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new osc_config{};
  });
}

void osc_config_free(osc_config* cfg) { delete cfg; }

osc_status osc_config_load_file(osc_config* cfg, const char* path) {
  return guarded([&] {
    require(cfg && path, "null argument");
    cfg->cfg = load_config_file(path, cfg->cfg);
  });
}

osc_status osc_config_set(osc_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    require(cfg && key && value, "null argument");
    apply_config_value(cfg->cfg, key, value);
  });
}

osc_status osc_train(const osc_config* cfg, const char* out_dir, osc_train_summary* summary) {
  return guarded([&] {
    require(cfg && out_dir, "null argument");
    cfg->cfg.validate();
    const TrainResult r = train(cfg->cfg);
    write_text(out_path(out_dir, "metrics.csv"), metrics_csv(r.epochs));
    write_text(out_path(out_dir, "summary.json"), train_summary_json(cfg->cfg, r));
    save_checkpoint(r.model, out_path(out_dir, "model.osc"));
    if (summary) {
      const auto& last = r.epochs.back();
      *summary = {r.epochs.size(), r.model.parameter_count(), last.train_loss,
                  last.train_accuracy, last.val_loss, last.val_accuracy};
    }
  });
}

osc_status osc_compare(const osc_config* cfg, const char* pairs, const char* seeds, const char* out_dir,
                       osc_compare_row* rows, size_t capacity, size_t* row_count) {
  return guarded([&] {
    require(cfg && pairs && seeds && out_dir, "null argument");
    cfg->cfg.validate();
    const auto table = compare_activations(cfg->cfg, parse_pairs(pairs), parse_seeds(seeds));
    write_text(out_path(out_dir, "comparison.csv"), comparison_csv(table));
    write_text(out_path(out_dir, "runs.csv"), comparison_runs_csv(table));
    if (row_count) *row_count = table.size();
    for (size_t i = 0; rows && i < std::min(capacity, table.size()); ++i) {
      const auto& t = table[i];
      rows[i] = {to_c(t.conv_activation), to_c(t.dense_activation), t.seeds.size(),
                 t.mean_accuracy_pct, t.sd_accuracy_pct, t.mean_loss, t.sd_loss};
    }
  });
}

osc_status osc_export_filters(const char* checkpoint, const char* image, size_t record,
                              const char* layers, const char* out_dir, size_t* files_written) {
  return guarded([&] {
    require(checkpoint && image && layers && out_dir, "null argument");
    const Network net = load_checkpoint(checkpoint);
    const auto idx = parse_indices(layers);
    require(!idx.empty(), "need at least one layer index");
    const auto files = export_feature_maps(net, load_image(image, record), idx, out_dir);
    if (files_written) *files_written = files.size();
  });
}

}  // extern "C"
