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

/* C interface to liboscnet. Every function returns an osc_status; on failure
 * osc_last_error() describes the problem for the calling thread. Handles are
 * opaque and owned by the caller, who releases them with the matching _free.
 */

#ifndef OSCNET_H_
#define OSCNET_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define OSC_API __declspec(dllexport)
#else
#define OSC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum osc_status {
  OSC_OK = 0,
  OSC_ERR_USAGE = 1,
  OSC_ERR_DATA = 2,
  OSC_ERR_DIVERGENCE = 3,
  OSC_ERR_SHAPE = 4,
  OSC_ERR_STATE = 5,
  OSC_ERR_INTERNAL = 6
} osc_status;

/* Same order as the C++ Activation enum. */
typedef enum osc_activation {
  OSC_SIGMOID = 0,
  OSC_TANH = 1,
  OSC_RELU = 2,
  OSC_LEAKY_RELU = 3,
  OSC_SWISH = 4,
  OSC_MISH = 5,
  OSC_GCU = 6,
  OSC_POLY_CUBIC = 7,
  OSC_IDENTITY = 8
} osc_activation;

#define OSC_ACTIVATION_COUNT 9

/* Thread-local message for the last failed call; "" after success. */
OSC_API const char* osc_last_error(void);
OSC_API const char* osc_version(void);

OSC_API osc_status osc_activation_parse(const char* name, osc_activation* out);
/* Static string, NULL for an out-of-range kind. */
OSC_API const char* osc_activation_name(osc_activation kind);
/* Any of value, d1, d2 may be NULL. */
OSC_API osc_status osc_activation_eval(osc_activation kind, double z, double* value, double* d1,
                                       double* d2);

/* ---- networks ---------------------------------------------------------- */

typedef struct osc_network osc_network;

/* arch is "cifar-compact" (3x32x32 input, 10 logits) or "single-neuron". */
OSC_API osc_status osc_network_build(const char* arch, osc_activation conv, osc_activation dense,
                                     uint64_t seed, osc_network** out);
OSC_API osc_status osc_network_load(const char* path, osc_network** out);
OSC_API osc_status osc_network_save(const osc_network* net, const char* path);
OSC_API void osc_network_free(osc_network* net);
OSC_API size_t osc_network_layer_count(const osc_network* net);
OSC_API size_t osc_network_parameter_count(const osc_network* net);
/* Per-sample element counts. */
OSC_API size_t osc_network_input_size(const osc_network* net);
OSC_API size_t osc_network_output_size(const osc_network* net);
/* input holds batch * input_size values, output receives batch * output_size. */
OSC_API osc_status osc_network_predict(const osc_network* net, const double* input, size_t batch,
                                       double* output);

/* ---- single-neuron XOR ------------------------------------------------- */

typedef struct osc_xor_options {
  osc_activation activation;
  uint64_t seeds;      /* runs use seeds 1..seeds */
  double alpha;
  int max_epochs;
} osc_xor_options;

typedef struct osc_xor_summary {
  uint64_t runs;
  uint64_t successes;
  int min_epochs;      /* over successful runs, 0 when none */
  int analytic_solves; /* hand-built GCU neuron classifies all four points */
  uint64_t first_success_seed;
} osc_xor_summary;

OSC_API void osc_xor_default_options(osc_xor_options* opts);
/* Writes runs.csv and summary.json into out_dir, and neuron.osc holding the
 * first successful neuron when there is one. */
OSC_API osc_status osc_xor_run(const osc_xor_options* opts, const char* out_dir,
                               osc_xor_summary* summary);

typedef struct osc_boundary_summary {
  uint64_t sign_changes;
  uint64_t off_boundary;
  double worst_distance;
  double cell_size;
  int solves_xor;
} osc_boundary_summary;

/* Checkpoint must hold a single Dense(1) neuron over 2 inputs. window is
 * x0, y0, x1, y1. Writes boundary.csv and strips.json. */
OSC_API osc_status osc_boundary_run(const char* checkpoint, const double window[4], int resolution,
                                    const char* out_dir, osc_boundary_summary* summary);

#define OSC_MAX_WITNESSES 16

typedef struct osc_scan_result {
  uint64_t triples;
  uint64_t solutions;
  size_t witness_count;
  double witnesses[OSC_MAX_WITNESSES][3];
} osc_scan_result;

/* threads = 0 uses every hardware thread. */
OSC_API osc_status osc_scan_impossibility(osc_activation activation, double bound, double step,
                                          unsigned threads, osc_scan_result* result);

/* ---- benchmarks -------------------------------------------------------- */

typedef struct osc_bench_report {
  osc_activation activation;
  size_t runs;
  size_t vector_length;
  double mean_seconds;
  double std_seconds;
  double min_seconds;
  double checksum;
} osc_bench_report;

/* reports receives count entries. json_path may be NULL; include_timings = 0
 * writes the timing fields of the JSON as 0. */
OSC_API osc_status osc_bench_activations(const osc_activation* kinds, size_t count, size_t runs,
                                         size_t length, uint64_t seed, osc_bench_report* reports,
                                         const char* json_path, int include_timings);

/* ---- training ---------------------------------------------------------- */

typedef struct osc_config osc_config;

OSC_API osc_status osc_config_create(osc_config** out);
OSC_API void osc_config_free(osc_config* cfg);
/* key = value lines with # comments, applied over the current values. */
OSC_API osc_status osc_config_load_file(osc_config* cfg, const char* path);
OSC_API osc_status osc_config_set(osc_config* cfg, const char* key, const char* value);

typedef struct osc_train_summary {
  size_t epochs;
  size_t parameter_count;
  double final_train_loss;
  double final_train_accuracy;
  double final_val_loss;
  double final_val_accuracy;
} osc_train_summary;

/* Writes metrics.csv, summary.json and model.osc into out_dir. */
OSC_API osc_status osc_train(const osc_config* cfg, const char* out_dir, osc_train_summary* summary);

typedef struct osc_compare_row {
  osc_activation conv;
  osc_activation dense;
  size_t runs;
  double mean_accuracy_pct;
  double sd_accuracy_pct;
  double mean_loss;
  double sd_loss;
} osc_compare_row;

/* pairs like "gcu:relu,relu:relu", seeds like "1,2,3". Writes comparison.csv
 * and runs.csv. Fills up to capacity rows and stores the pair count. */
OSC_API osc_status osc_compare(const osc_config* cfg, const char* pairs, const char* seeds,
                               const char* out_dir, osc_compare_row* rows, size_t capacity,
                               size_t* row_count);

/* layers like "0,1,3". image is a P5/P6 file or a CIFAR-10 batch, from which
 * `record` is taken. */
OSC_API osc_status osc_export_filters(const char* checkpoint, const char* image, size_t record,
                                      const char* layers, const char* out_dir,
                                      size_t* files_written);

#ifdef __cplusplus
}
#endif

#endif /* OSCNET_H_ */
