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

#include <fmt/format.h>

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "oscnet/error.hpp"
#include "oscnet/experiment.hpp"

namespace oscnet {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::size_t parse_count(const std::string& key, const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError(fmt::format("config: {} expects a non-negative integer, got '{}'", key, v));
  }
  errno = 0;
  const unsigned long long n = std::strtoull(v.c_str(), nullptr, 10);
  if (errno == ERANGE) throw UsageError(fmt::format("config: {} is out of range", key));
  return static_cast<std::size_t>(n);
}

double parse_real(const std::string& key, const std::string& v) {
  char* end = nullptr;
  errno = 0;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(d)) {
    throw UsageError(fmt::format("config: {} expects a real number, got '{}'", key, v));
  }
  return d;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw UsageError(fmt::format("config: {} expects true or false, got '{}'", key, v));
}

Activation parse_activation(const std::string& key, const std::string& v) {
  if (auto a = activation_from_name(v)) return *a;
  throw UsageError(fmt::format("config: {}: unknown activation '{}'", key, v));
}

const char* dataset_name(DatasetKind k) {
  switch (k) {
    case DatasetKind::kCifar10: return "cifar10";
    case DatasetKind::kIdx: return "idx";
    case DatasetKind::kXor: return "xor";
  }
  return "cifar10";
}

}  // namespace

OptimizerConfig TrainConfig::optimizer_config() const {
  if (optimizer == "sgd") return SgdConfig{learning_rate};
  if (optimizer == "rmsprop") return RmspropConfig{learning_rate, decay, rho, epsilon};
  throw UsageError("config: optimizer must be sgd or rmsprop, got '" + optimizer + "'");
}

void TrainConfig::validate() const {
  if (subset_train == 0 || subset_val == 0 || epochs == 0 || batch_size == 0) {
    throw UsageError("config: subset_train, subset_val, epochs and batch_size must be positive");
  }
  std::visit([](const auto& c) { c.validate(); }, optimizer_config());
}

void apply_config_value(TrainConfig& cfg, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "dataset") {
    if (v == "cifar10") cfg.dataset = DatasetKind::kCifar10;
    else if (v == "idx") cfg.dataset = DatasetKind::kIdx;
    else if (v == "xor") cfg.dataset = DatasetKind::kXor;
    else throw UsageError("config: dataset must be cifar10, idx or xor, got '" + v + "'");
  } else if (key == "train_data") {
    cfg.train_data = v;
  } else if (key == "train_labels") {
    cfg.train_labels = v;
  } else if (key == "val_data") {
    cfg.val_data = v;
  } else if (key == "val_labels") {
    cfg.val_labels = v;
  } else if (key == "subset_train") {
    cfg.subset_train = parse_count(key, v);
  } else if (key == "subset_val") {
    cfg.subset_val = parse_count(key, v);
  } else if (key == "epochs") {
    cfg.epochs = parse_count(key, v);
  } else if (key == "batch_size") {
    cfg.batch_size = parse_count(key, v);
  } else if (key == "seed") {
    cfg.seed = parse_count(key, v);
  } else if (key == "optimizer") {
    if (v != "sgd" && v != "rmsprop") {
      throw UsageError("config: optimizer must be sgd or rmsprop, got '" + v + "'");
    }
    cfg.optimizer = v;
  } else if (key == "learning_rate") {
    cfg.learning_rate = parse_real(key, v);
  } else if (key == "decay") {
    cfg.decay = parse_real(key, v);
  } else if (key == "rho") {
    cfg.rho = parse_real(key, v);
  } else if (key == "epsilon") {
    cfg.epsilon = parse_real(key, v);
  } else if (key == "conv_activation") {
    cfg.conv_activation = parse_activation(key, v);
  } else if (key == "dense_activation") {
    cfg.dense_activation = parse_activation(key, v);
  } else if (key == "arch") {
    cfg.arch = v;
  } else if (key == "record_timing") {
    cfg.record_timing = parse_bool(key, v);
  } else {
    throw UsageError("config: unknown key '" + key + "'");
  }
}

TrainConfig parse_config(const std::string& text, TrainConfig base) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(fmt::format("config line {}: expected key = value", lineno));
    }
    try {
      apply_config_value(base, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const UsageError& e) {
      throw UsageError(fmt::format("config line {}: {}", lineno, e.what()));
    }
  }
  return base;
}

TrainConfig load_config_file(const std::string& path, TrainConfig base) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string config_to_text(const TrainConfig& c) {
  std::string out;
  auto line = [&](const char* k, const auto& v) { fmt::format_to(std::back_inserter(out), "{} = {}\n", k, v); };
  line("dataset", dataset_name(c.dataset));
  line("train_data", c.train_data);
  line("train_labels", c.train_labels);
  line("val_data", c.val_data);
  line("val_labels", c.val_labels);
  line("subset_train", c.subset_train);
  line("subset_val", c.subset_val);
  line("epochs", c.epochs);
  line("batch_size", c.batch_size);
  line("seed", c.seed);
  line("optimizer", c.optimizer);
  line("learning_rate", c.learning_rate);
  line("decay", c.decay);
  line("rho", c.rho);
  line("epsilon", c.epsilon);
  line("conv_activation", name(c.conv_activation));
  line("dense_activation", name(c.dense_activation));
  line("arch", c.arch);
  line("record_timing", c.record_timing ? "true" : "false");
  return out;
}

}  // namespace oscnet
