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

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "oscnet/error.hpp"
#include "oscnet/network.hpp"

namespace oscnet {

namespace {

constexpr char kMagic[4] = {'O', 'S', 'C', '1'};
constexpr std::uint8_t kNoActivation = 255;

class Writer {
 public:
  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u16(std::uint16_t v) { put(v, 2); }
  void u32(std::size_t v) {
    if (v > std::numeric_limits<std::uint32_t>::max()) {
      throw UsageError("checkpoint: value does not fit 32 bits");
    }
    put(v, 4);
  }
  void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
  void raw(const char* p, std::size_t n) { bytes_.insert(bytes_.end(), p, p + n); }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  void put(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> bytes_;
};

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& b) : bytes_(b) {}
  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  double f64() { return std::bit_cast<double>(get(8)); }
  void expect_magic() {
    need(4);
    if (std::memcmp(bytes_.data(), kMagic, 4) != 0) {
      throw DataError("checkpoint: bad magic, expected OSC1");
    }
    pos_ = 4;
  }
  bool at_end() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw DataError("checkpoint: truncated file");
  }
  std::uint64_t get(int n) {
    need(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_++]) << (8 * i);
    return v;
  }
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_checkpoint(const Network& net) {
  Writer w;
  w.raw(kMagic, 4);
  w.u32(net.input_shape().size());
  for (std::size_t d : net.input_shape()) w.u32(d);
  w.u32(net.layers().size());
  for (const LayerSpec& spec : net.layers()) {
    w.u8(static_cast<std::uint8_t>(spec.kind));
    w.u8(spec.activation ? static_cast<std::uint8_t>(*spec.activation) : kNoActivation);
    w.u16(0);
    w.u32(spec.units);
    w.u32(spec.kernel);
    w.u32(spec.stride);
    w.u32(spec.padding);
  }
  for (std::size_t k = 0; k < net.layers().size(); ++k) {
    if (!net.layers()[k].has_params()) continue;
    for (double v : net.params()[k].weight.data()) w.f64(v);
    for (double v : net.params()[k].bias.data()) w.f64(v);
  }
  return w.take();
}

Network decode_checkpoint(const std::vector<std::uint8_t>& bytes) {
  Reader r(bytes);
  r.expect_magic();
  const std::uint32_t rank = r.u32();
  if (rank == 0 || rank > 8) throw DataError("checkpoint: implausible input rank");
  Shape input(rank);
  for (auto& d : input) d = r.u32();
  const std::uint32_t count = r.u32();
  if (count > 4096) throw DataError("checkpoint: implausible layer count");
  std::vector<LayerSpec> layers(count);
  for (auto& spec : layers) {
    const std::uint8_t kind = r.u8();
    const std::uint8_t act = r.u8();
    r.u16();
    if (kind > static_cast<std::uint8_t>(LayerKind::kFlatten)) {
      throw DataError("checkpoint: unknown layer kind");
    }
    spec.kind = static_cast<LayerKind>(kind);
    if (act != kNoActivation) {
      if (act >= kAllActivations.size()) throw DataError("checkpoint: unknown activation");
      spec.activation = static_cast<Activation>(act);
    }
    spec.units = r.u32();
    spec.kernel = r.u32();
    spec.stride = r.u32();
    spec.padding = r.u32();
  }
  Network net = [&] {
    try {
      return Network(std::move(layers), std::move(input));
    } catch (const ShapeError& e) {
      throw DataError(std::string("checkpoint: inconsistent layer table: ") + e.what());
    }
  }();
  for (std::size_t k = 0; k < net.layers().size(); ++k) {
    if (!net.layers()[k].has_params()) continue;
    for (double& v : net.params()[k].weight.data()) v = r.f64();
    for (double& v : net.params()[k].bias.data()) v = r.f64();
  }
  if (!r.at_end()) throw DataError("checkpoint: trailing bytes after parameters");
  return net;
}

void save_checkpoint(const Network& net, const std::string& path) {
  const auto bytes = encode_checkpoint(net);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("failed writing " + path);
}

Network load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes);
}

}  // namespace oscnet
