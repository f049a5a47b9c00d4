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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>

#include "oscnet/error.hpp"
#include "oscnet/experiment.hpp"

namespace oscnet {

namespace fs = std::filesystem;

namespace {

// Reads whitespace-separated header integers, skipping '#' comments.
class PnmHeader {
 public:
  explicit PnmHeader(std::span<const std::uint8_t> bytes) : bytes_(bytes), pos_(2) {}

  std::size_t next_int(const std::string& path) {
    for (;;) {
      while (pos_ < bytes_.size() && std::isspace(bytes_[pos_])) ++pos_;
      if (pos_ < bytes_.size() && bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
        continue;
      }
      break;
    }
    std::size_t v = 0, digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_++] - '0');
      if (++digits > 9) throw DataError(path + ": header value too large");
    }
    if (digits == 0) throw DataError(path + ": malformed netpbm header");
    return v;
  }

  // One whitespace byte separates the header from the raster.
  std::size_t raster_offset() const { return pos_ + 1; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_;
};

Tensor load_pnm(const std::string& path, std::span<const std::uint8_t> bytes) {
  const bool color = bytes[1] == '6';
  PnmHeader h(bytes);
  const std::size_t w = h.next_int(path), ht = h.next_int(path), maxval = h.next_int(path);
  if (w == 0 || ht == 0) throw DataError(path + ": empty image");
  if (maxval == 0 || maxval > 255) throw DataError(path + ": only 8-bit netpbm is supported");
  const std::size_t channels = color ? 3 : 1;
  const std::size_t off = h.raster_offset();
  if (bytes.size() < off + w * ht * channels) throw DataError(path + ": truncated raster");
  Tensor out({1, channels, ht, w});
  auto px = out.data();
  // interleaved RGB -> planar CHW
  for (std::size_t y = 0; y < ht; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      for (std::size_t c = 0; c < channels; ++c) {
        const double v = bytes[off + (y * w + x) * channels + c];
        px[(c * ht + y) * w + x] = v / static_cast<double>(maxval);
      }
    }
  }
  return out;
}

}  // namespace

Tensor load_image(const std::string& path, std::size_t record) {
  const auto bytes = read_file(path);
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6')) {
    return load_pnm(path, bytes);
  }
  if (!bytes.empty() && bytes.size() % kCifarRecordBytes == 0) {
    const std::size_t n = bytes.size() / kCifarRecordBytes;
    if (record >= n) {
      throw UsageError(fmt::format("{}: record {} out of range ({} records)", path, record, n));
    }
    const auto one = std::span(bytes).subspan(record * kCifarRecordBytes, kCifarRecordBytes);
    Dataset ds = decode_cifar10(one);
    return ds.inputs;
  }
  throw DataError(path + ": not a P5/P6 image or CIFAR-10 batch");
}

std::vector<std::uint8_t> encode_pgm(std::span<const std::uint8_t> pixels, std::size_t width,
                                     std::size_t height) {
  if (pixels.size() != width * height) throw UsageError("encode_pgm: pixel count does not match size");
  const std::string header = fmt::format("P5\n{} {}\n255\n", width, height);
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), pixels.begin(), pixels.end());
  return out;
}

std::vector<std::uint8_t> normalize_channel(std::span<const double> values) {
  std::vector<std::uint8_t> out(values.size(), 128);
  if (values.empty()) return out;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double range = *hi - *lo;
  if (!(range > 0.0) || !std::isfinite(range)) return out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(std::lround(255.0 * (values[i] - *lo) / range));
  }
  return out;
}

std::vector<std::string> export_feature_maps(const Network& net, const Tensor& image,
                                             const std::vector<std::size_t>& layers,
                                             const std::string& out_dir) {
  for (std::size_t k : layers) {
    if (k >= net.layers().size() || net.layers()[k].kind != LayerKind::kConv2d) {
      throw UsageError(fmt::format("layer {} is not a Conv2d layer", k));
    }
  }
  if (image.rank() != 4 || image.dim(0) != 1) {
    throw ShapeError("export_feature_maps: image must be (1, C, H, W), got " +
                     shape_string(image.shape()));
  }
  Network probe = net;
  probe.forward(image);
  fs::create_directories(out_dir);
  std::vector<std::string> written;
  for (std::size_t k : layers) {
    const Tensor& a = probe.cached_activation(k);
    const std::size_t channels = a.dim(1), h = a.dim(2), w = a.dim(3);
    for (std::size_t c = 0; c < channels; ++c) {
      const auto plane = a.data().subspan(c * h * w, h * w);
      const auto path = (fs::path(out_dir) / fmt::format("layer{:02}_ch{:03}.pgm", k, c)).string();
      write_file(path, encode_pgm(normalize_channel(plane), w, h));
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace oscnet
