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

#include "oscnet/datasets.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <iterator>

#include "oscnet/error.hpp"
#include "oscnet/xor_lab.hpp"

namespace oscnet {

namespace {

std::uint32_t be32(std::span<const std::uint8_t> b, std::size_t at) {
  return (std::uint32_t{b[at]} << 24) | (std::uint32_t{b[at + 1]} << 16) |
         (std::uint32_t{b[at + 2]} << 8) | std::uint32_t{b[at + 3]};
}

void put_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

}  // namespace

Tensor Dataset::gather(std::span<const std::size_t> indices) const {
  Shape shape = inputs.shape();
  const std::size_t row = shape_volume(shape) / std::max<std::size_t>(shape[0], 1);
  shape[0] = indices.size();
  Tensor out(shape);
  auto dst = out.data();
  const auto src = inputs.data();
  for (std::size_t i = 0; i < indices.size(); ++i) {
    std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(indices[i] * row), row,
                dst.begin() + static_cast<std::ptrdiff_t>(i * row));
  }
  return out;
}

Dataset decode_cifar10(std::span<const std::uint8_t> bytes, std::size_t limit) {
  if (bytes.size() % kCifarRecordBytes != 0) {
    throw DataError(fmt::format("cifar10: truncated file, {} bytes is not a multiple of {}",
                                bytes.size(), kCifarRecordBytes));
  }
  const std::size_t n = std::min(bytes.size() / kCifarRecordBytes, limit);
  Dataset ds;
  ds.num_classes = 10;
  ds.inputs = Tensor({n, 3, 32, 32});
  ds.labels.resize(n);
  auto px = ds.inputs.data();
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t base = r * kCifarRecordBytes;
    const std::uint8_t label = bytes[base];
    if (label > 9) {
      throw DataError(fmt::format("cifar10: record {} has label {} outside 0-9", r, label));
    }
    ds.labels[r] = label;
    for (std::size_t p = 0; p < kCifarPixels; ++p) {
      px[r * kCifarPixels + p] = static_cast<double>(bytes[base + 1 + p]) / 255.0;
    }
  }
  return ds;
}

Dataset load_cifar10_binary(const std::string& path, std::size_t limit) {
  const auto bytes = read_file(path);
  try {
    return decode_cifar10(bytes, limit);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

Dataset load_cifar10_files(const std::vector<std::string>& paths, std::size_t limit) {
  if (paths.empty()) throw DataError("cifar10: no input files");
  std::vector<Dataset> parts;
  std::size_t total = 0;
  for (const auto& p : paths) {
    if (total >= limit) break;
    parts.push_back(load_cifar10_binary(p, limit - total));
    total += parts.back().size();
  }
  Dataset ds;
  ds.num_classes = 10;
  ds.inputs = Tensor({total, 3, 32, 32});
  auto dst = ds.inputs.data().begin();
  for (const auto& part : parts) {
    dst = std::copy(part.inputs.data().begin(), part.inputs.data().end(), dst);
    ds.labels.insert(ds.labels.end(), part.labels.begin(), part.labels.end());
  }
  return ds;
}

std::vector<std::uint8_t> encode_cifar10(std::span<const std::uint8_t> pixels,
                                         std::span<const std::uint8_t> labels) {
  if (pixels.size() != labels.size() * kCifarPixels) {
    throw UsageError("encode_cifar10: pixel count does not match label count");
  }
  std::vector<std::uint8_t> out;
  out.reserve(labels.size() * kCifarRecordBytes);
  for (std::size_t r = 0; r < labels.size(); ++r) {
    out.push_back(labels[r]);
    const auto rec = pixels.subspan(r * kCifarPixels, kCifarPixels);
    out.insert(out.end(), rec.begin(), rec.end());
  }
  return out;
}

Dataset load_idx(const std::string& images_path, const std::string& labels_path,
                 std::size_t limit) {
  const auto img = read_file(images_path);
  const auto lab = read_file(labels_path);
  if (img.size() < 16 || be32(img, 0) != 0x00000803) {
    throw DataError(images_path + ": not an IDX image file (magic 0x00000803)");
  }
  if (lab.size() < 8 || be32(lab, 0) != 0x00000801) {
    throw DataError(labels_path + ": not an IDX label file (magic 0x00000801)");
  }
  const std::size_t count = be32(img, 4), rows = be32(img, 8), cols = be32(img, 12);
  if (img.size() != 16 + count * rows * cols) {
    throw DataError(images_path + ": truncated IDX image file");
  }
  if (be32(lab, 4) != count || lab.size() != 8 + count) {
    throw DataError(labels_path + ": label count does not match images");
  }
  const std::size_t n = std::min(count, limit);
  Dataset ds;
  ds.num_classes = 10;
  ds.inputs = Tensor({n, 1, rows, cols});
  ds.labels.resize(n);
  auto px = ds.inputs.data();
  for (std::size_t i = 0; i < n * rows * cols; ++i) px[i] = img[16 + i] / 255.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (lab[8 + i] > 9) {
      throw DataError(fmt::format("{}: label {} outside 0-9", labels_path, lab[8 + i]));
    }
    ds.labels[i] = lab[8 + i];
  }
  return ds;
}

std::vector<std::uint8_t> encode_idx_images(std::span<const std::uint8_t> pixels, std::uint32_t count,
                                            std::uint32_t rows, std::uint32_t cols) {
  if (pixels.size() != std::size_t{count} * rows * cols) {
    throw UsageError("encode_idx_images: pixel count does not match dims");
  }
  std::vector<std::uint8_t> out;
  put_be32(out, 0x00000803);
  put_be32(out, count);
  put_be32(out, rows);
  put_be32(out, cols);
  out.insert(out.end(), pixels.begin(), pixels.end());
  return out;
}

std::vector<std::uint8_t> encode_idx_labels(std::span<const std::uint8_t> labels) {
  std::vector<std::uint8_t> out;
  put_be32(out, 0x00000801);
  put_be32(out, static_cast<std::uint32_t>(labels.size()));
  out.insert(out.end(), labels.begin(), labels.end());
  return out;
}

Dataset xor_dataset() {
  Dataset ds;
  ds.num_classes = 2;
  ds.inputs = Tensor({kXorDataset.size(), 2});
  for (std::size_t i = 0; i < kXorDataset.size(); ++i) {
    ds.inputs.at(i, 0) = kXorDataset[i].x[0];
    ds.inputs.at(i, 1) = kXorDataset[i].x[1];
    ds.labels.push_back(kXorDataset[i].label);
  }
  return ds;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("failed writing " + path);
}

void write_text(const std::string& path, const std::string& text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace oscnet
