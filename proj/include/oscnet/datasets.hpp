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
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "oscnet/tensor.hpp"

namespace oscnet {

// Images (N, C, H, W) in [0, 1] with integer labels, or for the XOR set
// inputs (4, 2) with labels -1/1.
struct Dataset {
  Tensor inputs;
  std::vector<int> labels;
  std::size_t num_classes = 0;

  std::size_t size() const noexcept { return labels.size(); }
  // Rows picked by `indices`, in that order.
  Tensor gather(std::span<const std::size_t> indices) const;
};

inline constexpr std::size_t kCifarRecordBytes = 3073;
inline constexpr std::size_t kCifarPixels = 3 * 32 * 32;
inline constexpr std::size_t kNoLimit = std::numeric_limits<std::size_t>::max();

/// CIFAR-10 binary batches: 3073-byte records of one label byte (0-9) then
/// 1024 red, 1024 green and 1024 blue bytes in row-major order. Decodes the
/// first `limit` records with pixel p mapped to p / 255. Throws DataError
/// when the length is not a multiple of 3073 or a label exceeds 9.
Dataset decode_cifar10(std::span<const std::uint8_t> bytes, std::size_t limit = kNoLimit);
Dataset load_cifar10_binary(const std::string& path, std::size_t limit = kNoLimit);
// Concatenation of several batch files, stopping once `limit` records are read.
Dataset load_cifar10_files(const std::vector<std::string>& paths, std::size_t limit = kNoLimit);
// Inverse of decode_cifar10 for pixel bytes and labels.
std::vector<std::uint8_t> encode_cifar10(std::span<const std::uint8_t> pixels,
                                         std::span<const std::uint8_t> labels);

/// IDX files (big-endian): images with magic 0x00000803 and dims N, H, W;
/// labels with magic 0x00000801 and dim N. Images load as (N, 1, H, W) / 255.
Dataset load_idx(const std::string& images_path, const std::string& labels_path,
                 std::size_t limit = kNoLimit);
std::vector<std::uint8_t> encode_idx_images(std::span<const std::uint8_t> pixels, std::uint32_t count,
                                            std::uint32_t rows, std::uint32_t cols);
std::vector<std::uint8_t> encode_idx_labels(std::span<const std::uint8_t> labels);

Dataset xor_dataset();

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);
void write_text(const std::string& path, const std::string& text);

}  // namespace oscnet
