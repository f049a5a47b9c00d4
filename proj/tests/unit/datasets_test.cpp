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

#include <gtest/gtest.h>

#include <filesystem>

#include "oscnet/datasets.hpp"
#include "oscnet/error.hpp"
#include "oscnet/rng.hpp"

namespace oscnet {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "oscnet_datasets_test";
  fs::create_directories(dir);
  return dir / name;
}

// Two records: label 3 with pixel i = i % 256, label 9 with pixel i = 255 - i % 256.
std::vector<std::uint8_t> two_record_fixture() {
  std::vector<std::uint8_t> bytes;
  bytes.push_back(3);
  for (std::size_t i = 0; i < kCifarPixels; ++i) bytes.push_back(static_cast<std::uint8_t>(i % 256));
  bytes.push_back(9);
  for (std::size_t i = 0; i < kCifarPixels; ++i) bytes.push_back(static_cast<std::uint8_t>(255 - i % 256));
  return bytes;
}

TEST(Cifar, HandBuiltFixture) {
  const Dataset ds = decode_cifar10(two_record_fixture());
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds.inputs.shape(), (Shape{2, 3, 32, 32}));
  EXPECT_EQ(ds.labels, (std::vector<int>{3, 9}));
  EXPECT_EQ(ds.num_classes, 10u);
  // red plane first, then green at offset 1024
  EXPECT_EQ(ds.inputs[0], 0.0);
  EXPECT_EQ(ds.inputs[255], 1.0);
  EXPECT_EQ(ds.inputs[1024 + 1], 1.0 / 255.0);
  EXPECT_EQ(ds.inputs[kCifarPixels], 1.0);
  EXPECT_EQ(ds.inputs[kCifarPixels + 2], 253.0 / 255.0);
}

TEST(Cifar, LimitAndErrors) {
  const auto bytes = two_record_fixture();
  EXPECT_EQ(decode_cifar10(bytes, 1).size(), 1u);
  EXPECT_EQ(decode_cifar10(bytes, 1000).size(), 2u);
  EXPECT_THROW(decode_cifar10(std::vector<std::uint8_t>(bytes.begin(), bytes.end() - 1)), DataError);
  auto bad = bytes;
  bad[kCifarRecordBytes] = 10;
  EXPECT_THROW(decode_cifar10(bad), DataError);
  EXPECT_THROW(load_cifar10_binary("/nonexistent/batch.bin"), DataError);
}

TEST(Cifar, EncodeDecodeRoundTrip) {
  Rng rng(4);
  const std::size_t n = 17;
  std::vector<std::uint8_t> pixels(n * kCifarPixels), labels(n);
  for (auto& p : pixels) p = static_cast<std::uint8_t>(rng.index(256));
  for (auto& l : labels) l = static_cast<std::uint8_t>(rng.index(10));
  const Dataset ds = decode_cifar10(encode_cifar10(pixels, labels));
  ASSERT_EQ(ds.size(), n);
  for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(ds.labels[i], labels[i]);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    ASSERT_EQ(static_cast<std::uint8_t>(std::lround(ds.inputs[i] * 255.0)), pixels[i]);
  }
}

TEST(Cifar, MultipleFilesRespectLimit) {
  const auto bytes = two_record_fixture();
  const auto a = scratch("a.bin"), b = scratch("b.bin");
  write_file(a.string(), bytes);
  write_file(b.string(), bytes);
  EXPECT_EQ(load_cifar10_files({a.string(), b.string()}).size(), 4u);
  const Dataset three = load_cifar10_files({a.string(), b.string()}, 3);
  EXPECT_EQ(three.labels, (std::vector<int>{3, 9, 3}));
  EXPECT_EQ(three.inputs.dim(0), 3u);
}

TEST(Idx, RoundTripAndErrors) {
  const std::vector<std::uint8_t> px{0, 255, 128, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  const std::vector<std::uint8_t> lab{7, 2, 0};
  const auto ip = scratch("img.idx"), lp = scratch("lab.idx");
  write_file(ip.string(), encode_idx_images(px, 3, 2, 2));
  write_file(lp.string(), encode_idx_labels(lab));
  const Dataset ds = load_idx(ip.string(), lp.string());
  EXPECT_EQ(ds.inputs.shape(), (Shape{3, 1, 2, 2}));
  EXPECT_EQ(ds.labels, (std::vector<int>{7, 2, 0}));
  EXPECT_EQ(ds.inputs[1], 1.0);
  EXPECT_EQ(load_idx(ip.string(), lp.string(), 2).size(), 2u);
  write_file(lp.string(), encode_idx_labels(std::vector<std::uint8_t>{1, 2}));
  EXPECT_THROW(load_idx(ip.string(), lp.string()), DataError);
  EXPECT_THROW(load_idx(lp.string(), ip.string()), DataError);
  EXPECT_THROW(encode_idx_images(px, 4, 2, 2), UsageError);
}

TEST(Dataset, GatherAndXor) {
  const Dataset x = xor_dataset();
  EXPECT_EQ(x.inputs.shape(), (Shape{4, 2}));
  EXPECT_EQ(x.labels, (std::vector<int>{-1, 1, 1, -1}));
  const std::vector<std::size_t> idx{3, 0};
  const Tensor g = x.gather(idx);
  EXPECT_EQ(g.values(), (std::vector<double>{1, 1, -1, -1}));
}

}  // namespace
}  // namespace oscnet
