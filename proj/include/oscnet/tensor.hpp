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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "oscnet/rng.hpp"

namespace oscnet {

using Shape = std::vector<std::size_t>;

std::string shape_string(const Shape& shape);
std::size_t shape_volume(const Shape& shape);

/// Dense row-major array of binary64 values. Four-dimensional image tensors
/// use NCHW order (batch, channel, row, column), so element (n, c, h, w)
/// lives at ((n * C + c) * H + h) * W + w.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape, double fill = 0.0);
  // Throws ShapeError unless volume(shape) == data.size().
  Tensor(Shape shape, std::vector<double> data);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t rank() const noexcept { return shape_.size(); }
  std::size_t dim(std::size_t axis) const { return shape_.at(axis); }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }
  const std::vector<double>& values() const noexcept { return data_; }

  double operator[](std::size_t i) const noexcept { return data_[i]; }
  double& operator[](std::size_t i) noexcept { return data_[i]; }

  // Rank-2 element access.
  double at(std::size_t r, std::size_t c) const { return data_[r * shape_[1] + c]; }
  double& at(std::size_t r, std::size_t c) { return data_[r * shape_[1] + c]; }

  // Same data under a new shape of equal volume.
  Tensor reshaped(Shape shape) const;

  bool all_finite() const noexcept;

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  Shape shape_;
  std::vector<double> data_;
};

Tensor identity(std::size_t n);

// (m x k) * (k x n). Throws ShapeError naming both shapes.
Tensor matmul(const Tensor& a, const Tensor& b);
// a * b^T for a (m x k), b (n x k).
Tensor matmul_bt(const Tensor& a, const Tensor& b);
// a^T * b for a (k x m), b (k x n).
Tensor matmul_at(const Tensor& a, const Tensor& b);

// Output spatial size of a sliding window; throws ShapeError when it would be
// zero or negative.
std::size_t window_output_size(std::size_t in, std::size_t window,
                               std::size_t stride, std::size_t padding);

/// Cross-correlation of an NCHW input with OCKK kernels, zero padded. No
/// kernel flip and no bias.
Tensor conv2d(const Tensor& input, const Tensor& kernels, std::size_t stride,
              std::size_t padding);

struct Conv2dGradients {
  Tensor input;
  Tensor kernels;
};

// Gradients of sum(grad_output * conv2d(input, kernels)) with respect to the
// input and the kernels.
Conv2dGradients conv2d_backward(const Tensor& input, const Tensor& kernels,
                                const Tensor& grad_output, std::size_t stride,
                                std::size_t padding);

struct PoolResult {
  Tensor output;
  // Flat input index of the winning element for every output element. Ties
  // go to the first element in row-major window order.
  std::vector<std::size_t> argmax;
};

PoolResult maxpool2d(const Tensor& input, std::size_t window, std::size_t stride);

// Routes grad_output back through the argmax table into a zero tensor of the
// given input shape.
Tensor maxpool2d_backward(const Tensor& grad_output,
                          std::span<const std::size_t> argmax,
                          const Shape& input_shape);

template <class F>
Tensor map(const Tensor& input, F&& f) {
  std::vector<double> out(input.size());
  const auto in = input.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(in[i]);
  return Tensor(input.shape(), std::move(out));
}

// i.i.d. values in [lo, hi), drawn in row-major order. Throws UsageError
// unless lo < hi.
Tensor uniform(Rng& rng, Shape shape, double lo, double hi);

}  // namespace oscnet
