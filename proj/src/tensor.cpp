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

#include "oscnet/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "oscnet/error.hpp"

namespace oscnet {

namespace {

// C (m x n) += A (m x k) * B (k x n), all row-major and contiguous.
void gemm_accumulate(const double* a, const double* b, double* c,
                     std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    const double* arow = a + i * k;
    for (std::size_t p = 0; p < k; ++p) {
      const double av = arow[p];
      if (av == 0.0) continue;
      const double* brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

// Row-major transpose of a (rows x cols) block.
std::vector<double> transposed(const double* x, std::size_t rows, std::size_t cols) {
  std::vector<double> t(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t q = 0; q < cols; ++q) t[q * rows + r] = x[r * cols + q];
  }
  return t;
}

// C (m x n) += A (m x k) * B^T, B stored (n x k).
void gemm_bt_accumulate(const double* a, const double* b, double* c,
                        std::size_t m, std::size_t k, std::size_t n) {
  gemm_accumulate(a, transposed(b, n, k).data(), c, m, k, n);
}

// C (m x n) += A^T * B, A stored (k x m), B (k x n).
void gemm_at_accumulate(const double* a, const double* b, double* c,
                        std::size_t m, std::size_t k, std::size_t n) {
  gemm_accumulate(transposed(a, k, m).data(), b, c, m, k, n);
}

void require_rank(const Tensor& t, std::size_t rank, const char* what) {
  if (t.rank() != rank) {
    std::ostringstream os;
    os << what << ": expected rank " << rank << ", got shape "
       << shape_string(t.shape());
    throw ShapeError(os.str());
  }
}

[[noreturn]] void mismatch(const char* what, const Shape& a, const Shape& b) {
  std::ostringstream os;
  os << what << ": shape mismatch " << shape_string(a) << " vs "
     << shape_string(b);
  throw ShapeError(os.str());
}

struct ConvGeometry {
  std::size_t batch, channels, height, width;
  std::size_t out_channels, kernel, out_height, out_width;
  std::size_t stride, padding;

  std::size_t patch() const { return channels * kernel * kernel; }
  std::size_t out_plane() const { return out_height * out_width; }
};

ConvGeometry conv_geometry(const Tensor& input, const Tensor& kernels,
                           std::size_t stride, std::size_t padding) {
  require_rank(input, 4, "conv2d input");
  require_rank(kernels, 4, "conv2d kernels");
  if (stride == 0) throw UsageError("conv2d: stride must be positive");
  if (kernels.dim(1) != input.dim(1) || kernels.dim(2) != kernels.dim(3)) {
    mismatch("conv2d", input.shape(), kernels.shape());
  }
  ConvGeometry g{};
  g.batch = input.dim(0);
  g.channels = input.dim(1);
  g.height = input.dim(2);
  g.width = input.dim(3);
  g.out_channels = kernels.dim(0);
  g.kernel = kernels.dim(2);
  g.stride = stride;
  g.padding = padding;
  g.out_height = window_output_size(g.height, g.kernel, stride, padding);
  g.out_width = window_output_size(g.width, g.kernel, stride, padding);
  return g;
}

// Columns matrix (C*K*K) x (Ho*Wo) for one sample.
void im2col(const double* image, const ConvGeometry& g, double* cols) {
  const std::size_t plane = g.out_plane();
  for (std::size_t c = 0; c < g.channels; ++c) {
    for (std::size_t ky = 0; ky < g.kernel; ++ky) {
      for (std::size_t kx = 0; kx < g.kernel; ++kx) {
        double* row = cols + ((c * g.kernel + ky) * g.kernel + kx) * plane;
        for (std::size_t oy = 0; oy < g.out_height; ++oy) {
          const auto iy = static_cast<std::ptrdiff_t>(oy * g.stride + ky) -
                          static_cast<std::ptrdiff_t>(g.padding);
          for (std::size_t ox = 0; ox < g.out_width; ++ox) {
            const auto ix = static_cast<std::ptrdiff_t>(ox * g.stride + kx) -
                            static_cast<std::ptrdiff_t>(g.padding);
            const bool inside = iy >= 0 && ix >= 0 &&
                                iy < static_cast<std::ptrdiff_t>(g.height) &&
                                ix < static_cast<std::ptrdiff_t>(g.width);
            row[oy * g.out_width + ox] =
                inside ? image[(c * g.height + iy) * g.width + ix] : 0.0;
          }
        }
      }
    }
  }
}

void col2im_accumulate(const double* cols, const ConvGeometry& g, double* image) {
  const std::size_t plane = g.out_plane();
  for (std::size_t c = 0; c < g.channels; ++c) {
    for (std::size_t ky = 0; ky < g.kernel; ++ky) {
      for (std::size_t kx = 0; kx < g.kernel; ++kx) {
        const double* row = cols + ((c * g.kernel + ky) * g.kernel + kx) * plane;
        for (std::size_t oy = 0; oy < g.out_height; ++oy) {
          const auto iy = static_cast<std::ptrdiff_t>(oy * g.stride + ky) -
                          static_cast<std::ptrdiff_t>(g.padding);
          if (iy < 0 || iy >= static_cast<std::ptrdiff_t>(g.height)) continue;
          for (std::size_t ox = 0; ox < g.out_width; ++ox) {
            const auto ix = static_cast<std::ptrdiff_t>(ox * g.stride + kx) -
                            static_cast<std::ptrdiff_t>(g.padding);
            if (ix < 0 || ix >= static_cast<std::ptrdiff_t>(g.width)) continue;
            image[(c * g.height + iy) * g.width + ix] += row[oy * g.out_width + ox];
          }
        }
      }
    }
  }
}

}  // namespace

std::string shape_string(const Shape& shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << 'x';
    os << shape[i];
  }
  os << ']';
  return os.str();
}

std::size_t shape_volume(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}

Tensor::Tensor(Shape shape, double fill)
    : shape_(std::move(shape)), data_(shape_volume(shape_), fill) {}

Tensor::Tensor(Shape shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (shape_volume(shape_) != data_.size()) {
    std::ostringstream os;
    os << "tensor: shape " << shape_string(shape_) << " needs "
       << shape_volume(shape_) << " values, got " << data_.size();
    throw ShapeError(os.str());
  }
}

Tensor Tensor::reshaped(Shape shape) const {
  if (shape_volume(shape) != data_.size()) {
    mismatch("reshape", shape_, shape);
  }
  return Tensor(std::move(shape), data_);
}

bool Tensor::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

Tensor identity(std::size_t n) {
  Tensor t({n, n});
  for (std::size_t i = 0; i < n; ++i) t.at(i, i) = 1.0;
  return t;
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  require_rank(a, 2, "matmul lhs");
  require_rank(b, 2, "matmul rhs");
  if (a.dim(1) != b.dim(0)) mismatch("matmul", a.shape(), b.shape());
  Tensor c({a.dim(0), b.dim(1)});
  gemm_accumulate(a.data().data(), b.data().data(), c.data().data(), a.dim(0),
                  a.dim(1), b.dim(1));
  return c;
}

Tensor matmul_bt(const Tensor& a, const Tensor& b) {
  require_rank(a, 2, "matmul_bt lhs");
  require_rank(b, 2, "matmul_bt rhs");
  if (a.dim(1) != b.dim(1)) mismatch("matmul_bt", a.shape(), b.shape());
  Tensor c({a.dim(0), b.dim(0)});
  gemm_bt_accumulate(a.data().data(), b.data().data(), c.data().data(),
                     a.dim(0), a.dim(1), b.dim(0));
  return c;
}

Tensor matmul_at(const Tensor& a, const Tensor& b) {
  require_rank(a, 2, "matmul_at lhs");
  require_rank(b, 2, "matmul_at rhs");
  if (a.dim(0) != b.dim(0)) mismatch("matmul_at", a.shape(), b.shape());
  Tensor c({a.dim(1), b.dim(1)});
  gemm_at_accumulate(a.data().data(), b.data().data(), c.data().data(),
                     a.dim(1), a.dim(0), b.dim(1));
  return c;
}

std::size_t window_output_size(std::size_t in, std::size_t window,
                               std::size_t stride, std::size_t padding) {
  if (stride == 0 || window == 0) {
    throw UsageError("window and stride must be positive");
  }
  const std::size_t padded = in + 2 * padding;
  if (padded < window) {
    std::ostringstream os;
    os << "non-positive output dimension: input " << in << " padding "
       << padding << " window " << window;
    throw ShapeError(os.str());
  }
  return (padded - window) / stride + 1;
}

Tensor conv2d(const Tensor& input, const Tensor& kernels, std::size_t stride,
              std::size_t padding) {
  const ConvGeometry g = conv_geometry(input, kernels, stride, padding);
  Tensor out({g.batch, g.out_channels, g.out_height, g.out_width});
  std::vector<double> cols(g.patch() * g.out_plane());
  const std::size_t in_sample = g.channels * g.height * g.width;
  const std::size_t out_sample = g.out_channels * g.out_plane();
  for (std::size_t n = 0; n < g.batch; ++n) {
    im2col(input.data().data() + n * in_sample, g, cols.data());
    gemm_accumulate(kernels.data().data(), cols.data(),
                    out.data().data() + n * out_sample, g.out_channels,
                    g.patch(), g.out_plane());
  }
  return out;
}

Conv2dGradients conv2d_backward(const Tensor& input, const Tensor& kernels,
                                const Tensor& grad_output, std::size_t stride,
                                std::size_t padding) {
  const ConvGeometry g = conv_geometry(input, kernels, stride, padding);
  const Shape expected{g.batch, g.out_channels, g.out_height, g.out_width};
  if (grad_output.shape() != expected) {
    mismatch("conv2d_backward", grad_output.shape(), expected);
  }
  Conv2dGradients grads{Tensor(input.shape()), Tensor(kernels.shape())};
  std::vector<double> cols(g.patch() * g.out_plane());
  std::vector<double> dcols(cols.size());
  const std::size_t in_sample = g.channels * g.height * g.width;
  const std::size_t out_sample = g.out_channels * g.out_plane();
  for (std::size_t n = 0; n < g.batch; ++n) {
    const double* dout = grad_output.data().data() + n * out_sample;
    im2col(input.data().data() + n * in_sample, g, cols.data());
    // dK (O x CKK) += dOut (O x P) * cols^T (P x CKK)
    gemm_bt_accumulate(dout, cols.data(), grads.kernels.data().data(),
                       g.out_channels, g.out_plane(), g.patch());
    // dcols (CKK x P) = K^T (CKK x O) * dOut (O x P)
    std::fill(dcols.begin(), dcols.end(), 0.0);
    gemm_at_accumulate(kernels.data().data(), dout, dcols.data(), g.patch(),
                       g.out_channels, g.out_plane());
    col2im_accumulate(dcols.data(), g, grads.input.data().data() + n * in_sample);
  }
  return grads;
}

PoolResult maxpool2d(const Tensor& input, std::size_t window, std::size_t stride) {
  require_rank(input, 4, "maxpool2d input");
  const std::size_t batch = input.dim(0), channels = input.dim(1);
  const std::size_t height = input.dim(2), width = input.dim(3);
  const std::size_t oh = window_output_size(height, window, stride, 0);
  const std::size_t ow = window_output_size(width, window, stride, 0);
  PoolResult result{Tensor({batch, channels, oh, ow}), {}};
  result.argmax.resize(result.output.size());
  const auto in = input.data();
  auto out = result.output.data();
  std::size_t o = 0;
  for (std::size_t plane = 0; plane < batch * channels; ++plane) {
    const std::size_t base = plane * height * width;
    for (std::size_t oy = 0; oy < oh; ++oy) {
      for (std::size_t ox = 0; ox < ow; ++ox, ++o) {
        std::size_t best = base + (oy * stride) * width + ox * stride;
        for (std::size_t ky = 0; ky < window; ++ky) {
          for (std::size_t kx = 0; kx < window; ++kx) {
            const std::size_t idx =
                base + (oy * stride + ky) * width + ox * stride + kx;
            if (in[idx] > in[best] || (std::isnan(in[idx]) && !std::isnan(in[best]))) best = idx;
          }
        }
        out[o] = in[best];
        result.argmax[o] = best;
      }
    }
  }
  return result;
}

Tensor maxpool2d_backward(const Tensor& grad_output,
                          std::span<const std::size_t> argmax,
                          const Shape& input_shape) {
  if (argmax.size() != grad_output.size()) {
    throw ShapeError("maxpool2d_backward: argmax table does not match gradient");
  }
  Tensor grad_input(input_shape);
  auto gi = grad_input.data();
  const auto go = grad_output.data();
  for (std::size_t i = 0; i < argmax.size(); ++i) {
    if (argmax[i] >= gi.size()) {
      throw ShapeError("maxpool2d_backward: argmax index out of range");
    }
    gi[argmax[i]] += go[i];
  }
  return grad_input;
}

Tensor uniform(Rng& rng, Shape shape, double lo, double hi) {
  if (!(lo < hi)) {
    std::ostringstream os;
    os << "uniform: invalid range [" << lo << ", " << hi << ")";
    throw UsageError(os.str());
  }
  Tensor t(std::move(shape));
  for (double& v : t.data()) v = rng.uniform(lo, hi);
  return t;
}

}  // namespace oscnet
