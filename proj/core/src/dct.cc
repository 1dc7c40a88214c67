// Copyright 2026 The gvc-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gvc/dct.h"

#include <cmath>
#include <numbers>

namespace gvc {

namespace {

// basis[k * n + i] = c(k) cos(pi (2i + 1) k / 2n)
std::vector<double> dct_basis(std::size_t n) {
  std::vector<double> basis(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    const double scale = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (std::size_t i = 0; i < n; ++i) {
      basis[k * n + i] =
          scale * std::cos(std::numbers::pi * (2.0 * i + 1.0) * k / (2.0 * n));
    }
  }
  return basis;
}

const std::vector<double>& basis8() {
  static const std::vector<double> basis = dct_basis(8);
  return basis;
}

}  // namespace

Block8x8 dct2d_forward(const Block8x8& block) {
  const auto& b = basis8();
  Block8x8 rows{};
  for (std::size_t y = 0; y < 8; ++y) {
    for (std::size_t k = 0; k < 8; ++k) {
      double acc = 0.0;
      for (std::size_t x = 0; x < 8; ++x) acc += b[k * 8 + x] * block[y * 8 + x];
      rows[y * 8 + k] = acc;
    }
  }
  Block8x8 out{};
  for (std::size_t k = 0; k < 8; ++k) {
    for (std::size_t u = 0; u < 8; ++u) {
      double acc = 0.0;
      for (std::size_t y = 0; y < 8; ++y) acc += b[k * 8 + y] * rows[y * 8 + u];
      out[k * 8 + u] = acc;
    }
  }
  return out;
}

Block8x8 dct2d_inverse(const Block8x8& coefficients) {
  const auto& b = basis8();
  Block8x8 cols{};
  for (std::size_t y = 0; y < 8; ++y) {
    for (std::size_t u = 0; u < 8; ++u) {
      double acc = 0.0;
      for (std::size_t k = 0; k < 8; ++k) {
        acc += b[k * 8 + y] * coefficients[k * 8 + u];
      }
      cols[y * 8 + u] = acc;
    }
  }
  Block8x8 out{};
  for (std::size_t y = 0; y < 8; ++y) {
    for (std::size_t x = 0; x < 8; ++x) {
      double acc = 0.0;
      for (std::size_t u = 0; u < 8; ++u) acc += b[u * 8 + x] * cols[y * 8 + u];
      out[y * 8 + x] = acc;
    }
  }
  return out;
}

std::vector<double> dct2d_forward(std::span<const double> data, std::size_t rows,
                                  std::size_t cols) {
  const auto row_basis = dct_basis(cols);
  const auto col_basis = dct_basis(rows);
  std::vector<double> tmp(rows * cols);
  for (std::size_t y = 0; y < rows; ++y) {
    for (std::size_t k = 0; k < cols; ++k) {
      double acc = 0.0;
      for (std::size_t x = 0; x < cols; ++x) {
        acc += row_basis[k * cols + x] * data[y * cols + x];
      }
      tmp[y * cols + k] = acc;
    }
  }
  std::vector<double> out(rows * cols);
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t u = 0; u < cols; ++u) {
      double acc = 0.0;
      for (std::size_t y = 0; y < rows; ++y) {
        acc += col_basis[k * rows + y] * tmp[y * cols + u];
      }
      out[k * cols + u] = acc;
    }
  }
  return out;
}

std::vector<std::size_t> zigzag_order(std::size_t rows, std::size_t cols) {
  std::vector<std::size_t> order;
  order.reserve(rows * cols);
  if (rows == 0 || cols == 0) return order;
  for (std::size_t d = 0; d + 1 < rows + cols; ++d) {
    // Alternate direction on each anti-diagonal.
    if (d % 2 == 0) {
      std::size_t r = std::min(d, rows - 1);
      for (;;) {
        const std::size_t c = d - r;
        if (c >= cols) break;
        order.push_back(r * cols + c);
        if (r == 0) break;
        --r;
      }
    } else {
      std::size_t c = std::min(d, cols - 1);
      for (;;) {
        const std::size_t r = d - c;
        if (r >= rows) break;
        order.push_back(r * cols + c);
        if (c == 0) break;
        --c;
      }
    }
  }
  return order;
}

}  // namespace gvc
