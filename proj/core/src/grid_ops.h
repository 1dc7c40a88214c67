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

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gvc::detail {

inline std::uint32_t ceil_div(std::uint32_t a, std::uint32_t b) {
  return (a + b - 1) / b;
}

// Footprint of latent cell (row, col) in pixel coordinates, clipped to the
// frame.
struct Cell {
  std::uint32_t x0, x1, y0, y1;
  std::size_t pixels() const { return std::size_t{x1 - x0} * (y1 - y0); }
};

inline Cell cell_bounds(std::uint32_t row, std::uint32_t col,
                        std::uint32_t stride, std::uint32_t width,
                        std::uint32_t height) {
  return Cell{col * stride, std::min(width, (col + 1) * stride), row * stride,
              std::min(height, (row + 1) * stride)};
}

template <typename T>
std::vector<double> box_average(std::span<const T> data, std::uint32_t width,
                                std::uint32_t height, std::uint32_t stride) {
  const std::uint32_t rows = ceil_div(height, stride);
  const std::uint32_t cols = ceil_div(width, stride);
  std::vector<double> sums(std::size_t{rows} * cols, 0.0);
  for (std::uint32_t y = 0; y < height; ++y) {
    const std::size_t row_base = std::size_t{y / stride} * cols;
    const T* line = data.data() + std::size_t{y} * width;
    for (std::uint32_t x = 0; x < width; ++x) {
      sums[row_base + x / stride] += static_cast<double>(line[x]);
    }
  }
  for (std::uint32_t r = 0; r < rows; ++r) {
    for (std::uint32_t c = 0; c < cols; ++c) {
      sums[std::size_t{r} * cols + c] /=
          static_cast<double>(cell_bounds(r, c, stride, width, height).pixels());
    }
  }
  return sums;
}

}  // namespace gvc::detail
