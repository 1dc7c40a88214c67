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

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace gvc {

using Block8x8 = std::array<double, 64>;

// Orthonormal type-II DCT of a row-major 8x8 block.
Block8x8 dct2d_forward(const Block8x8& block);
Block8x8 dct2d_inverse(const Block8x8& coefficients);

// Orthonormal 2D DCT-II of an arbitrary rows x cols row-major array.
std::vector<double> dct2d_forward(std::span<const double> data, std::size_t rows,
                                  std::size_t cols);

// Diagonal zig-zag scan order of a rows x cols array, as flat indices.
std::vector<std::size_t> zigzag_order(std::size_t rows, std::size_t cols);

}  // namespace gvc
