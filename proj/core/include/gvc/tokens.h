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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "gvc/video.h"

namespace gvc {

// The knob bundle placing a run on the rate / computation / quality
// triangle. Coarser quantization and larger strides lower the rate; more
// refinement iterations spend decoder compute to win quality back.
struct OperatingPoint {
  double quant_step = 48.0;
  std::uint32_t spatial_stride = 16;
  std::uint32_t temporal_stride = 4;
  std::uint32_t descriptor_len = 16;
  std::uint32_t refine_iters = 8;
  std::uint32_t gop_size = kDefaultGopSize;

  // quant_step travels in the container as an integer count of 1/1000 units.
  std::uint64_t quant_step_milli() const;

  // Throws InvalidArgument on a zero stride, gop_size, or a quant_step that is
  // not positive or not a whole number of milli-units.
  void validate() const;
  bool operator==(const OperatingPoint&) const = default;
};

// Round half away from zero.
inline std::int64_t quantize(double value, double step) {
  return std::llround(value / step);
}

inline double dequantize(std::int64_t code, double step) {
  return static_cast<double>(code) * step;
}

// Luma DCT codes of the GOP keyframe: blocks in raster order, each block's
// 64 coefficients row-major.
struct KeyframeCodes {
  std::uint32_t blocks_wide = 0;
  std::uint32_t blocks_high = 0;
  std::vector<std::int32_t> coefficients;

  std::size_t block_count() const {
    return std::size_t{blocks_wide} * blocks_high;
  }
  bool operator==(const KeyframeCodes&) const = default;
};

// Quantized, 128-centred box averages of luma: `slices` temporal samples of
// a `rows` x `cols` grid.
struct LatentGrid {
  std::uint32_t slices = 0;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<std::int32_t> values;

  std::size_t index(std::size_t t, std::size_t r, std::size_t c) const {
    return (t * rows + r) * cols + c;
  }
  std::int32_t at(std::size_t t, std::size_t r, std::size_t c) const {
    return values[index(t, r, c)];
  }
  std::size_t size() const { return values.size(); }
  bool operator==(const LatentGrid&) const = default;
};

// Descriptor entries are stored as signed 16-bit fixed point with this step.
inline constexpr double kDescriptorStep = 0.5;
inline constexpr std::size_t kDescriptorStatCount = 3;

struct CompressedTokens {
  KeyframeCodes keyframe;
  std::vector<std::int32_t> descriptor;
  LatentGrid latent;
  OperatingPoint op;

  bool operator==(const CompressedTokens&) const = default;
};

struct LatentShape {
  std::uint32_t slices = 0;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
};

LatentShape latent_shape(const FrameGeometry& geometry, const OperatingPoint& op);

// Throws ShapeError if the token arrays disagree with what `geometry` and the
// embedded operating point imply.
void check_token_shape(const CompressedTokens& tokens,
                       const FrameGeometry& geometry);

}  // namespace gvc
