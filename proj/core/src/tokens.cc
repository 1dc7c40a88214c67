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

#include "gvc/tokens.h"

#include <string>

#include "gvc/error.h"
#include "grid_ops.h"

namespace gvc {

std::uint64_t OperatingPoint::quant_step_milli() const {
  return static_cast<std::uint64_t>(std::llround(quant_step * 1000.0));
}

void OperatingPoint::validate() const {
  if (!(quant_step > 0.0) || !std::isfinite(quant_step)) {
    throw InvalidArgument("quant_step must be positive");
  }
  const double milli = quant_step * 1000.0;
  if (std::llround(milli) < 1 || std::abs(milli - std::round(milli)) > 1e-6) {
    throw InvalidArgument("quant_step must be a whole multiple of 0.001");
  }
  if (spatial_stride == 0) throw InvalidArgument("spatial_stride must be >= 1");
  if (temporal_stride == 0) throw InvalidArgument("temporal_stride must be >= 1");
  if (gop_size == 0) throw InvalidArgument("gop_size must be >= 1");
}

LatentShape latent_shape(const FrameGeometry& geometry, const OperatingPoint& op) {
  return LatentShape{detail::ceil_div(op.gop_size, op.temporal_stride),
                     detail::ceil_div(geometry.height, op.spatial_stride),
                     detail::ceil_div(geometry.width, op.spatial_stride)};
}

void check_token_shape(const CompressedTokens& tokens,
                       const FrameGeometry& geometry) {
  const LatentShape shape = latent_shape(geometry, tokens.op);
  const LatentGrid& g = tokens.latent;
  if (g.slices != shape.slices || g.rows != shape.rows || g.cols != shape.cols ||
      g.values.size() != std::size_t{shape.slices} * shape.rows * shape.cols) {
    throw ShapeError("latent grid shape does not match the stream geometry");
  }
  const KeyframeCodes& k = tokens.keyframe;
  if (k.blocks_wide != detail::ceil_div(geometry.width, 8) ||
      k.blocks_high != detail::ceil_div(geometry.height, 8) ||
      k.coefficients.size() != k.block_count() * 64) {
    throw ShapeError("keyframe code shape does not match the stream geometry");
  }
  if (tokens.descriptor.size() != tokens.op.descriptor_len) {
    throw ShapeError("descriptor length " +
                     std::to_string(tokens.descriptor.size()) +
                     " does not match descriptor_len " +
                     std::to_string(tokens.op.descriptor_len));
  }
}

}  // namespace gvc
