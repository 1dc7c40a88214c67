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

#include "gvc/token_encoder.h"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "gvc/dct.h"
#include "gvc/error.h"
#include "grid_ops.h"

namespace gvc {

namespace {

constexpr std::uint32_t kDescriptorDownsample = 16;

std::int32_t saturate_i16(std::int64_t v) {
  return static_cast<std::int32_t>(
      std::clamp<std::int64_t>(v, std::numeric_limits<std::int16_t>::min(),
                               std::numeric_limits<std::int16_t>::max()));
}

std::int32_t to_i32(std::int64_t v) {
  if (v > std::numeric_limits<std::int32_t>::max() ||
      v < std::numeric_limits<std::int32_t>::min()) {
    throw EncodeError("quantized value exceeds the 32-bit token range");
  }
  return static_cast<std::int32_t>(v);
}

}  // namespace

KeyframeCodes encode_keyframe(const Frame& frame, double quant_step) {
  const Plane& luma = frame.luma();
  KeyframeCodes codes;
  codes.blocks_wide = detail::ceil_div(luma.width, 8);
  codes.blocks_high = detail::ceil_div(luma.height, 8);
  codes.coefficients.reserve(codes.block_count() * 64);
  for (std::uint32_t by = 0; by < codes.blocks_high; ++by) {
    for (std::uint32_t bx = 0; bx < codes.blocks_wide; ++bx) {
      Block8x8 block{};
      for (std::uint32_t y = 0; y < 8; ++y) {
        const std::uint32_t sy = std::min(by * 8 + y, luma.height - 1);
        for (std::uint32_t x = 0; x < 8; ++x) {
          const std::uint32_t sx = std::min(bx * 8 + x, luma.width - 1);
          block[y * 8 + x] = static_cast<double>(luma.at(sx, sy)) - 128.0;
        }
      }
      const Block8x8 coef = dct2d_forward(block);
      for (double c : coef) codes.coefficients.push_back(to_i32(quantize(c, quant_step)));
    }
  }
  return codes;
}

std::vector<double> decode_keyframe(const KeyframeCodes& codes,
                                    std::uint32_t width, std::uint32_t height,
                                    double quant_step) {
  if (codes.blocks_wide != detail::ceil_div(width, 8) ||
      codes.blocks_high != detail::ceil_div(height, 8) ||
      codes.coefficients.size() != codes.block_count() * 64) {
    throw ShapeError("keyframe codes do not cover a " + std::to_string(width) +
                     "x" + std::to_string(height) + " frame");
  }
  std::vector<double> out(std::size_t{width} * height);
  for (std::uint32_t by = 0; by < codes.blocks_high; ++by) {
    for (std::uint32_t bx = 0; bx < codes.blocks_wide; ++bx) {
      const std::size_t base = (std::size_t{by} * codes.blocks_wide + bx) * 64;
      Block8x8 coef{};
      for (std::size_t i = 0; i < 64; ++i) {
        coef[i] = dequantize(codes.coefficients[base + i], quant_step);
      }
      const Block8x8 block = dct2d_inverse(coef);
      for (std::uint32_t y = 0; y < 8 && by * 8 + y < height; ++y) {
        for (std::uint32_t x = 0; x < 8 && bx * 8 + x < width; ++x) {
          out[std::size_t{by * 8 + y} * width + bx * 8 + x] =
              block[y * 8 + x] + 128.0;
        }
      }
    }
  }
  return out;
}

std::vector<double> descriptor_values(const Gop& gop,
                                      std::uint32_t descriptor_len) {
  std::vector<double> values(descriptor_len, 0.0);
  if (descriptor_len == 0 || gop.frames.empty()) return values;

  const std::uint32_t width = gop.geometry.width;
  const std::uint32_t height = gop.geometry.height;
  const std::size_t pixels = std::size_t{width} * height;
  const std::size_t frames = gop.frames.size();

  std::int64_t sum = 0;
  std::int64_t sum_sq = 0;
  std::int64_t abs_diff = 0;
  std::vector<std::int64_t> temporal_sum(pixels, 0);
  for (std::size_t t = 0; t < frames; ++t) {
    const auto& cur = gop.frames[t].luma().samples;
    for (std::size_t i = 0; i < pixels; ++i) {
      const std::int64_t v = cur[i];
      sum += v;
      sum_sq += v * v;
      temporal_sum[i] += v;
    }
    if (t > 0) {
      const auto& prev = gop.frames[t - 1].luma().samples;
      for (std::size_t i = 0; i < pixels; ++i) {
        abs_diff += std::abs(static_cast<int>(cur[i]) - static_cast<int>(prev[i]));
      }
    }
  }
  const double n = static_cast<double>(pixels * frames);
  const double mean = static_cast<double>(sum) / n;
  // Exact integer numerator avoids cancellation: n*sum_sq - sum^2.
  const double var_num = static_cast<double>(
      static_cast<__int128>(sum_sq) * static_cast<__int128>(pixels * frames) -
      static_cast<__int128>(sum) * sum);
  const double variance = var_num / (n * n);
  const double temporal =
      frames > 1 ? static_cast<double>(abs_diff) /
                       (static_cast<double>(pixels) * static_cast<double>(frames - 1))
                 : 0.0;

  const double stats[kDescriptorStatCount] = {mean, variance, temporal};
  for (std::size_t i = 0; i < std::min<std::size_t>(descriptor_len, kDescriptorStatCount); ++i) {
    values[i] = stats[i];
  }
  if (descriptor_len <= kDescriptorStatCount) return values;

  std::vector<double> averaged(pixels);
  for (std::size_t i = 0; i < pixels; ++i) {
    averaged[i] = static_cast<double>(temporal_sum[i]) / static_cast<double>(frames);
  }
  const std::uint32_t rows = detail::ceil_div(height, kDescriptorDownsample);
  const std::uint32_t cols = detail::ceil_div(width, kDescriptorDownsample);
  std::vector<double> small = detail::box_average<double>(averaged, width, height,
                                                          kDescriptorDownsample);
  for (double& v : small) v -= 128.0;
  const std::vector<double> coef = dct2d_forward(small, rows, cols);
  const std::vector<std::size_t> order = zigzag_order(rows, cols);
  for (std::size_t i = kDescriptorStatCount;
       i < descriptor_len && i - kDescriptorStatCount < order.size(); ++i) {
    values[i] = coef[order[i - kDescriptorStatCount]];
  }
  return values;
}

std::vector<std::int32_t> extract_descriptor(const Gop& gop,
                                             std::uint32_t descriptor_len) {
  const std::vector<double> values = descriptor_values(gop, descriptor_len);
  std::vector<std::int32_t> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(saturate_i16(quantize(v, kDescriptorStep)));
  return out;
}

std::vector<double> box_downsample(const Plane& luma, std::uint32_t stride) {
  if (stride == 0) throw InvalidArgument("stride must be >= 1");
  return detail::box_average<std::uint8_t>(luma.samples, luma.width, luma.height,
                                           stride);
}

LatentGrid extract_latent_grid(const Gop& gop, const OperatingPoint& op) {
  op.validate();
  if (gop.frames.size() != op.gop_size) {
    throw ShapeError("GOP has " + std::to_string(gop.frames.size()) +
                     " frames, operating point expects " +
                     std::to_string(op.gop_size));
  }
  const LatentShape shape = latent_shape(gop.geometry, op);
  LatentGrid grid;
  grid.slices = shape.slices;
  grid.rows = shape.rows;
  grid.cols = shape.cols;
  grid.values.reserve(std::size_t{shape.slices} * shape.rows * shape.cols);
  for (std::uint32_t k = 0; k < shape.slices; ++k) {
    const Frame& frame = gop.frames[std::size_t{k} * op.temporal_stride];
    for (double avg : box_downsample(frame.luma(), op.spatial_stride)) {
      grid.values.push_back(to_i32(quantize(avg - 128.0, op.quant_step)));
    }
  }
  return grid;
}

CompressedTokens encode_gop(const Gop& gop, const OperatingPoint& op) {
  op.validate();
  CompressedTokens tokens;
  tokens.op = op;
  tokens.latent = extract_latent_grid(gop, op);
  tokens.keyframe = encode_keyframe(gop.frames.front(), op.quant_step);
  tokens.descriptor = extract_descriptor(gop, op.descriptor_len);
  return tokens;
}

}  // namespace gvc
