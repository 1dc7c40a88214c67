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
#include <cstdint>
#include <span>
#include <vector>

#include "gvc/tokens.h"
#include "gvc/video.h"

namespace gvc {

// Container layout (all integers little-endian):
//
//   "GVC1" | u16 version | u32 width | u32 height | u32 fps_num | u32 fps_den
//   | u8 chroma | u32 gop_size | u32 quant_step_milli | u32 spatial_stride
//   | u32 temporal_stride | u32 descriptor_len | u32 refine_iters
//   | u32 gop_count | gop_count x (u32 payload_len, payload)
//
// A GOP payload is three coded arrays in order: keyframe codes, descriptor,
// latent grid. GOPs after the first carry descriptor and latent residuals
// against the previous GOP; keyframes are always coded directly. Each
// non-empty coded array is
//
//   varint alphabet | alphabet x varint freq | varint escape_len
//   | escape bytes | varint rans_len | rans bytes
//
// where values are zig-zag mapped, values >= kEscapeSymbol are sent as the
// escape symbol plus a varint excess, and freq sums to kProbScale.
inline constexpr std::array<std::uint8_t, 4> kMagic = {'G', 'V', 'C', '1'};
inline constexpr std::uint16_t kFormatVersion = 1;
inline constexpr std::size_t kHeaderBytes = 51;
inline constexpr std::uint32_t kEscapeSymbol = 64;

struct StreamHeader {
  FrameGeometry geometry;
  Rational frame_rate;
  OperatingPoint op;
  std::uint32_t gop_count = 0;

  bool operator==(const StreamHeader&) const = default;
};

// Token arrays as they are entropy coded for one GOP.
struct ResidualTokens {
  KeyframeCodes keyframe;
  std::vector<std::int32_t> descriptor;
  LatentGrid latent;
};

// With no predictor the tokens pass through; otherwise descriptor and latent
// grid become elementwise differences. Throws ShapeError on mismatch.
ResidualTokens residual_encode(const CompressedTokens& tokens,
                               const CompressedTokens* predictor);
CompressedTokens residual_decode(const ResidualTokens& residual,
                                 const CompressedTokens* predictor,
                                 const OperatingPoint& op);

std::vector<std::uint8_t> encode_value_array(std::span<const std::int32_t> values);
// Reads one coded array of `count` values starting at `pos`, advancing it.
std::vector<std::int32_t> decode_value_array(std::span<const std::uint8_t> bytes,
                                             std::size_t& pos, std::size_t count);

std::vector<std::uint8_t> encode_gop_payload(const ResidualTokens& residual);

// Writes the header (gop_count is taken from tokens.size()) and one payload
// per token set. Every token set must carry header.op and match the geometry.
std::vector<std::uint8_t> serialize(const StreamHeader& header,
                                    std::span<const CompressedTokens> tokens);

struct DecodedStream {
  StreamHeader header;
  std::vector<CompressedTokens> tokens;
  std::vector<std::size_t> payload_bytes;
};

StreamHeader parse_header(std::span<const std::uint8_t> bytes);
// Throws DecodeError on any structural inconsistency.
DecodedStream deserialize(std::span<const std::uint8_t> bytes);

// 8 * byte_length / (width * height * coded_frames).
double measure_bpp(std::size_t byte_length, std::uint32_t width,
                   std::uint32_t height, std::size_t coded_frames);

}  // namespace gvc
