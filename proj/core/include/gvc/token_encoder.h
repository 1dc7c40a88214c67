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

#include <cstdint>
#include <vector>

#include "gvc/tokens.h"
#include "gvc/video.h"

namespace gvc {

// Block DCT of the luma plane (edge-replicated to multiples of 8, samples
// centred on 128) with uniform quantization by `quant_step`.
KeyframeCodes encode_keyframe(const Frame& frame, double quant_step);

// Inverse of encode_keyframe up to quantization: returns a width x height
// luma estimate (not clamped).
std::vector<double> decode_keyframe(const KeyframeCodes& codes,
                                    std::uint32_t width, std::uint32_t height,
                                    double quant_step);

// Unquantized descriptor values:
//   [0] mean luma, [1] luma variance, [2] mean absolute temporal difference,
//   [3..] leading zig-zag DCT coefficients of the temporally averaged luma
//         after 16x16 box downsampling (128-centred), zero-padded.
std::vector<double> descriptor_values(const Gop& gop, std::uint32_t descriptor_len);

// descriptor_values quantized to kDescriptorStep and saturated to int16.
std::vector<std::int32_t> extract_descriptor(const Gop& gop,
                                             std::uint32_t descriptor_len);

// Box-filter luma averages of one frame over stride x stride cells (partial
// edge cells average the pixels they contain). Row-major, ceil-sized.
std::vector<double> box_downsample(const Plane& luma, std::uint32_t stride);

LatentGrid extract_latent_grid(const Gop& gop, const OperatingPoint& op);

CompressedTokens encode_gop(const Gop& gop, const OperatingPoint& op);

}  // namespace gvc
