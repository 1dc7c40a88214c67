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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gvc/generative_decoder.h"
#include "gvc/metrics.h"
#include "gvc/tokens.h"
#include "gvc/video.h"

namespace gvc {

// Runs fn(0..count-1) on up to `threads` workers. Each index is handled
// exactly once; the exception from the lowest failing index is rethrown.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

struct EncodeResult {
  std::vector<std::uint8_t> bytes;
  std::size_t gop_count = 0;
  std::size_t coded_frames = 0;
  std::size_t discarded_frames = 0;
  double bpp = 0.0;
  double wall_time_s = 0.0;
};

// Segments, tokenizes each GOP (in parallel) and serializes. The output does
// not depend on `threads`. Throws InvalidArgument for a bad operating point
// and EncodeError when the input is shorter than one GOP.
EncodeResult encode_sequence(const VideoSequence& video, const OperatingPoint& op,
                             unsigned threads = 1);

struct DecodeResult {
  VideoSequence video;
  std::vector<ReconstructionReport> reports;
  double wall_time_s = 0.0;
};

// Throws DecodeError on a corrupt container.
DecodeResult decode_stream(std::span<const std::uint8_t> bytes, unsigned threads = 1,
                           const DecoderConfig& config = {});

struct RoundTrip {
  EncodeResult encoded;
  DecodeResult decoded;
  SequenceMetrics metrics;
};

// encode -> decode -> PSNR/SSIM against the coded (non-discarded) frames.
RoundTrip evaluate_sequence(const std::string& name, const VideoSequence& video,
                            const OperatingPoint& op, unsigned threads = 1);

}  // namespace gvc
