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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gvc/video.h"

namespace gvc {

// Reported in place of +inf when two inputs are identical.
inline constexpr double kPsnrCap = 99.0;
// Raw-rate baseline for compression-rate percentages: 8-bit RGB.
inline constexpr double kRawBitsPerPixel = 24.0;

// Luma PSNR over all frames with a single pooled MSE.
double psnr(std::span<const Frame> reference, std::span<const Frame> test);
double psnr(const Gop& reference, const Gop& test);
double psnr(const VideoSequence& reference, const VideoSequence& test);

struct SsimParams {
  std::uint32_t window = 8;
  std::uint32_t step = 4;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;
};

// Luma SSIM per plane, averaged over sliding windows (window x window,
// advancing by step, population statistics).
double ssim_plane(const Plane& reference, const Plane& test,
                  const SsimParams& params = {});
// Mean of per-frame SSIM.
double ssim(std::span<const Frame> reference, std::span<const Frame> test,
            const SsimParams& params = {});
double ssim(const VideoSequence& reference, const VideoSequence& test);

double compression_rate(double bpp);

struct GopDecodeSummary {
  std::size_t index = 0;
  std::uint32_t iterations_run = 0;
  double token_consistency_error = 0.0;
  double consistency_bound = 0.0;
  double wall_time_s = 0.0;
};

struct SequenceMetrics {
  std::string name;
  double bpp = 0.0;
  double compression_rate_percent = 0.0;
  double psnr_db = 0.0;
  double ssim = 0.0;
  std::size_t coded_frames = 0;
  std::size_t discarded_frames = 0;
  std::size_t bitstream_bytes = 0;
  std::vector<GopDecodeSummary> gops;
  double encode_wall_time_s = 0.0;
  double decode_wall_time_s = 0.0;
  // Slot for perceptual scores computed by an external tool.
  std::optional<double> external_perceptual;
};

struct DatasetMetrics {
  std::size_t sequence_count = 0;
  double mean_bpp = 0.0;
  double mean_compression_rate_percent = 0.0;
  double mean_psnr_db = 0.0;
  double mean_ssim = 0.0;
};

struct MetricsReport {
  std::vector<SequenceMetrics> sequences;
  DatasetMetrics dataset;
};

// Unweighted means across sequences, regardless of sequence length.
DatasetMetrics aggregate(std::span<const SequenceMetrics> sequences);

}  // namespace gvc
