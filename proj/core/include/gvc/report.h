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

#include <span>
#include <string>
#include <vector>

#include "gvc/generative_decoder.h"
#include "gvc/metrics.h"
#include "gvc/tokens.h"

namespace gvc {

inline constexpr const char* kMetricsSchema = "gvc-lab/metrics/v1";
inline constexpr const char* kDecodeSchema = "gvc-lab/decode/v1";

// Wall-time fields are written as 0 when include_wall_times is false, which
// makes reports of identical runs byte-identical.
std::string metrics_report_json(const MetricsReport& report, const OperatingPoint& op,
                                bool include_wall_times = true);

std::string reconstruction_reports_json(std::span<const ReconstructionReport> reports,
                                        bool include_wall_times = true);

struct RdPoint {
  std::string sequence;
  OperatingPoint op;
  double bpp = 0.0;
  double psnr_db = 0.0;
  double ssim = 0.0;
};

// Header: sequence,quant_step,spatial_stride,temporal_stride,descriptor_len,
// refine_iters,bpp,compression_rate_percent,psnr_db,ssim
std::string rd_csv(std::span<const RdPoint> points);

}  // namespace gvc
