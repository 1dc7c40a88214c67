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
#include <span>
#include <vector>

#include "gvc/tokens.h"
#include "gvc/video.h"

namespace gvc {

// Tunables of the built-in refinement prior. The defaults are the values the
// golden decode fixtures were produced with.
struct DecoderConfig {
  // Fraction of the gap to the conditioning target closed per iteration.
  double pull = 0.5;
  // Intensity scale of the keyframe-guided 3x3 kernel (luma levels).
  double range_sigma = 12.0;
  // Latent change (luma levels, plus quant_step / 2) over which keyframe
  // detail injection fades out.
  double motion_sigma = 4.0;
};

struct ReconstructionReport {
  std::size_t gop_index = 0;
  std::uint32_t iterations_run = 0;
  // max |cell average of output - dequantized latent| over transmitted cells
  double token_consistency_error = 0.0;
  double quant_step = 0.0;
  // Descriptor statistics as decoded; mean luma drives the global correction.
  std::vector<double> descriptor;
  double output_mean_luma = 0.0;
  double wall_time_s = 0.0;
};

// Working luma estimate of a GOP, one row-major plane per frame.
struct LumaVolume {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::vector<double>> frames;
};

// Everything a refinement prior may condition on.
struct DecodeContext {
  const CompressedTokens* tokens = nullptr;
  FrameGeometry geometry;
  DecoderConfig config;
  // Decoded keyframe luma, clamped to [0, 255].
  std::vector<double> keyframe;
  // Bilinear upsampling of each dequantized latent slice.
  std::vector<std::vector<double>> upsampled_slices;

  // Linear-in-time interpolation of upsampled slices for frame t.
  void baseline_frame(std::size_t t, std::span<double> out) const;
};

// Extension point for the synthesis step. decode_gop calls refine() once per
// iteration and applies the token-consistency projection after each call.
class RefinementPrior {
 public:
  virtual ~RefinementPrior() = default;
  virtual void prepare(const DecodeContext& ctx) = 0;
  virtual void refine(LumaVolume& estimate, const DecodeContext& ctx) = 0;
};

// Default prior: keyframe-guided edge-preserving smoothing plus a pull
// toward a conditioning target that injects the keyframe residual into the
// frames following the keyframe, gated by latent motion.
class GuidedRefinementPrior : public RefinementPrior {
 public:
  void prepare(const DecodeContext& ctx) override;
  void refine(LumaVolume& estimate, const DecodeContext& ctx) override;

 private:
  std::vector<float> weights_;  // 9 normalized taps per pixel
  std::vector<std::vector<double>> targets_;  // per frame; empty = baseline
};

struct DecodedGop {
  Gop gop;
  ReconstructionReport report;
};

DecodeContext make_decode_context(const CompressedTokens& tokens,
                                  const FrameGeometry& geometry,
                                  const DecoderConfig& config = {});

// Step-2 initialization: every frame interpolated from the latent slices.
LumaVolume interpolation_baseline(const DecodeContext& ctx);

// Descriptor mean correction followed by the integer consistency fit; the
// last stage of decode_gop, exposed so the refine_iters = 0 output can be
// checked against the plain baseline.
Gop finalize_estimate(const LumaVolume& estimate, const DecodeContext& ctx,
                      std::size_t gop_index = 0);

DecodedGop decode_gop(const CompressedTokens& tokens, const FrameGeometry& geometry,
                      std::size_t gop_index = 0, const DecoderConfig& config = {},
                      RefinementPrior* prior = nullptr);

// Minimal per-cell uniform correction so that each transmitted cell average
// lies within quant_step / 2 of its dequantized latent value. Cells already
// consistent are left untouched.
Gop token_consistency_project(const Gop& estimate, const CompressedTokens& tokens);

double token_consistency_error(const Gop& gop, const CompressedTokens& tokens);

struct ComputeQualityRow {
  std::uint32_t iters = 0;
  double psnr_db = 0.0;
  double wall_time_s = 0.0;
};

// Decodes `tokens` once per entry of `iteration_grid` (`repetitions` times
// each, reporting mean wall time) and scores against `source`.
std::vector<ComputeQualityRow> measure_quality_vs_compute(
    const CompressedTokens& tokens, const Gop& source,
    std::vector<std::uint32_t> iteration_grid, int repetitions = 3);

}  // namespace gvc
