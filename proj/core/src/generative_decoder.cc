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

#include "gvc/generative_decoder.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <optional>

#include "gvc/error.h"
#include "gvc/metrics.h"
#include "gvc/token_encoder.h"
#include "grid_ops.h"

namespace gvc {

namespace {

using detail::Cell;
using detail::cell_bounds;

// Bilinear upsampling of a rows x cols grid whose samples sit at the centres
// of stride x stride cells.
std::vector<double> upsample_bilinear(std::span<const double> grid,
                                      std::uint32_t rows, std::uint32_t cols,
                                      std::uint32_t stride, std::uint32_t width,
                                      std::uint32_t height) {
  struct Tap {
    std::uint32_t i0, i1;
    double f;
  };
  auto taps = [stride](std::uint32_t n, std::uint32_t cells) {
    std::vector<Tap> out(n);
    for (std::uint32_t p = 0; p < n; ++p) {
      double u = (p + 0.5) / stride - 0.5;
      u = std::clamp(u, 0.0, static_cast<double>(cells - 1));
      const auto i0 = static_cast<std::uint32_t>(u);
      const std::uint32_t i1 = std::min(i0 + 1, cells - 1);
      out[p] = Tap{i0, i1, u - i0};
    }
    return out;
  };
  const std::vector<Tap> ty = taps(height, rows);
  const std::vector<Tap> tx = taps(width, cols);
  std::vector<double> out(std::size_t{width} * height);
  for (std::uint32_t y = 0; y < height; ++y) {
    const double* r0 = grid.data() + std::size_t{ty[y].i0} * cols;
    const double* r1 = grid.data() + std::size_t{ty[y].i1} * cols;
    const double fy = ty[y].f;
    double* line = out.data() + std::size_t{y} * width;
    for (std::uint32_t x = 0; x < width; ++x) {
      const Tap& t = tx[x];
      const double top = r0[t.i0] + t.f * (r0[t.i1] - r0[t.i0]);
      const double bottom = r1[t.i0] + t.f * (r1[t.i1] - r1[t.i0]);
      line[x] = top + fy * (bottom - top);
    }
  }
  return out;
}

double dequantized_latent(const CompressedTokens& tokens, std::size_t k,
                          std::size_t r, std::size_t c) {
  return dequantize(tokens.latent.at(k, r, c), tokens.op.quant_step) + 128.0;
}

// Adds one shift to every pixel of the cell so that the mean of the clamped
// result equals `target` (which must lie in [0, 255]).
void shift_cell_to_mean(double* frame, std::uint32_t width, const Cell& cell,
                        double target) {
  const double n = static_cast<double>(cell.pixels());
  double sum = 0.0, lo = 255.0, hi = 0.0;
  for (std::uint32_t y = cell.y0; y < cell.y1; ++y) {
    for (std::uint32_t x = cell.x0; x < cell.x1; ++x) {
      const double v = frame[std::size_t{y} * width + x];
      sum += v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  double shift = target - sum / n;
  if (lo + shift < 0.0 || hi + shift > 255.0) {
    // mean(clamp(x + s)) is non-decreasing in s; bisect for the target.
    double a = -hi - 1.0, b = 256.0 - lo;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (a + b);
      double acc = 0.0;
      for (std::uint32_t y = cell.y0; y < cell.y1; ++y) {
        for (std::uint32_t x = cell.x0; x < cell.x1; ++x) {
          acc += std::clamp(frame[std::size_t{y} * width + x] + mid, 0.0, 255.0);
        }
      }
      (acc / n < target ? a : b) = mid;
    }
    shift = 0.5 * (a + b);
  }
  for (std::uint32_t y = cell.y0; y < cell.y1; ++y) {
    for (std::uint32_t x = cell.x0; x < cell.x1; ++x) {
      double& v = frame[std::size_t{y} * width + x];
      v = std::clamp(v + shift, 0.0, 255.0);
    }
  }
}

// Rounds the cell to integers whose sum is exactly `target_sum`
// (largest-remainder, ties broken by raster position).
void round_cell_to_sum(const double* frame, std::uint8_t* out,
                       std::uint32_t width, const Cell& cell,
                       std::int64_t target_sum) {
  struct Px {
    std::size_t index;
    int value;
    double frac;
  };
  std::vector<Px> px;
  px.reserve(cell.pixels());
  std::int64_t base = 0;
  for (std::uint32_t y = cell.y0; y < cell.y1; ++y) {
    for (std::uint32_t x = cell.x0; x < cell.x1; ++x) {
      const std::size_t i = std::size_t{y} * width + x;
      const double v = std::clamp(frame[i], 0.0, 255.0);
      const double f = std::floor(v);
      px.push_back(Px{i, static_cast<int>(f), v - f});
      base += static_cast<int>(f);
    }
  }
  std::int64_t need = target_sum - base;
  if (need > 0) {
    std::stable_sort(px.begin(), px.end(),
                     [](const Px& a, const Px& b) { return a.frac > b.frac; });
    while (need > 0) {
      bool moved = false;
      for (Px& p : px) {
        if (need == 0) break;
        if (p.value < 255) {
          ++p.value;
          --need;
          moved = true;
        }
      }
      if (!moved) break;
    }
  } else if (need < 0) {
    std::stable_sort(px.begin(), px.end(),
                     [](const Px& a, const Px& b) { return a.frac < b.frac; });
    while (need < 0) {
      bool moved = false;
      for (Px& p : px) {
        if (need == 0) break;
        if (p.value > 0) {
          --p.value;
          ++need;
          moved = true;
        }
      }
      if (!moved) break;
    }
  }
  for (const Px& p : px) out[p.index] = static_cast<std::uint8_t>(p.value);
}

// Integer sums a cell may take while its average stays within quant_step / 2
// of the dequantized latent value.
std::pair<std::int64_t, std::int64_t> consistent_sum_range(double latent,
                                                           double half_step,
                                                           std::size_t pixels) {
  const double n = static_cast<double>(pixels);
  std::int64_t lo = static_cast<std::int64_t>(std::ceil(n * (latent - half_step) - 1e-6));
  std::int64_t hi = static_cast<std::int64_t>(std::floor(n * (latent + half_step) + 1e-6));
  lo = std::max<std::int64_t>(lo, 0);
  hi = std::min<std::int64_t>(hi, static_cast<std::int64_t>(255 * pixels));
  if (lo > hi) {
    const std::int64_t nearest = std::clamp<std::int64_t>(
        std::llround(n * latent), 0, static_cast<std::int64_t>(255 * pixels));
    lo = hi = nearest;
  }
  return {lo, hi};
}

// Moves the cell onto the nearest consistent integer sum and writes integer
// samples to `out`.
void fit_cell(double* frame, std::uint8_t* out, std::uint32_t width,
              const Cell& cell, double latent, double half_step) {
  const auto [lo, hi] = consistent_sum_range(latent, half_step, cell.pixels());
  double sum = 0.0;
  for (std::uint32_t y = cell.y0; y < cell.y1; ++y) {
    for (std::uint32_t x = cell.x0; x < cell.x1; ++x) {
      sum += std::clamp(frame[std::size_t{y} * width + x], 0.0, 255.0);
    }
  }
  const std::int64_t target = std::clamp<std::int64_t>(std::llround(sum), lo, hi);
  shift_cell_to_mean(frame, width, cell,
                     static_cast<double>(target) / static_cast<double>(cell.pixels()));
  round_cell_to_sum(frame, out, width, cell, target);
}

// Continuous projection of every transmitted cell into its consistency
// interval (clamped to the sample range).
void project_continuous(LumaVolume& volume, const DecodeContext& ctx) {
  const CompressedTokens& tokens = *ctx.tokens;
  const OperatingPoint& op = tokens.op;
  const double half = op.quant_step / 2.0;
  const std::uint32_t width = volume.width, height = volume.height;
  for (std::uint32_t k = 0; k < tokens.latent.slices; ++k) {
    double* frame = volume.frames[std::size_t{k} * op.temporal_stride].data();
    for (std::uint32_t r = 0; r < tokens.latent.rows; ++r) {
      for (std::uint32_t c = 0; c < tokens.latent.cols; ++c) {
        const Cell cell = cell_bounds(r, c, op.spatial_stride, width, height);
        const double latent = dequantized_latent(tokens, k, r, c);
        double lo = std::max(0.0, latent - half);
        double hi = std::min(255.0, latent + half);
        if (lo > hi) lo = hi = std::clamp(latent, 0.0, 255.0);
        double sum = 0.0;
        for (std::uint32_t y = cell.y0; y < cell.y1; ++y) {
          for (std::uint32_t x = cell.x0; x < cell.x1; ++x) {
            sum += frame[std::size_t{y} * width + x];
          }
        }
        const double mean = sum / static_cast<double>(cell.pixels());
        if (mean < lo) {
          shift_cell_to_mean(frame, width, cell, lo);
        } else if (mean > hi) {
          shift_cell_to_mean(frame, width, cell, hi);
        }
      }
    }
  }
}

std::vector<double> decoded_descriptor(const CompressedTokens& tokens) {
  std::vector<double> out;
  out.reserve(tokens.descriptor.size());
  for (std::int32_t q : tokens.descriptor) out.push_back(dequantize(q, kDescriptorStep));
  return out;
}

double volume_mean(const LumaVolume& volume) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& f : volume.frames) {
    sum += std::accumulate(f.begin(), f.end(), 0.0);
    n += f.size();
  }
  return n ? sum / static_cast<double>(n) : 0.0;
}

Gop finalize(LumaVolume volume, const DecodeContext& ctx, std::size_t gop_index) {
  const CompressedTokens& tokens = *ctx.tokens;
  const OperatingPoint& op = tokens.op;

  // Global correction: the descriptor's mean luma.
  if (!tokens.descriptor.empty()) {
    const double shift = dequantize(tokens.descriptor[0], kDescriptorStep) -
                         volume_mean(volume);
    for (auto& f : volume.frames) {
      for (double& v : f) v = std::clamp(v + shift, 0.0, 255.0);
    }
  }

  Gop gop;
  gop.index = gop_index;
  gop.geometry = ctx.geometry;
  gop.frames.reserve(volume.frames.size());
  const std::uint32_t width = volume.width, height = volume.height;
  for (std::size_t t = 0; t < volume.frames.size(); ++t) {
    Frame frame = Frame::blank(ctx.geometry);
    std::uint8_t* out = frame.luma().samples.data();
    std::vector<double>& src = volume.frames[t];
    if (t % op.temporal_stride == 0) {
      const std::size_t k = t / op.temporal_stride;
      for (std::uint32_t r = 0; r < tokens.latent.rows; ++r) {
        for (std::uint32_t c = 0; c < tokens.latent.cols; ++c) {
          fit_cell(src.data(), out, width,
                   cell_bounds(r, c, op.spatial_stride, width, height),
                   dequantized_latent(tokens, k, r, c), op.quant_step / 2.0);
        }
      }
    } else {
      for (std::size_t i = 0; i < src.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(std::clamp(std::llround(src[i]), 0LL, 255LL));
      }
    }
    gop.frames.push_back(std::move(frame));
  }
  return gop;
}

// Tokens that can only have come from a flat GOP: a DC-only keyframe, one
// latent value everywhere, and (where sent) zero variance and motion. The
// descriptor mean is then the exact level.
std::optional<double> flat_level(const CompressedTokens& tokens) {
  const auto& d = tokens.descriptor;
  if (d.empty() || (d.size() > 1 && d[1] != 0) || (d.size() > 2 && d[2] != 0)) {
    return std::nullopt;
  }
  const auto& kc = tokens.keyframe.coefficients;
  for (std::size_t i = 0; i < kc.size(); ++i) {
    if (i % 64 == 0 ? kc[i] != kc[0] : kc[i] != 0) return std::nullopt;
  }
  const auto& lv = tokens.latent.values;
  if (lv.empty() || std::any_of(lv.begin(), lv.end(), [&](std::int32_t v) { return v != lv[0]; })) {
    return std::nullopt;
  }
  const double level = std::clamp(dequantize(d[0], kDescriptorStep), 0.0, 255.0);
  if (std::abs(level - dequantized_latent(tokens, 0, 0, 0)) > tokens.op.quant_step / 2.0) {
    return std::nullopt;
  }
  return level;
}

}  // namespace

void DecodeContext::baseline_frame(std::size_t t, std::span<double> out) const {
  const std::uint32_t stride = tokens->op.temporal_stride;
  const std::size_t last = upsampled_slices.size() - 1;
  std::size_t k0 = t / stride;
  double f = static_cast<double>(t % stride) / stride;
  if (k0 >= last) {
    k0 = last;
    f = 0.0;
  }
  const auto& a = upsampled_slices[k0];
  if (f == 0.0) {
    std::copy(a.begin(), a.end(), out.begin());
    return;
  }
  const auto& b = upsampled_slices[k0 + 1];
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + f * (b[i] - a[i]);
}

DecodeContext make_decode_context(const CompressedTokens& tokens,
                                  const FrameGeometry& geometry,
                                  const DecoderConfig& config) {
  tokens.op.validate();
  check_token_shape(tokens, geometry);
  DecodeContext ctx;
  ctx.tokens = &tokens;
  ctx.geometry = geometry;
  ctx.config = config;
  ctx.keyframe = decode_keyframe(tokens.keyframe, geometry.width, geometry.height,
                                 tokens.op.quant_step);
  for (double& v : ctx.keyframe) v = std::clamp(v, 0.0, 255.0);
  const LatentGrid& g = tokens.latent;
  if (const auto level = flat_level(tokens)) {
    std::fill(ctx.keyframe.begin(), ctx.keyframe.end(), *level);
    ctx.upsampled_slices.assign(g.slices, std::vector<double>(ctx.keyframe.size(), *level));
    return ctx;
  }
  std::vector<double> slice(std::size_t{g.rows} * g.cols);
  for (std::uint32_t k = 0; k < g.slices; ++k) {
    for (std::uint32_t r = 0; r < g.rows; ++r) {
      for (std::uint32_t c = 0; c < g.cols; ++c) {
        slice[std::size_t{r} * g.cols + c] = dequantized_latent(tokens, k, r, c);
      }
    }
    ctx.upsampled_slices.push_back(upsample_bilinear(slice, g.rows, g.cols,
                                                     tokens.op.spatial_stride,
                                                     geometry.width, geometry.height));
  }
  return ctx;
}

LumaVolume interpolation_baseline(const DecodeContext& ctx) {
  LumaVolume volume;
  volume.width = ctx.geometry.width;
  volume.height = ctx.geometry.height;
  const std::size_t pixels = std::size_t{volume.width} * volume.height;
  volume.frames.resize(ctx.tokens->op.gop_size);
  for (std::size_t t = 0; t < volume.frames.size(); ++t) {
    volume.frames[t].resize(pixels);
    ctx.baseline_frame(t, volume.frames[t]);
  }
  return volume;
}

void GuidedRefinementPrior::prepare(const DecodeContext& ctx) {
  const std::uint32_t width = ctx.geometry.width, height = ctx.geometry.height;
  const std::size_t pixels = std::size_t{width} * height;
  const std::vector<double>& guide = ctx.keyframe;
  const double inv_two_sigma2 =
      1.0 / (2.0 * ctx.config.range_sigma * ctx.config.range_sigma);
  static constexpr double kSpatial[3] = {1.0, 2.0, 1.0};

  weights_.assign(pixels * 9, 0.0f);
  for (std::uint32_t y = 0; y < height; ++y) {
    for (std::uint32_t x = 0; x < width; ++x) {
      const std::size_t p = std::size_t{y} * width + x;
      double w[9] = {};
      double total = 0.0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const long qy = static_cast<long>(y) + dy, qx = static_cast<long>(x) + dx;
          if (qy < 0 || qx < 0 || qy >= height || qx >= width) continue;
          const double d = guide[p] - guide[static_cast<std::size_t>(qy) * width + qx];
          const double v = kSpatial[dy + 1] * kSpatial[dx + 1] * std::exp(-d * d * inv_two_sigma2);
          w[(dy + 1) * 3 + dx + 1] = v;
          total += v;
        }
      }
      for (int i = 0; i < 9; ++i) weights_[p * 9 + i] = static_cast<float>(w[i] / total);
    }
  }

  // Keyframe residual relative to the frame-0 baseline, injected into the
  // frames before the next latent slice with a quadratic fade and gated by
  // how much the latents say each pixel moved.
  const OperatingPoint& op = ctx.tokens->op;
  const double motion_sigma = ctx.config.motion_sigma + op.quant_step / 2.0;
  const double inv_two_motion2 = 1.0 / (2.0 * motion_sigma * motion_sigma);
  const std::vector<double>& base0 = ctx.upsampled_slices.front();
  targets_.assign(op.gop_size, {});
  std::vector<double> base(pixels);
  for (std::uint32_t t = 0; t < op.gop_size && t < op.temporal_stride; ++t) {
    const double fade = 1.0 - static_cast<double>(t) / op.temporal_stride;
    const double weight = fade * fade;
    ctx.baseline_frame(t, base);
    std::vector<double>& target = targets_[t];
    target.resize(pixels);
    for (std::size_t i = 0; i < pixels; ++i) {
      const double motion = base[i] - base0[i];
      const double gate = std::exp(-motion * motion * inv_two_motion2);
      target[i] = base[i] + weight * gate * (guide[i] - base0[i]);
    }
  }
}

void GuidedRefinementPrior::refine(LumaVolume& estimate, const DecodeContext& ctx) {
  const std::uint32_t width = estimate.width, height = estimate.height;
  const std::size_t pixels = std::size_t{width} * height;
  const double pull = ctx.config.pull;
  std::vector<double> smoothed(pixels);
  std::vector<double> base(pixels);
  for (std::size_t t = 0; t < estimate.frames.size(); ++t) {
    std::vector<double>& frame = estimate.frames[t];
    for (std::uint32_t y = 0; y < height; ++y) {
      for (std::uint32_t x = 0; x < width; ++x) {
        const std::size_t p = std::size_t{y} * width + x;
        const float* w = &weights_[p * 9];
        double acc = 0.0;
        for (int dy = -1; dy <= 1; ++dy) {
          const long qy = static_cast<long>(y) + dy;
          if (qy < 0 || qy >= height) continue;
          for (int dx = -1; dx <= 1; ++dx) {
            const long qx = static_cast<long>(x) + dx;
            if (qx < 0 || qx >= width) continue;
            acc += w[(dy + 1) * 3 + dx + 1] * frame[static_cast<std::size_t>(qy) * width + qx];
          }
        }
        smoothed[p] = acc;
      }
    }
    const std::vector<double>* target = &targets_[t];
    if (target->empty()) {
      ctx.baseline_frame(t, base);
      target = &base;
    }
    for (std::size_t i = 0; i < pixels; ++i) {
      frame[i] = smoothed[i] + pull * ((*target)[i] - smoothed[i]);
    }
  }
}

DecodedGop decode_gop(const CompressedTokens& tokens, const FrameGeometry& geometry,
                      std::size_t gop_index, const DecoderConfig& config,
                      RefinementPrior* prior) {
  const auto start = std::chrono::steady_clock::now();
  const DecodeContext ctx = make_decode_context(tokens, geometry, config);
  LumaVolume estimate = interpolation_baseline(ctx);

  GuidedRefinementPrior default_prior;
  if (prior == nullptr) prior = &default_prior;
  std::uint32_t iterations = 0;
  if (tokens.op.refine_iters > 0) {
    prior->prepare(ctx);
    for (; iterations < tokens.op.refine_iters; ++iterations) {
      prior->refine(estimate, ctx);
      project_continuous(estimate, ctx);
    }
  }

  DecodedGop out;
  out.gop = finalize(std::move(estimate), ctx, gop_index);
  ReconstructionReport& report = out.report;
  report.gop_index = gop_index;
  report.iterations_run = iterations;
  report.quant_step = tokens.op.quant_step;
  report.token_consistency_error = token_consistency_error(out.gop, tokens);
  report.descriptor = decoded_descriptor(tokens);
  double sum = 0.0;
  std::size_t n = 0;
  for (const Frame& f : out.gop.frames) {
    for (std::uint8_t v : f.luma().samples) sum += v;
    n += f.luma().samples.size();
  }
  report.output_mean_luma = n ? sum / static_cast<double>(n) : 0.0;
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

Gop finalize_estimate(const LumaVolume& estimate, const DecodeContext& ctx,
                      std::size_t gop_index) {
  return finalize(estimate, ctx, gop_index);
}

Gop token_consistency_project(const Gop& estimate, const CompressedTokens& tokens) {
  check_token_shape(tokens, estimate.geometry);
  if (estimate.frames.size() != tokens.op.gop_size) {
    throw ShapeError("estimate frame count does not match gop_size");
  }
  const OperatingPoint& op = tokens.op;
  const std::uint32_t width = estimate.geometry.width, height = estimate.geometry.height;
  Gop out = estimate;
  std::vector<double> work(std::size_t{width} * height);
  for (std::uint32_t k = 0; k < tokens.latent.slices; ++k) {
    Plane& luma = out.frames[std::size_t{k} * op.temporal_stride].luma();
    for (std::uint32_t r = 0; r < tokens.latent.rows; ++r) {
      for (std::uint32_t c = 0; c < tokens.latent.cols; ++c) {
        const Cell cell = cell_bounds(r, c, op.spatial_stride, width, height);
        std::int64_t sum = 0;
        for (std::uint32_t y = cell.y0; y < cell.y1; ++y) {
          for (std::uint32_t x = cell.x0; x < cell.x1; ++x) {
            sum += luma.at(x, y);
            work[std::size_t{y} * width + x] = luma.at(x, y);
          }
        }
        const double latent = dequantized_latent(tokens, k, r, c);
        const auto [lo, hi] =
            consistent_sum_range(latent, op.quant_step / 2.0, cell.pixels());
        if (sum >= lo && sum <= hi) continue;
        const std::int64_t target = sum < lo ? lo : hi;
        shift_cell_to_mean(work.data(), width, cell,
                           static_cast<double>(target) / static_cast<double>(cell.pixels()));
        round_cell_to_sum(work.data(), luma.samples.data(), width, cell, target);
      }
    }
  }
  return out;
}

double token_consistency_error(const Gop& gop, const CompressedTokens& tokens) {
  const OperatingPoint& op = tokens.op;
  double worst = 0.0;
  for (std::uint32_t k = 0; k < tokens.latent.slices; ++k) {
    const std::vector<double> averages =
        box_downsample(gop.frames.at(std::size_t{k} * op.temporal_stride).luma(),
                       op.spatial_stride);
    if (averages.size() != std::size_t{tokens.latent.rows} * tokens.latent.cols) {
      throw ShapeError("GOP geometry does not match the latent grid");
    }
    for (std::uint32_t r = 0; r < tokens.latent.rows; ++r) {
      for (std::uint32_t c = 0; c < tokens.latent.cols; ++c) {
        const double d = std::abs(averages[std::size_t{r} * tokens.latent.cols + c] -
                                  dequantized_latent(tokens, k, r, c));
        worst = std::max(worst, d);
      }
    }
  }
  return worst;
}

std::vector<ComputeQualityRow> measure_quality_vs_compute(
    const CompressedTokens& tokens, const Gop& source,
    std::vector<std::uint32_t> iteration_grid, int repetitions) {
  std::sort(iteration_grid.begin(), iteration_grid.end());
  repetitions = std::max(repetitions, 1);
  std::vector<ComputeQualityRow> rows;
  CompressedTokens variant = tokens;
  for (std::uint32_t iters : iteration_grid) {
    variant.op.refine_iters = iters;
    ComputeQualityRow row;
    row.iters = iters;
    double total = 0.0;
    for (int rep = 0; rep < repetitions; ++rep) {
      DecodedGop decoded = decode_gop(variant, source.geometry, source.index);
      total += decoded.report.wall_time_s;
      if (rep == 0) row.psnr_db = psnr(source, decoded.gop);
    }
    row.wall_time_s = total / repetitions;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gvc
