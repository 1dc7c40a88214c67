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

#include <gtest/gtest.h>

#include <random>

#include "gvc/corpus.h"
#include "gvc/error.h"
#include "gvc/generative_decoder.h"
#include "gvc/metrics.h"
#include "gvc/token_encoder.h"
#include "../support/video_gen.h"

namespace gvc {
namespace {

OperatingPoint small_op(std::uint32_t gop_size = 6) {
  OperatingPoint op;
  op.gop_size = gop_size;
  op.spatial_stride = 4;
  op.temporal_stride = 2;
  op.quant_step = 8;
  op.refine_iters = 3;
  return op;
}

TEST(DecodeGop, ZeroIterationsIsFinalizedBaseline) {
  const FrameGeometry g{24, 16, Chroma::k420};
  OperatingPoint op = small_op();
  op.refine_iters = 0;
  const Gop src = testing::as_gop(testing::ramp_video(g, op.gop_size, 2));
  const CompressedTokens t = encode_gop(src, op);
  const DecodedGop a = decode_gop(t, g);
  const DecodedGop b = decode_gop(t, g);
  EXPECT_EQ(a.report.iterations_run, 0u);
  EXPECT_EQ(a.gop.frames, b.gop.frames);
  const DecodeContext ctx = make_decode_context(t, g);
  EXPECT_EQ(finalize_estimate(interpolation_baseline(ctx), ctx).frames, a.gop.frames);
}

TEST(DecodeGop, IdentityLimit) {
  const FrameGeometry g{16, 12, Chroma::kGray};
  OperatingPoint op;
  op.gop_size = 3;
  op.spatial_stride = 1;
  op.temporal_stride = 1;
  op.quant_step = 0.001;
  op.refine_iters = 4;
  const Gop src = testing::as_gop(testing::random_video(g, 3, 21));
  const DecodedGop d = decode_gop(encode_gop(src, op), g);
  for (std::size_t t = 0; t < 3; ++t) {
    for (std::size_t i = 0; i < src.frames[t].luma().samples.size(); ++i) {
      EXPECT_LE(std::abs(int(d.gop.frames[t].luma().samples[i]) -
                         int(src.frames[t].luma().samples[i])),
                op.quant_step / 2 + 1);
    }
  }
}

TEST(DecodeGop, All128IsFixedPointEverywhere) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 40; ++i) {
    const FrameGeometry g{static_cast<std::uint32_t>(2 * (rng() % 12 + 1)),
                          static_cast<std::uint32_t>(2 * (rng() % 12 + 1)), Chroma::k420};
    OperatingPoint op;
    op.gop_size = static_cast<std::uint32_t>(rng() % 10 + 1);
    op.spatial_stride = static_cast<std::uint32_t>(rng() % 9 + 1);
    op.temporal_stride = static_cast<std::uint32_t>(rng() % 5 + 1);
    op.descriptor_len = static_cast<std::uint32_t>(rng() % 6);
    op.refine_iters = static_cast<std::uint32_t>(rng() % 6);
    op.quant_step = (rng() % 100000 + 1) / 1000.0;
    const VideoSequence v = testing::constant_video(g, op.gop_size, 128);
    const DecodedGop d = decode_gop(encode_gop(testing::as_gop(v), op), g);
    EXPECT_EQ(d.gop.frames, v.frames);
  }
}

TEST(DecodeGop, ConstantLumaIsFixedPointWithDescriptor) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 60; ++i) {
    const FrameGeometry g{static_cast<std::uint32_t>(2 * (rng() % 12 + 1)),
                          static_cast<std::uint32_t>(2 * (rng() % 12 + 1)), Chroma::kGray};
    OperatingPoint op;
    op.gop_size = static_cast<std::uint32_t>(rng() % 10 + 1);
    op.spatial_stride = static_cast<std::uint32_t>(rng() % 9 + 1);
    op.temporal_stride = static_cast<std::uint32_t>(rng() % 5 + 1);
    op.descriptor_len = static_cast<std::uint32_t>(rng() % 6 + 1);
    op.refine_iters = static_cast<std::uint32_t>(rng() % 6);
    op.quant_step = (rng() % 100000 + 1) / 1000.0;
    const auto level = static_cast<std::uint8_t>(rng() % 256);
    const VideoSequence v = testing::constant_video(g, op.gop_size, level);
    const DecodedGop d = decode_gop(encode_gop(testing::as_gop(v), op), g);
    EXPECT_EQ(d.gop.frames, v.frames) << "level " << int(level) << " q " << op.quant_step;
  }
}

TEST(DecodeGop, ConsistencyBoundProperty) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 40; ++i) {
    const FrameGeometry g{static_cast<std::uint32_t>(2 * (rng() % 16 + 2)),
                          static_cast<std::uint32_t>(2 * (rng() % 12 + 2)), Chroma::k420};
    OperatingPoint op;
    op.gop_size = static_cast<std::uint32_t>(rng() % 9 + 1);
    op.spatial_stride = static_cast<std::uint32_t>(rng() % 9 + 1);
    op.temporal_stride = static_cast<std::uint32_t>(rng() % 4 + 1);
    op.descriptor_len = static_cast<std::uint32_t>(rng() % 8);
    op.refine_iters = static_cast<std::uint32_t>(rng() % 5);
    op.quant_step = (rng() % 64000 + 500) / 1000.0;
    const VideoSequence v = i % 2 ? testing::random_video(g, op.gop_size, rng())
                                  : testing::ramp_video(g, op.gop_size, int(rng() % 5));
    const CompressedTokens t = encode_gop(testing::as_gop(v), op);
    const DecodedGop d = decode_gop(t, g, 0);
    EXPECT_EQ(d.report.iterations_run, op.refine_iters);
    EXPECT_LE(d.report.token_consistency_error, op.quant_step / 2 + 1e-6);
    EXPECT_DOUBLE_EQ(d.report.token_consistency_error, token_consistency_error(d.gop, t));
    EXPECT_EQ(d.gop.gop_size(), op.gop_size);
  }
}

TEST(DecodeGop, GeometryMismatch) {
  const FrameGeometry g{16, 16, Chroma::kGray};
  const OperatingPoint op = small_op();
  const CompressedTokens t = encode_gop(testing::as_gop(testing::ramp_video(g, 6, 1)), op);
  EXPECT_THROW(decode_gop(t, FrameGeometry{32, 16, Chroma::kGray}), ShapeError);
}

class CountingPrior : public RefinementPrior {
 public:
  void prepare(const DecodeContext&) override { ++prepared; }
  void refine(LumaVolume& estimate, const DecodeContext&) override {
    ++calls;
    for (auto& f : estimate.frames) {
      for (double& v : f) v += 50.0;  // wildly inconsistent on purpose
    }
  }
  int prepared = 0;
  int calls = 0;
};

TEST(DecodeGop, PluggablePriorIsStillProjected) {
  const FrameGeometry g{16, 16, Chroma::kGray};
  const OperatingPoint op = small_op();
  const CompressedTokens t = encode_gop(testing::as_gop(testing::ramp_video(g, 6, 1)), op);
  CountingPrior prior;
  const DecodedGop d = decode_gop(t, g, 0, {}, &prior);
  EXPECT_EQ(prior.prepared, 1);
  EXPECT_EQ(prior.calls, 3);
  EXPECT_LE(d.report.token_consistency_error, op.quant_step / 2 + 1e-6);
}

TEST(Projection, SourceIsFixedPointAndIdempotent) {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 20; ++i) {
    const FrameGeometry g{20, 14, Chroma::k420};
    OperatingPoint op = small_op();
    op.quant_step = 1 + rng() % 30;
    const Gop src = testing::as_gop(testing::random_video(g, op.gop_size, rng()));
    const CompressedTokens t = encode_gop(src, op);
    EXPECT_EQ(token_consistency_project(src, t).frames, src.frames);

    // A far-off estimate gets pulled inside the bound, then stays put.
    Gop off = src;
    for (auto& f : off.frames) {
      for (auto& s : f.luma().samples) s = static_cast<std::uint8_t>(rng() % 2 ? 0 : 255);
    }
    const Gop once = token_consistency_project(off, t);
    EXPECT_LE(token_consistency_error(once, t), op.quant_step / 2 + 1e-6);
    EXPECT_EQ(token_consistency_project(once, t).frames, once.frames);
  }
}

TEST(QualityVsCompute, RowsAndTiming) {
  const FrameGeometry g{96, 64, Chroma::kGray};
  OperatingPoint op = small_op(9);
  op.spatial_stride = 16;
  const Gop src = testing::as_gop(testing::ramp_video(g, 9, 3));
  const CompressedTokens t = encode_gop(src, op);
  const auto single = measure_quality_vs_compute(t, src, {0}, 1);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].iters, 0u);
  const auto rows = measure_quality_vs_compute(t, src, {8, 1, 0}, 3);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].iters, 0u);
  EXPECT_EQ(rows[1].iters, 1u);
  EXPECT_EQ(rows[2].iters, 8u);
  EXPECT_GE(rows[2].wall_time_s, 0.9 * rows[1].wall_time_s);
}

TEST(QualityVsCompute, MovingGradientCorpusGops) {
  std::size_t gops = 0, better = 0;
  for (std::uint64_t seed : {1, 2}) {
    CorpusEntry e;
    e.generator = "moving-gradient";
    e.seed = seed;
    const VideoSequence v = generate_synthetic(e);
    const OperatingPoint op;
    for (const Gop& gop : segment_gops(v, op.gop_size).gops) {
      const auto rows = measure_quality_vs_compute(encode_gop(gop, op), gop, {0, 8}, 1);
      ++gops;
      better += rows[1].psnr_db >= rows[0].psnr_db;
    }
  }
  EXPECT_GE(static_cast<double>(better) / gops, 0.8) << better << "/" << gops;
}

}  // namespace
}  // namespace gvc
