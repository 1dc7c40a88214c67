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

#include <atomic>
#include <stdexcept>

#include "gvc/codec.h"
#include "gvc/error.h"
#include "../support/video_gen.h"

namespace gvc {
namespace {

OperatingPoint small_op() {
  OperatingPoint op;
  op.gop_size = 5;
  op.spatial_stride = 4;
  op.temporal_stride = 2;
  op.descriptor_len = 4;
  op.refine_iters = 3;
  return op;
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(97);
  parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  parallel_for(0, 4, [](std::size_t) { FAIL(); });
}

TEST(ParallelFor, RethrowsLowestFailure) {
  try {
    parallel_for(20, 3, [](std::size_t i) {
      if (i == 7 || i == 13) throw std::runtime_error(std::to_string(i));
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "7");
  }
}

TEST(Codec, ThreadCountInvariance) {
  const FrameGeometry g{48, 32, Chroma::k420};
  const auto video = testing::ramp_video(g, 17, 2);
  const auto one = encode_sequence(video, small_op(), 1);
  const auto four = encode_sequence(video, small_op(), 4);
  EXPECT_EQ(one.bytes, four.bytes);
  EXPECT_EQ(one.gop_count, 3u);
  EXPECT_EQ(one.coded_frames, 15u);
  EXPECT_EQ(one.discarded_frames, 2u);
  const auto d1 = decode_stream(one.bytes, 1);
  const auto d4 = decode_stream(one.bytes, 4);
  EXPECT_EQ(d1.video, d4.video);
  EXPECT_EQ(d1.video.frame_count(), one.coded_frames);
  EXPECT_EQ(d1.video.geometry, g);
  EXPECT_EQ(d1.reports.size(), 3u);
}

TEST(Codec, TooShortInput) {
  const FrameGeometry g{16, 16, Chroma::k420};
  EXPECT_THROW(encode_sequence(testing::constant_video(g, 4, 9), small_op()), EncodeError);
}

TEST(Codec, EvaluateFillsMetrics) {
  const FrameGeometry g{32, 32, Chroma::k420};
  const auto rt = evaluate_sequence("ramp", testing::ramp_video(g, 10, 1), small_op());
  EXPECT_EQ(rt.metrics.name, "ramp");
  EXPECT_EQ(rt.metrics.coded_frames, 10u);
  EXPECT_EQ(rt.metrics.bitstream_bytes, rt.encoded.bytes.size());
  EXPECT_GT(rt.metrics.psnr_db, 10.0);
  ASSERT_EQ(rt.metrics.gops.size(), 2u);
  for (const auto& s : rt.metrics.gops) {
    EXPECT_EQ(s.consistency_bound, small_op().quant_step / 2);
    EXPECT_LE(s.token_consistency_error, s.consistency_bound);
  }
}

}  // namespace
}  // namespace gvc
