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

#include <cmath>
#include <map>

#include "gvc/bitstream.h"
#include "gvc/error.h"
#include "gvc/token_encoder.h"
#include "../support/token_gen.h"
#include "../support/video_gen.h"

namespace gvc {
namespace {

std::uint32_t read_u32(const std::vector<std::uint8_t>& b, std::size_t pos) {
  return b[pos] | b[pos + 1] << 8 | b[pos + 2] << 16 | std::uint32_t{b[pos + 3]} << 24;
}

double entropy_bits(const std::vector<std::int32_t>& v) {
  std::map<std::int32_t, double> counts;
  for (auto x : v) counts[x] += 1;
  double bits = 0;
  for (const auto& [x, c] : counts) bits -= c * std::log2(c / v.size());
  return bits;
}

StreamHeader header_for(const FrameGeometry& g, const OperatingPoint& op) {
  StreamHeader h;
  h.geometry = g;
  h.frame_rate = Rational{30000, 1001};
  h.op = op;
  return h;
}

TEST(Residual, IdentityAndPassThrough) {
  testing::TokenGen gen(1);
  const FrameGeometry g{16, 8, Chroma::k420};
  const OperatingPoint op = gen.op();
  const CompressedTokens t = gen.tokens(g, op);
  const ResidualTokens self = residual_encode(t, &t);
  for (auto v : self.descriptor) EXPECT_EQ(v, 0);
  for (auto v : self.latent.values) EXPECT_EQ(v, 0);
  EXPECT_EQ(self.keyframe, t.keyframe);
  const ResidualTokens direct = residual_encode(t, nullptr);
  EXPECT_EQ(direct.descriptor, t.descriptor);
  EXPECT_EQ(direct.latent, t.latent);
  EXPECT_EQ(residual_decode(residual_encode(t, &t), &t, op), t);
}

TEST(Residual, ShapeMismatch) {
  testing::TokenGen gen(2);
  OperatingPoint op = gen.op();
  const CompressedTokens a = gen.tokens({16, 8, Chroma::kGray}, op);
  const CompressedTokens b = gen.tokens({32, 8, Chroma::kGray}, op);
  EXPECT_THROW(residual_encode(a, &b), ShapeError);
}

TEST(Residual, StaticSceneResidualIsCheaper) {
  // A textured but motionless scene: GOP 2 repeats GOP 1.
  VideoSequence v = testing::ramp_video({64, 48, Chroma::k420}, 1, 0);
  for (auto& s : v.frames[0].luma().samples) s = static_cast<std::uint8_t>((s * 37) % 251);
  v.frames.assign(58, v.frames[0]);
  OperatingPoint op;
  op.quant_step = 4;
  op.spatial_stride = 8;
  const Segmentation seg = segment_gops(v, op.gop_size);
  const CompressedTokens t1 = encode_gop(seg.gops[0], op);
  const CompressedTokens t2 = encode_gop(seg.gops[1], op);
  const ResidualTokens r2 = residual_encode(t2, &t1);
  std::vector<std::int32_t> direct = t2.latent.values, residual = r2.latent.values;
  direct.insert(direct.end(), t2.descriptor.begin(), t2.descriptor.end());
  residual.insert(residual.end(), r2.descriptor.begin(), r2.descriptor.end());
  EXPECT_LT(entropy_bits(residual), entropy_bits(direct));
  EXPECT_LT(encode_value_array(residual).size(), encode_value_array(direct).size());
}

TEST(ValueArray, RoundTripsExtremes) {
  const std::vector<std::int32_t> v = {0, -1, 1, 63, -64, 64, 1000000, INT32_MIN, INT32_MAX};
  const auto bytes = encode_value_array(v);
  std::size_t pos = 0;
  EXPECT_EQ(decode_value_array(bytes, pos, v.size()), v);
  EXPECT_EQ(pos, bytes.size());
  EXPECT_TRUE(encode_value_array({}).empty());
}

TEST(Container, LayoutAndMagic) {
  testing::TokenGen gen(3);
  const FrameGeometry g{20, 12, Chroma::k444};
  OperatingPoint op;
  op.quant_step = 12.5;
  op.gop_size = 7;
  StreamHeader h = header_for(g, op);
  std::vector<CompressedTokens> tokens = {gen.tokens(g, op), gen.tokens(g, op)};
  const auto bytes = serialize(h, tokens);
  ASSERT_GE(bytes.size(), kHeaderBytes);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "GVC1");
  EXPECT_EQ(bytes[4] | bytes[5] << 8, 1);
  EXPECT_EQ(read_u32(bytes, 6), 20u);
  EXPECT_EQ(read_u32(bytes, 10), 12u);
  EXPECT_EQ(read_u32(bytes, 14), 30000u);
  EXPECT_EQ(read_u32(bytes, 18), 1001u);
  EXPECT_EQ(bytes[22], 1);  // 4:4:4
  EXPECT_EQ(read_u32(bytes, 23), 7u);
  EXPECT_EQ(read_u32(bytes, 27), 12500u);
  EXPECT_EQ(read_u32(bytes, 31), op.spatial_stride);
  EXPECT_EQ(read_u32(bytes, 35), op.temporal_stride);
  EXPECT_EQ(read_u32(bytes, 39), op.descriptor_len);
  EXPECT_EQ(read_u32(bytes, 43), op.refine_iters);
  EXPECT_EQ(read_u32(bytes, 47), 2u);
  const std::uint32_t len0 = read_u32(bytes, kHeaderBytes);
  const std::uint32_t len1 = read_u32(bytes, kHeaderBytes + 4 + len0);
  EXPECT_EQ(kHeaderBytes + 8 + len0 + len1, bytes.size());
  h.gop_count = 2;
  const DecodedStream d = deserialize(bytes);
  EXPECT_EQ(d.header, h);
  EXPECT_EQ(d.tokens, tokens);
}

TEST(Container, RoundTripProperty) {
  testing::TokenGen gen(2024);
  for (int i = 0; i < 300; ++i) {
    StreamHeader h = gen.header();
    const auto tokens = gen.stream(h, 4);
    h.gop_count = static_cast<std::uint32_t>(tokens.size());
    const DecodedStream d = deserialize(serialize(h, tokens));
    ASSERT_EQ(d.header, h);
    ASSERT_EQ(d.tokens, tokens);
  }
}

TEST(Container, LengthPrefixTamperingDetected) {
  testing::TokenGen gen(77);
  for (int i = 0; i < 200; ++i) {
    StreamHeader h = gen.header();
    const auto tokens = gen.stream(h);
    const auto bytes = serialize(h, tokens);
    std::size_t pos = kHeaderBytes;
    for (std::size_t g = 0; g < tokens.size(); ++g) {
      const std::uint32_t len = read_u32(bytes, pos);
      for (int b = 0; b < 4; ++b) {
        for (std::uint8_t flip : {0x01, 0x80, 0xff}) {
          auto bad = bytes;
          bad[pos + b] ^= flip;
          EXPECT_THROW(deserialize(bad), DecodeError);
        }
      }
      pos += 4 + len;
    }
  }
}

TEST(Container, HeaderCorruptionAndTruncation) {
  testing::TokenGen gen(5);
  StreamHeader h = header_for({16, 16, Chroma::k420}, OperatingPoint{});
  const auto tokens = gen.stream(h, 2);
  const auto bytes = serialize(h, tokens);
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(deserialize(bad), DecodeError);
  bad = bytes;
  bad[4] = 2;
  EXPECT_THROW(deserialize(bad), DecodeError);
  bad = bytes;
  bad[22] = 9;
  EXPECT_THROW(deserialize(bad), DecodeError);
  for (std::size_t cut : {std::size_t{1}, std::size_t{10}, bytes.size() - kHeaderBytes}) {
    std::vector<std::uint8_t> shorter(bytes.begin(), bytes.end() - cut);
    EXPECT_THROW(deserialize(shorter), DecodeError);
  }
  auto longer = bytes;
  longer.push_back(0);
  EXPECT_THROW(deserialize(longer), DecodeError);
}

TEST(Container, SerializeErrors) {
  testing::TokenGen gen(6);
  StreamHeader h = header_for({16, 16, Chroma::kGray}, OperatingPoint{});
  EXPECT_THROW(serialize(h, {}), SerializeError);
  OperatingPoint other;
  other.quant_step = 3;
  const std::vector<CompressedTokens> mismatched = {gen.tokens(h.geometry, other)};
  EXPECT_THROW(serialize(h, mismatched), SerializeError);
  OperatingPoint huge;
  huge.quant_step = 5e6;  // milli-units overflow u32
  StreamHeader hh = header_for({16, 16, Chroma::kGray}, huge);
  const std::vector<CompressedTokens> t = {gen.tokens(hh.geometry, huge)};
  EXPECT_THROW(serialize(hh, t), SerializeError);
}

TEST(MeasureBpp, Definition) {
  EXPECT_NEAR(measure_bpp(8294, 640, 360, 29), 66352.0 / (29.0 * 640 * 360), 1e-15);
  EXPECT_NEAR(measure_bpp(8294, 640, 360, 29), 0.00993, 5e-6);
  EXPECT_DOUBLE_EQ(measure_bpp(kHeaderBytes, 16, 16, 29), 8.0 * kHeaderBytes / (16 * 16 * 29));
  EXPECT_THROW(measure_bpp(10, 0, 16, 29), InvalidArgument);
  EXPECT_THROW(measure_bpp(10, 16, 16, 0), InvalidArgument);
}

}  // namespace
}  // namespace gvc
