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

#include <filesystem>
#include <random>

#include "gvc/bitstream.h"
#include "gvc/channel.h"
#include "gvc/error.h"
#include "../support/token_gen.h"

namespace gvc {
namespace {

LinkModel link(double rate, double delay = 0.0, std::optional<double> deadline = {}) {
  LinkModel l;
  l.rate_bps = rate;
  l.propagation_delay_s = delay;
  l.gop_deadline_s = deadline;
  return l;
}

TEST(Transmit, WholeStream) {
  EXPECT_DOUBLE_EQ(transmit(1e6, link(1e6)).completion_s, 1.0);
  const auto r = transmit(5e5, link(1e6, 0.25));
  EXPECT_DOUBLE_EQ(r.serialization_s, 0.5);
  EXPECT_DOUBLE_EQ(r.completion_s, 0.75);
  EXPECT_THROW(transmit(0, link(1e6)), InvalidArgument);
  EXPECT_THROW(transmit(1, link(0)), InvalidArgument);
}

TEST(Transmit, TwoEqualGops) {
  const std::vector<double> gops = {12345.0, 12345.0};
  const auto r = transmit_gops(0, gops, link(777.0));
  ASSERT_EQ(r.gops.size(), 2u);
  EXPECT_EQ(r.gops[1].completion_s, 2 * r.gops[0].completion_s);
  EXPECT_EQ(r.gops[1].start_s, r.gops[0].completion_s);
}

TEST(Transmit, DeadlinesAllViolated) {
  const std::vector<double> gops(5, 1000.0);
  const auto r = transmit_gops(0, gops, link(1000.0, 0.0, 0.5));
  EXPECT_EQ(r.violations, 5u);
  for (const auto& g : r.gops) EXPECT_TRUE(g.violated);
  const auto ok = transmit_gops(0, gops, link(1000.0, 0.0, 1.0));
  EXPECT_EQ(ok.violations, 0u);
}

TEST(Transmit, LinearityProperty) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(1.0, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double bits = u(rng), rate = u(rng);
    const double k = static_cast<double>(rng() % 16 + 1);
    const double t = transmit(bits, link(rate)).completion_s;
    EXPECT_DOUBLE_EQ(transmit(bits * k, link(rate)).completion_s, t * k);
    EXPECT_DOUBLE_EQ(transmit(bits, link(rate * k)).completion_s, t / k);
  }
}

TEST(BandwidthRatio, Examples) {
  EXPECT_EQ(bandwidth_ratio(100, 100, true).ratio, 1.0);
  const auto a = stream_sizes_from_bpp(0.008, 640, 360, 58);
  const auto b = stream_sizes_from_bpp(0.048, 640, 360, 58);
  EXPECT_NEAR(bandwidth_ratio(a.total_bits(), b.total_bits(), true).ratio, 6.0, 1e-9);
  const auto c = stream_sizes_from_bpp(0.005, 640, 360, 58);
  const auto d = stream_sizes_from_bpp(0.030, 640, 360, 58);
  EXPECT_NEAR(bandwidth_ratio(c.total_bits(), d.total_bits(), false).ratio, 6.0, 1e-9);
  EXPECT_THROW(bandwidth_ratio(0, 5, true), InvalidArgument);
}

TEST(BandwidthRatio, SymmetryProperty) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(1.0, 1e9);
  for (int i = 0; i < 1000; ++i) {
    const double a = u(rng), b = u(rng);
    EXPECT_NEAR(bandwidth_ratio(a, b, false).ratio * bandwidth_ratio(b, a, false).ratio, 1.0,
                1e-12);
  }
}

TEST(StreamSizes, FromBitstreamCountsEveryByte) {
  testing::TokenGen gen(3);
  StreamHeader h = gen.header();
  const auto tokens = gen.stream(h, 3);
  const auto bytes = serialize(h, tokens);
  const auto s = stream_sizes_from_bitstream(bytes, "x");
  EXPECT_EQ(s.total_bits(), 8.0 * bytes.size());
  EXPECT_EQ(s.gop_bits.size(), tokens.size());
  EXPECT_EQ(s.coded_frames, tokens.size() * h.op.gop_size);
}

TEST(Latency, Composition) {
  const auto& p = builtin_profiles();
  const auto t = transmit(1e6, link(1e6, 0.5));
  const auto c = compose_latency(find_profile(p, "4090"), Resolution::k480, t);
  EXPECT_DOUBLE_EQ(c.total_s, 0.95 + 1.5 + 1.35);
}

TEST(Scenario, ParseRunReport) {
  const std::string text = R"({
    "link": {"rate_bps": 64000, "propagation_delay_s": 0.25, "gop_deadline_s": 2.0},
    "stream": {"bpp": 0.008, "width": 640, "height": 360, "frames": 58},
    "reference": {"bpp": 0.048, "width": 640, "height": 360, "frames": 58},
    "equal_quality": true, "quality_evidence": "matched visually",
    "profile": "H200", "resolution": "480p"})";
  const Scenario sc = parse_scenario(text);
  const ScenarioResult r = run_scenario(sc, builtin_profiles());
  ASSERT_TRUE(r.bandwidth);
  EXPECT_NEAR(r.bandwidth->ratio, 6.0, 1e-9);
  EXPECT_NEAR(*r.time_ratio, 6.0, 1e-9);
  ASSERT_TRUE(r.latency);
  EXPECT_DOUBLE_EQ(r.latency->total_s, 0.2 + r.stream.completion_s + 1.13);
  const std::string json = scenario_report_json(r);
  EXPECT_NE(json.find("\"bandwidth_ratio\""), std::string::npos);
  EXPECT_NE(json.find("\"end_to_end\""), std::string::npos);
  EXPECT_EQ(scenario_report_json(run_scenario(sc, builtin_profiles())), json);
}

TEST(Scenario, Malformed) {
  EXPECT_THROW(parse_scenario("{"), ParseError);
  EXPECT_THROW(parse_scenario(R"({"link": {"rate_bps": 0}, "stream": {"bpp": 1,
      "width": 2, "height": 2, "frames": 29}})"), ParseError);
  EXPECT_THROW(parse_scenario(R"({"link": {"rate_bps": 10}})"), ParseError);
  EXPECT_THROW(parse_scenario(R"({"link": {"rate_bps": 10}, "stream":
      {"bitstream": "definitely-missing.gvc"}})"), IoError);
}

}  // namespace
}  // namespace gvc
