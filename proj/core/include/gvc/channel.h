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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gvc/tradeoff.h"

namespace gvc {

// Serial, lossless link.
struct LinkModel {
  double rate_bps = 0.0;
  double propagation_delay_s = 0.0;
  // GOP i must have arrived by (i + 1) * gop_deadline_s.
  std::optional<double> gop_deadline_s;

  void validate() const;  // InvalidArgument
};

struct GopTransmission {
  std::size_t index = 0;
  double bits = 0.0;
  double start_s = 0.0;  // first bit on the wire
  double completion_s = 0.0;  // last bit received
  std::optional<double> deadline_s;
  bool violated = false;
};

struct TransmissionReport {
  double total_bits = 0.0;
  // total_bits / rate; the delay-free part of the completion time.
  double serialization_s = 0.0;
  double completion_s = 0.0;
  std::vector<GopTransmission> gops;
  std::size_t violations = 0;
};

// Whole stream as one unit: completion = delay + bits / rate.
TransmissionReport transmit(double bits, const LinkModel& link);

// Container order: the header leaves first, then each GOP payload in turn.
TransmissionReport transmit_gops(double header_bits, std::span<const double> gop_bits,
                                 const LinkModel& link);

struct BandwidthRatio {
  double ratio = 0.0;  // bits_b / bits_a
  bool equal_quality = false;
  std::string evidence;
};

// Throws InvalidArgument when bits_a is zero.
BandwidthRatio bandwidth_ratio(double bits_a, double bits_b, bool equal_quality,
                               std::string evidence = {});

// Bit budget of one stream, either measured from a container or configured
// as bpp over a geometry (reference codecs are never run here).
struct StreamSizes {
  std::string name;
  double header_bits = 0.0;
  std::vector<double> gop_bits;
  double bpp = 0.0;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::size_t coded_frames = 0;

  double total_bits() const;
};

// Throws DecodeError if the container is malformed.
StreamSizes stream_sizes_from_bitstream(std::span<const std::uint8_t> bytes,
                                        std::string name = {});
// Spreads bpp * width * height * coded_frames evenly over the whole GOPs.
StreamSizes stream_sizes_from_bpp(double bpp, std::uint32_t width, std::uint32_t height,
                                  std::size_t coded_frames, std::uint32_t gop_size = 29,
                                  std::string name = {});

struct LatencyComposition {
  std::string profile;
  Resolution resolution = Resolution::k480;
  double encode_s = 0.0;
  double transmit_s = 0.0;
  double decode_s = 0.0;
  double total_s = 0.0;
};

// encode latency (profile) + transmit completion + decode latency (profile).
LatencyComposition compose_latency(const HardwareProfile& profile, Resolution resolution,
                                   const TransmissionReport& transmission);

struct Scenario {
  LinkModel link;
  StreamSizes stream;
  std::optional<StreamSizes> reference;
  bool equal_quality = false;
  std::string quality_evidence;
  std::optional<std::string> profile;
  Resolution resolution = Resolution::k480;
};

// {"link": {"rate_bps", "propagation_delay_s", "gop_deadline_s"?},
//  "stream": {"bitstream": path} | {"bpp", "width", "height", "frames",
//  "gop_size"?}, "reference": {...}?, "equal_quality"?, "quality_evidence"?,
//  "profile"?, "resolution"?}
// Relative bitstream paths resolve against base_dir. Malformed text throws
// ParseError; unreadable bitstreams throw IoError.
Scenario parse_scenario(const std::string& json_text, const std::string& base_dir = ".");

struct ScenarioResult {
  Scenario scenario;
  TransmissionReport stream;
  std::optional<TransmissionReport> reference;
  std::optional<BandwidthRatio> bandwidth;
  // Reference serialization time over stream serialization time.
  std::optional<double> time_ratio;
  std::optional<LatencyComposition> latency;
};

ScenarioResult run_scenario(const Scenario& scenario,
                            std::span<const HardwareProfile> profiles);
std::string scenario_report_json(const ScenarioResult& result);

}  // namespace gvc
