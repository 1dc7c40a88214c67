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

#include "gvc/channel.h"

#include <cmath>
#include <filesystem>

#include "gvc/bitstream.h"
#include "gvc/error.h"
#include "json.hpp"

namespace gvc {

namespace {

using json = nlohmann::json;

StreamSizes parse_stream(const json& s, const std::string& base_dir, const std::string& name) {
  if (s.contains("bitstream")) {
    std::filesystem::path path = s.at("bitstream").get<std::string>();
    if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
    const auto bytes = read_file(path.string());
    try {
      return stream_sizes_from_bitstream(bytes, s.value("name", name));
    } catch (const DecodeError& e) {
      throw ParseError("bitstream " + path.string() + ": " + e.what());
    }
  }
  const double bpp = s.at("bpp").get<double>();
  if (!(bpp >= 0.0)) throw ParseError("stream bpp must be non-negative");
  const auto width = s.at("width").get<std::uint32_t>();
  const auto height = s.at("height").get<std::uint32_t>();
  const auto frames = s.at("frames").get<std::size_t>();
  const auto gop_size = s.value("gop_size", std::uint32_t{29});
  try {
    return stream_sizes_from_bpp(bpp, width, height, frames, gop_size, s.value("name", name));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("stream: ") + e.what());
  }
}

json transmission_json(const TransmissionReport& r) {
  json gops = json::array();
  for (const GopTransmission& g : r.gops) {
    json item = {{"index", g.index},
                 {"bits", g.bits},
                 {"start_s", g.start_s},
                 {"completion_s", g.completion_s},
                 {"violated", g.violated}};
    item["deadline_s"] = g.deadline_s ? json(*g.deadline_s) : json(nullptr);
    gops.push_back(item);
  }
  return {{"total_bits", r.total_bits},
          {"serialization_s", r.serialization_s},
          {"completion_s", r.completion_s},
          {"violations", r.violations},
          {"gops", gops}};
}

json stream_json(const StreamSizes& s) {
  return {{"name", s.name},
          {"bpp", s.bpp},
          {"width", s.width},
          {"height", s.height},
          {"coded_frames", s.coded_frames},
          {"gop_count", s.gop_bits.size()},
          {"total_bits", s.total_bits()}};
}

}  // namespace

void LinkModel::validate() const {
  if (!(rate_bps > 0.0) || !std::isfinite(rate_bps)) {
    throw InvalidArgument("link rate must be positive");
  }
  if (!(propagation_delay_s >= 0.0)) throw InvalidArgument("propagation delay must be >= 0");
  if (gop_deadline_s && !(*gop_deadline_s > 0.0)) {
    throw InvalidArgument("GOP deadline must be positive");
  }
}

TransmissionReport transmit(double bits, const LinkModel& link) {
  link.validate();
  if (!(bits > 0.0)) throw InvalidArgument("stream size must be positive");
  TransmissionReport r;
  r.total_bits = bits;
  r.serialization_s = bits / link.rate_bps;
  r.completion_s = link.propagation_delay_s + r.serialization_s;
  return r;
}

TransmissionReport transmit_gops(double header_bits, std::span<const double> gop_bits,
                                 const LinkModel& link) {
  link.validate();
  if (header_bits < 0.0) throw InvalidArgument("header size must be non-negative");
  TransmissionReport r;
  double sent = header_bits;
  for (std::size_t i = 0; i < gop_bits.size(); ++i) {
    if (!(gop_bits[i] >= 0.0)) throw InvalidArgument("GOP size must be non-negative");
    GopTransmission g;
    g.index = i;
    g.bits = gop_bits[i];
    g.start_s = sent / link.rate_bps;
    sent += gop_bits[i];
    g.completion_s = link.propagation_delay_s + sent / link.rate_bps;
    if (link.gop_deadline_s) {
      g.deadline_s = static_cast<double>(i + 1) * *link.gop_deadline_s;
      g.violated = g.completion_s > *g.deadline_s;
      r.violations += g.violated;
    }
    r.gops.push_back(g);
  }
  if (!(sent > 0.0)) throw InvalidArgument("stream size must be positive");
  r.total_bits = sent;
  r.serialization_s = sent / link.rate_bps;
  r.completion_s = link.propagation_delay_s + r.serialization_s;
  return r;
}

BandwidthRatio bandwidth_ratio(double bits_a, double bits_b, bool equal_quality,
                               std::string evidence) {
  if (bits_a == 0.0) throw InvalidArgument("bandwidth ratio against an empty stream");
  if (bits_a < 0.0 || bits_b < 0.0) throw InvalidArgument("stream sizes must be non-negative");
  return BandwidthRatio{bits_b / bits_a, equal_quality, std::move(evidence)};
}

double StreamSizes::total_bits() const {
  double total = header_bits;
  for (double b : gop_bits) total += b;
  return total;
}

StreamSizes stream_sizes_from_bitstream(std::span<const std::uint8_t> bytes, std::string name) {
  const DecodedStream decoded = deserialize(bytes);
  StreamSizes s;
  s.name = std::move(name);
  s.header_bits = 8.0 * kHeaderBytes;
  for (std::size_t len : decoded.payload_bytes) s.gop_bits.push_back(8.0 * (4 + len));
  s.width = decoded.header.geometry.width;
  s.height = decoded.header.geometry.height;
  s.coded_frames = std::size_t{decoded.header.gop_count} * decoded.header.op.gop_size;
  s.bpp = measure_bpp(bytes.size(), s.width, s.height, s.coded_frames);
  return s;
}

StreamSizes stream_sizes_from_bpp(double bpp, std::uint32_t width, std::uint32_t height,
                                  std::size_t coded_frames, std::uint32_t gop_size,
                                  std::string name) {
  if (!(bpp >= 0.0)) throw InvalidArgument("bpp must be non-negative");
  if (width == 0 || height == 0 || coded_frames == 0) {
    throw InvalidArgument("stream geometry and frame count must be positive");
  }
  if (gop_size == 0) throw InvalidArgument("gop_size must be positive");
  StreamSizes s;
  s.name = std::move(name);
  s.bpp = bpp;
  s.width = width;
  s.height = height;
  s.coded_frames = coded_frames;
  const double total = bpp * width * height * static_cast<double>(coded_frames);
  const std::size_t gops = coded_frames / gop_size;
  if (gops == 0) {
    s.gop_bits.push_back(total);
  } else {
    s.gop_bits.assign(gops, total / static_cast<double>(gops));
  }
  return s;
}

LatencyComposition compose_latency(const HardwareProfile& profile, Resolution resolution,
                                   const TransmissionReport& transmission) {
  const StageLatency& l = profile.at(resolution);
  LatencyComposition c;
  c.profile = profile.name;
  c.resolution = resolution;
  c.encode_s = l.encoder_s;
  c.transmit_s = transmission.completion_s;
  c.decode_s = l.decoder_s;
  c.total_s = c.encode_s + c.transmit_s + c.decode_s;
  return c;
}

Scenario parse_scenario(const std::string& json_text, const std::string& base_dir) {
  Scenario sc;
  try {
    const json doc = json::parse(json_text);
    const json& link = doc.at("link");
    sc.link.rate_bps = link.at("rate_bps").get<double>();
    sc.link.propagation_delay_s = link.value("propagation_delay_s", 0.0);
    if (link.contains("gop_deadline_s") && !link.at("gop_deadline_s").is_null()) {
      sc.link.gop_deadline_s = link.at("gop_deadline_s").get<double>();
    }
    sc.stream = parse_stream(doc.at("stream"), base_dir, "stream");
    if (doc.contains("reference")) {
      sc.reference = parse_stream(doc.at("reference"), base_dir, "reference");
    }
    sc.equal_quality = doc.value("equal_quality", false);
    sc.quality_evidence = doc.value("quality_evidence", std::string());
    if (doc.contains("profile")) sc.profile = doc.at("profile").get<std::string>();
    if (doc.contains("resolution")) {
      try {
        sc.resolution = parse_resolution(doc.at("resolution").get<std::string>());
      } catch (const ConfigError& e) {
        throw ParseError(e.what());
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid scenario: ") + e.what());
  }
  try {
    sc.link.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("invalid scenario link: ") + e.what());
  }
  return sc;
}

ScenarioResult run_scenario(const Scenario& scenario,
                            std::span<const HardwareProfile> profiles) {
  ScenarioResult r;
  r.scenario = scenario;
  r.stream = transmit_gops(scenario.stream.header_bits, scenario.stream.gop_bits, scenario.link);
  if (scenario.reference) {
    r.reference = transmit_gops(scenario.reference->header_bits, scenario.reference->gop_bits,
                                scenario.link);
    r.bandwidth = bandwidth_ratio(scenario.stream.total_bits(), scenario.reference->total_bits(),
                                  scenario.equal_quality, scenario.quality_evidence);
    r.time_ratio = r.reference->serialization_s / r.stream.serialization_s;
  }
  if (scenario.profile) {
    r.latency = compose_latency(find_profile(profiles, *scenario.profile), scenario.resolution,
                                r.stream);
  }
  return r;
}

std::string scenario_report_json(const ScenarioResult& result) {
  const Scenario& sc = result.scenario;
  json doc;
  doc["schema"] = "gvc-lab/transmission/v1";
  doc["link"] = {{"rate_bps", sc.link.rate_bps},
                 {"propagation_delay_s", sc.link.propagation_delay_s}};
  doc["link"]["gop_deadline_s"] =
      sc.link.gop_deadline_s ? json(*sc.link.gop_deadline_s) : json(nullptr);
  doc["stream"] = stream_json(sc.stream);
  doc["stream"]["transmission"] = transmission_json(result.stream);
  if (sc.reference && result.reference) {
    doc["reference"] = stream_json(*sc.reference);
    doc["reference"]["transmission"] = transmission_json(*result.reference);
  }
  if (result.bandwidth) {
    doc["bandwidth_ratio"] = {{"ratio", result.bandwidth->ratio},
                              {"time_ratio", *result.time_ratio},
                              {"equal_quality", result.bandwidth->equal_quality},
                              {"evidence", result.bandwidth->evidence}};
  }
  if (result.latency) {
    const LatencyComposition& c = *result.latency;
    doc["end_to_end"] = {{"profile", c.profile},
                         {"resolution", resolution_name(c.resolution)},
                         {"encode_s", c.encode_s},
                         {"transmit_s", c.transmit_s},
                         {"decode_s", c.decode_s},
                         {"total_s", c.total_s}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace gvc
