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

#include "gvc/tradeoff.h"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "gvc/error.h"
#include "gvc/video.h"
#include "json.hpp"

namespace gvc {

namespace {

using json = nlohmann::json;

std::string seconds(double s) {
  std::ostringstream os;
  os.precision(6);
  os << s << " s";
  return os.str();
}

double scaled_latency(const StageLatency& l, double scale) {
  return l.encoder_s + l.decoder_s * scale;
}

}  // namespace

const char* resolution_name(Resolution r) {
  switch (r) {
    case Resolution::k480: return "480p";
    case Resolution::k720: return "720p";
    case Resolution::k1080: return "1080p";
  }
  return "?";
}

Resolution parse_resolution(const std::string& text) {
  if (text == "480p" || text == "480") return Resolution::k480;
  if (text == "720p" || text == "720") return Resolution::k720;
  if (text == "1080p" || text == "1080") return Resolution::k1080;
  throw ConfigError("unknown resolution '" + text + "' (expected 480p, 720p or 1080p)");
}

const StageLatency& HardwareProfile::at(Resolution r) const {
  auto it = latency.find(r);
  if (it == latency.end()) {
    throw ProfileError("profile '" + name + "' has no latency entry for " +
                       resolution_name(r));
  }
  return it->second;
}

void HardwareProfile::validate() const {
  if (name.empty()) throw ProfileError("hardware profile without a name");
  for (const auto& [res, l] : latency) {
    if (!(l.encoder_s > 0.0) || !(l.decoder_s > 0.0)) {
      throw ProfileError("profile '" + name + "' has a non-positive latency at " +
                         resolution_name(res));
    }
  }
}

const std::vector<HardwareProfile>& builtin_profiles() {
  // Seconds to encode / decode one 29-frame GOP with the miniaturized model.
  static const std::vector<HardwareProfile> profiles = {
      {"4090",
       {{Resolution::k480, {0.95, 1.35}},
        {Resolution::k720, {1.15, 6.4}},
        {Resolution::k1080, {1.59, 21.5}}}},
      {"A100",
       {{Resolution::k480, {0.64, 1.4}},
        {Resolution::k720, {0.80, 5.5}},
        {Resolution::k1080, {0.85, 18.0}}}},
      {"H200",
       {{Resolution::k480, {0.2, 1.13}},
        {Resolution::k720, {0.3, 2.3}},
        {Resolution::k1080, {0.5, 6.1}}}},
  };
  return profiles;
}

void Budget::validate() const {
  if (!(max_total_latency_s > 0.0)) {
    throw ConfigError("latency budget must be positive");
  }
  if (max_bpp && !(*max_bpp > 0.0)) throw ConfigError("bpp ceiling must be positive");
}

Feasibility feasible(const HardwareProfile& profile, const Budget& budget) {
  budget.validate();
  const StageLatency& l = profile.at(budget.resolution);
  Feasibility f;
  f.encoder_s = l.encoder_s;
  f.decoder_s = l.decoder_s;
  f.total_s = l.encoder_s + l.decoder_s;
  f.feasible = f.total_s <= budget.max_total_latency_s;
  f.explanation = "encoder " + seconds(l.encoder_s) + " + decoder " +
                  seconds(l.decoder_s) + " = " + seconds(f.total_s) +
                  (f.feasible ? " <= " : " > ") + "budget " +
                  seconds(budget.max_total_latency_s) + " on " + profile.name +
                  " at " + resolution_name(budget.resolution);
  return f;
}

Selection select_operating_point(const HardwareProfile& profile,
                                 const Budget& budget,
                                 std::span<const LadderRung> ladder) {
  budget.validate();
  if (ladder.empty()) throw InfeasibleError("operating-point ladder is empty", "empty-ladder");
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    if (ladder[i].predicted_bpp < ladder[i - 1].predicted_bpp) {
      throw ConfigError("ladder must be ordered by predicted bpp ascending");
    }
  }
  const StageLatency& l = profile.at(budget.resolution);
  bool skipped_for_latency = false, skipped_for_rate = false, any_latency_fit = false;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const LadderRung& rung = ladder[i];
    const double latency = scaled_latency(l, rung.latency_scale);
    const bool latency_ok = latency <= budget.max_total_latency_s;
    const bool rate_ok = !budget.max_bpp || rung.predicted_bpp <= *budget.max_bpp;
    any_latency_fit = any_latency_fit || latency_ok;
    if (latency_ok && rate_ok) {
      Selection s;
      s.rung_index = i;
      s.op = rung.op;
      s.predicted_bpp = rung.predicted_bpp;
      s.predicted_latency_s = latency;
      s.binding_constraint = i == 0 ? "unconstrained"
                             : skipped_for_latency ? "latency-bound"
                                                   : "rate-bound";
      s.explanation = "rung " + std::to_string(i) + " predicted " +
                      seconds(latency) + " per GOP within budget " +
                      seconds(budget.max_total_latency_s) +
                      (i == 0 ? "; lowest-rate rung fits"
                              : "; lower-rate rungs exceed the " +
                                    std::string(skipped_for_latency ? "latency" : "rate") +
                                    " budget");
      return s;
    }
    skipped_for_latency = skipped_for_latency || !latency_ok;
    skipped_for_rate = skipped_for_rate || !rate_ok;
  }
  if (!any_latency_fit) {
    throw InfeasibleError("no ladder rung meets the " +
                              seconds(budget.max_total_latency_s) +
                              " latency budget on " + profile.name + " at " +
                              resolution_name(budget.resolution),
                          "latency");
  }
  throw InfeasibleError("rungs that meet the latency budget exceed the bpp ceiling",
                        "rate");
}

std::vector<LadderRung> default_ladder() {
  // predicted_bpp: mean over the default synthetic corpus. latency_scale:
  // measured decode time relative to the default rung.
  auto rung = [](double q, std::uint32_t iters, double bpp, double scale) {
    LadderRung r;
    r.op.quant_step = q;
    r.op.refine_iters = iters;
    r.predicted_bpp = bpp;
    r.latency_scale = scale;
    return r;
  };
  return {
      rung(64.0, 16, 0.0232, 1.84),
      rung(48.0, 8, 0.0279, 1.0),
      rung(32.0, 4, 0.0341, 0.67),
      rung(16.0, 2, 0.0488, 0.5),
      rung(8.0, 0, 0.0633, 0.21),
  };
}

std::vector<HardwareProfile> parse_profiles(const std::string& json_text) {
  std::vector<HardwareProfile> out;
  try {
    const json doc = json::parse(json_text);
    for (const json& p : doc.at("profiles")) {
      HardwareProfile profile;
      profile.name = p.at("name").get<std::string>();
      for (const auto& [key, value] : p.at("latency").items()) {
        profile.latency[parse_resolution(key)] =
            StageLatency{value.at("encoder_s").get<double>(),
                         value.at("decoder_s").get<double>()};
      }
      profile.validate();
      out.push_back(std::move(profile));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid profile file: ") + e.what());
  }
  return out;
}

std::string profiles_json(std::span<const HardwareProfile> profiles) {
  json list = json::array();
  for (const HardwareProfile& p : profiles) {
    json latency = json::object();
    for (const auto& [res, l] : p.latency) {
      latency[resolution_name(res)] = {{"encoder_s", l.encoder_s}, {"decoder_s", l.decoder_s}};
    }
    list.push_back({{"name", p.name}, {"latency", latency}});
  }
  return json{{"profiles", list}}.dump(2) + "\n";
}

std::vector<LadderRung> parse_ladder(const std::string& json_text) {
  std::vector<LadderRung> out;
  try {
    const json doc = json::parse(json_text);
    for (const json& r : doc.at("ladder")) {
      LadderRung rung;
      rung.op.quant_step = r.value("quant_step", rung.op.quant_step);
      rung.op.spatial_stride = r.value("spatial_stride", rung.op.spatial_stride);
      rung.op.temporal_stride = r.value("temporal_stride", rung.op.temporal_stride);
      rung.op.descriptor_len = r.value("descriptor_len", rung.op.descriptor_len);
      rung.op.refine_iters = r.value("refine_iters", rung.op.refine_iters);
      rung.op.gop_size = r.value("gop_size", rung.op.gop_size);
      rung.predicted_bpp = r.at("predicted_bpp").get<double>();
      rung.latency_scale = r.value("latency_scale", 1.0);
      try {
        rung.op.validate();
      } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("invalid ladder rung: ") + e.what());
      }
      if (!(rung.latency_scale > 0.0) || rung.predicted_bpp < 0.0) {
        throw ConfigError("ladder rung needs latency_scale > 0 and predicted_bpp >= 0");
      }
      out.push_back(rung);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid ladder file: ") + e.what());
  }
  return out;
}

std::string ladder_json(std::span<const LadderRung> ladder) {
  json list = json::array();
  for (const LadderRung& r : ladder) {
    list.push_back({{"quant_step", r.op.quant_step},
                    {"spatial_stride", r.op.spatial_stride},
                    {"temporal_stride", r.op.temporal_stride},
                    {"descriptor_len", r.op.descriptor_len},
                    {"refine_iters", r.op.refine_iters},
                    {"gop_size", r.op.gop_size},
                    {"predicted_bpp", r.predicted_bpp},
                    {"latency_scale", r.latency_scale}});
  }
  return json{{"ladder", list}}.dump(2) + "\n";
}

std::vector<HardwareProfile> load_profiles(const std::string& directory) {
  std::vector<HardwareProfile> profiles = builtin_profiles();
  if (directory.empty()) return profiles;
  std::error_code ec;
  if (!std::filesystem::is_directory(directory, ec)) {
    throw ConfigError("profile directory '" + directory + "' does not exist");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    const auto bytes = read_file(path.string());
    for (HardwareProfile& p : parse_profiles(std::string(bytes.begin(), bytes.end()))) {
      auto it = std::find_if(profiles.begin(), profiles.end(),
                             [&](const HardwareProfile& q) { return q.name == p.name; });
      if (it != profiles.end()) {
        *it = std::move(p);
      } else {
        profiles.push_back(std::move(p));
      }
    }
  }
  return profiles;
}

const HardwareProfile& find_profile(std::span<const HardwareProfile> profiles,
                                    const std::string& name) {
  for (const HardwareProfile& p : profiles) {
    if (p.name == name) return p;
  }
  throw ProfileError("unknown hardware profile '" + name + "'");
}

}  // namespace gvc
