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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gvc/tokens.h"

namespace gvc {

enum class Resolution { k480, k720, k1080 };

const char* resolution_name(Resolution r);
// Accepts "480p", "720p", "1080p"; throws ConfigError otherwise.
Resolution parse_resolution(const std::string& text);

struct StageLatency {
  double encoder_s = 0.0;
  double decoder_s = 0.0;
};

// Per-GOP (29 frames) encoder and decoder latency, by resolution.
struct HardwareProfile {
  std::string name;
  std::map<Resolution, StageLatency> latency;

  // Throws ProfileError if the resolution is missing.
  const StageLatency& at(Resolution r) const;
  void validate() const;
};

// The shipped profiles: "4090", "A100", "H200".
const std::vector<HardwareProfile>& builtin_profiles();

struct Budget {
  double max_total_latency_s = 0.0;
  std::optional<double> max_bpp;
  Resolution resolution = Resolution::k480;

  void validate() const;
};

struct Feasibility {
  bool feasible = false;
  double encoder_s = 0.0;
  double decoder_s = 0.0;
  double total_s = 0.0;
  std::string explanation;
};

Feasibility feasible(const HardwareProfile& profile, const Budget& budget);

struct LadderRung {
  OperatingPoint op;
  double predicted_bpp = 0.0;
  // Multiplier on the profile decoder latency at this rung's refine_iters.
  double latency_scale = 1.0;
};

struct Selection {
  std::size_t rung_index = 0;
  OperatingPoint op;
  double predicted_bpp = 0.0;
  double predicted_latency_s = 0.0;
  // "unconstrained" when the first rung fits; "latency-bound" or
  // "rate-bound" naming what ruled out the cheaper rungs before it.
  std::string binding_constraint;
  std::string explanation;
};

// Lowest-bpp rung meeting both the latency and rate budgets, first in ladder
// order on ties. Throws InfeasibleError naming the binding constraint.
Selection select_operating_point(const HardwareProfile& profile,
                                 const Budget& budget,
                                 std::span<const LadderRung> ladder);

std::vector<LadderRung> default_ladder();

// JSON configuration. Profiles:
//   {"profiles": [{"name": "...", "latency": {"480p": {"encoder_s": ..,
//   "decoder_s": ..}, ...}}]}
// Ladder:
//   {"ladder": [{"quant_step": .., "spatial_stride": .., ...,
//   "predicted_bpp": .., "latency_scale": ..}]}
std::vector<HardwareProfile> parse_profiles(const std::string& json_text);
std::string profiles_json(std::span<const HardwareProfile> profiles);
std::vector<LadderRung> parse_ladder(const std::string& json_text);
std::string ladder_json(std::span<const LadderRung> ladder);

// Built-in profiles followed by every *.json in `directory` (if non-empty);
// later definitions replace earlier ones of the same name.
std::vector<HardwareProfile> load_profiles(const std::string& directory);
const HardwareProfile& find_profile(std::span<const HardwareProfile> profiles,
                                    const std::string& name);

}  // namespace gvc
