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
#include <span>
#include <string>
#include <vector>

#include "gvc/video.h"

namespace gvc {

// One synthetic sequence, fully determined by its fields.
struct CorpusEntry {
  std::string name;
  std::string generator;  // static | moving-gradient | bouncing-blocks |
                          // textured-pan | noise
  std::uint64_t seed = 0;
  std::uint32_t width = 640;
  std::uint32_t height = 360;
  std::uint32_t frames = 64;
  Rational frame_rate{30, 1};
};

const std::vector<std::string>& generator_names();

// 4:2:0 output with neutral chroma. Uses only IEEE basic arithmetic and a
// Mersenne Twister, so the bytes are identical on every conforming platform.
// Throws ConfigError for an unknown generator.
VideoSequence generate_synthetic(const CorpusEntry& entry);

std::vector<VideoSequence> generate_synthetic_corpus(std::span<const CorpusEntry> entries);

// Ten 640x360 sequences of 64 frames: two seeds of each generator.
std::vector<CorpusEntry> default_corpus();

std::vector<CorpusEntry> parse_corpus_manifest(const std::string& json_text);
std::string corpus_manifest_json(std::span<const CorpusEntry> entries);

}  // namespace gvc
