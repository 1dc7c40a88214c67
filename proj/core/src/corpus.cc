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

#include "gvc/corpus.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "gvc/error.h"
#include "json.hpp"

namespace gvc {

namespace {

using json = nlohmann::json;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Triangle wave with period 1, range [-1, 1].
double tri(double u) {
  const double f = u - std::floor(u);
  return 4.0 * std::abs(f - 0.5) - 1.0;
}

std::uint8_t to_sample(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::llround(v), 0LL, 255LL));
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

template <typename Fn>
VideoSequence render(const CorpusEntry& e, Fn&& luma_at) {
  VideoSequence video;
  video.geometry = FrameGeometry{e.width, e.height, Chroma::k420};
  video.frame_rate = e.frame_rate;
  video.frames.reserve(e.frames);
  for (std::uint32_t t = 0; t < e.frames; ++t) {
    Frame frame = Frame::blank(video.geometry);
    Plane& luma = frame.luma();
    for (std::uint32_t y = 0; y < e.height; ++y) {
      for (std::uint32_t x = 0; x < e.width; ++x) {
        luma.at(x, y) = luma_at(t, x, y);
      }
    }
    video.frames.push_back(std::move(frame));
  }
  return video;
}

VideoSequence make_static(const CorpusEntry& e) {
  // A flat field: the one content class the codec reproduces exactly.
  Rng rng(e.seed);
  const std::uint8_t level = to_sample(rng.uniform(16.0, 235.0));
  return render(e, [&](std::uint32_t, std::uint32_t, std::uint32_t) { return level; });
}

VideoSequence make_moving_gradient(const CorpusEntry& e) {
  Rng rng(e.seed);
  const double period_x = rng.uniform(200.0, 600.0);
  const double period_y = rng.uniform(200.0, 600.0);
  const double vx = rng.uniform(0.5, 2.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
  const double vy = rng.uniform(0.5, 2.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
  const double phase = rng.uniform();
  return render(e, [&](std::uint32_t t, std::uint32_t x, std::uint32_t y) {
    const double u = (x + vx * t) / period_x + (y + vy * t) / period_y + phase;
    return to_sample(128.0 + 90.0 * tri(u));
  });
}

VideoSequence make_bouncing_blocks(const CorpusEntry& e) {
  Rng rng(e.seed);
  struct Block {
    double x, y, vx, vy, size;
    std::uint8_t luma;
  };
  std::vector<Block> blocks;
  for (int i = 0; i < 4; ++i) {
    Block b;
    b.size = std::min<double>(rng.uniform(24.0, 64.0), std::min(e.width, e.height));
    b.x = rng.uniform(0.0, e.width - b.size);
    b.y = rng.uniform(0.0, e.height - b.size);
    b.vx = rng.uniform(1.0, 4.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
    b.vy = rng.uniform(1.0, 4.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
    b.luma = to_sample(rng.uniform(0.0, 255.0));
    blocks.push_back(b);
  }
  // Positions per frame with reflection at the borders.
  std::vector<std::vector<Block>> timeline(e.frames);
  for (std::uint32_t t = 0; t < e.frames; ++t) {
    timeline[t] = blocks;
    for (Block& b : blocks) {
      b.x += b.vx;
      b.y += b.vy;
      if (b.x < 0) { b.x = -b.x; b.vx = -b.vx; }
      if (b.y < 0) { b.y = -b.y; b.vy = -b.vy; }
      const double max_x = e.width - b.size, max_y = e.height - b.size;
      if (b.x > max_x) { b.x = 2 * max_x - b.x; b.vx = -b.vx; }
      if (b.y > max_y) { b.y = 2 * max_y - b.y; b.vy = -b.vy; }
    }
  }
  return render(e, [&](std::uint32_t t, std::uint32_t x, std::uint32_t y) {
    // Later blocks are drawn on top.
    for (auto it = timeline[t].rbegin(); it != timeline[t].rend(); ++it) {
      const double bx = std::floor(it->x), by = std::floor(it->y);
      if (x >= bx && x < bx + it->size && y >= by && y < by + it->size) return it->luma;
    }
    return to_sample(64.0 + 64.0 * x / e.width + 32.0 * y / e.height);
  });
}

VideoSequence make_textured_pan(const CorpusEntry& e) {
  Rng rng(e.seed);
  struct Wave { double fx, fy, amp, phase; };
  std::vector<Wave> waves;
  for (int i = 0; i < 4; ++i) {
    waves.push_back({rng.uniform(1.0 / 32, 1.0 / 8), rng.uniform(1.0 / 32, 1.0 / 8),
                     rng.uniform(10.0, 25.0), rng.uniform()});
  }
  const double pan_x = rng.uniform(1.0, 3.0);
  const double pan_y = rng.uniform(-1.0, 1.0);
  const std::uint64_t salt = rng.bits();
  return render(e, [&](std::uint32_t t, std::uint32_t x, std::uint32_t y) {
    const double u = x + pan_x * t;
    const double v = y + pan_y * t;
    double value = 128.0;
    for (const Wave& w : waves) value += w.amp * tri(w.fx * u + w.fy * v + w.phase);
    // Grain anchored to texture coordinates so it pans with the content.
    const auto gx = static_cast<std::int64_t>(std::floor(u));
    const auto gy = static_cast<std::int64_t>(std::floor(v));
    const std::uint64_t h = splitmix(salt ^ (static_cast<std::uint64_t>(gx) * 0x100000001b3ull) ^
                                     (static_cast<std::uint64_t>(gy) << 32));
    value += static_cast<double>(h & 0x0f) - 7.5;
    return to_sample(value);
  });
}

VideoSequence make_noise(const CorpusEntry& e) {
  Rng rng(e.seed);
  return render(e, [&](std::uint32_t, std::uint32_t, std::uint32_t) {
    return static_cast<std::uint8_t>(rng.bits() >> 56);
  });
}

}  // namespace

const std::vector<std::string>& generator_names() {
  static const std::vector<std::string> names = {
      "static", "moving-gradient", "bouncing-blocks", "textured-pan", "noise"};
  return names;
}

VideoSequence generate_synthetic(const CorpusEntry& entry) {
  if (entry.width == 0 || entry.height == 0 || entry.width % 2 || entry.height % 2) {
    throw ConfigError("synthetic geometry must be positive and even");
  }
  if (entry.frames == 0) throw ConfigError("synthetic sequence needs frames");
  if (entry.frame_rate.num == 0 || entry.frame_rate.den == 0) {
    throw ConfigError("synthetic frame rate must be positive");
  }
  const std::string& g = entry.generator;
  if (g == "static") return make_static(entry);
  if (g == "moving-gradient") return make_moving_gradient(entry);
  if (g == "bouncing-blocks") return make_bouncing_blocks(entry);
  if (g == "textured-pan") return make_textured_pan(entry);
  if (g == "noise") return make_noise(entry);
  throw ConfigError("unknown synthetic generator '" + g + "'");
}

std::vector<VideoSequence> generate_synthetic_corpus(std::span<const CorpusEntry> entries) {
  std::vector<VideoSequence> out;
  out.reserve(entries.size());
  for (const CorpusEntry& e : entries) out.push_back(generate_synthetic(e));
  return out;
}

std::vector<CorpusEntry> default_corpus() {
  std::vector<CorpusEntry> entries;
  for (const std::string& g : generator_names()) {
    for (std::uint64_t seed : {1, 2}) {
      CorpusEntry e;
      e.name = g + "-" + std::to_string(seed);
      e.generator = g;
      e.seed = seed;
      entries.push_back(e);
    }
  }
  return entries;
}

std::vector<CorpusEntry> parse_corpus_manifest(const std::string& json_text) {
  std::vector<CorpusEntry> entries;
  try {
    const json doc = json::parse(json_text);
    for (const json& s : doc.at("sequences")) {
      CorpusEntry e;
      e.name = s.at("name").get<std::string>();
      e.generator = s.at("generator").get<std::string>();
      e.seed = s.at("seed").get<std::uint64_t>();
      e.width = s.value("width", e.width);
      e.height = s.value("height", e.height);
      e.frames = s.value("frames", e.frames);
      if (s.contains("fps")) {
        e.frame_rate.num = s.at("fps").at(0).get<std::uint32_t>();
        e.frame_rate.den = s.at("fps").at(1).get<std::uint32_t>();
      }
      entries.push_back(std::move(e));
    }
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("invalid corpus manifest: ") + ex.what());
  }
  if (entries.empty()) throw ConfigError("corpus manifest lists no sequences");
  return entries;
}

std::string corpus_manifest_json(std::span<const CorpusEntry> entries) {
  json doc;
  doc["schema"] = "gvc-lab/corpus/v1";
  json list = json::array();
  for (const CorpusEntry& e : entries) {
    list.push_back({{"name", e.name},
                    {"generator", e.generator},
                    {"seed", e.seed},
                    {"width", e.width},
                    {"height", e.height},
                    {"frames", e.frames},
                    {"fps", {e.frame_rate.num, e.frame_rate.den}}});
  }
  doc["sequences"] = list;
  return doc.dump(2) + "\n";
}

}  // namespace gvc
