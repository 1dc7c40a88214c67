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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gvc {

enum class Chroma : std::uint8_t { k420 = 0, k444 = 1, kGray = 2 };

const char* chroma_name(Chroma c);

struct Rational {
  std::uint32_t num = 25;
  std::uint32_t den = 1;

  double value() const { return static_cast<double>(num) / den; }
  bool operator==(const Rational&) const = default;
};

// One 8-bit sample plane, row-major with no padding.
struct Plane {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> samples;

  Plane() = default;
  Plane(std::uint32_t w, std::uint32_t h, std::uint8_t fill = 0)
      : width(w), height(h), samples(std::size_t{w} * h, fill) {}

  std::uint8_t at(std::uint32_t x, std::uint32_t y) const {
    return samples[std::size_t{y} * width + x];
  }
  std::uint8_t& at(std::uint32_t x, std::uint32_t y) {
    return samples[std::size_t{y} * width + x];
  }
  bool operator==(const Plane&) const = default;
};

struct FrameGeometry {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  Chroma chroma = Chroma::k420;

  std::size_t plane_count() const { return chroma == Chroma::kGray ? 1 : 3; }
  std::uint32_t plane_width(std::size_t plane) const;
  std::uint32_t plane_height(std::size_t plane) const;
  std::size_t frame_bytes() const;
  // Throws InvalidArgument if dimensions are zero or odd for 4:2:0.
  void validate() const;
  bool operator==(const FrameGeometry&) const = default;
};

struct Frame {
  std::vector<Plane> planes;

  // Allocates planes for `geometry`; luma is filled with `luma`, chroma
  // planes with the neutral value 128.
  static Frame blank(const FrameGeometry& geometry, std::uint8_t luma = 128);

  const Plane& luma() const { return planes.front(); }
  Plane& luma() { return planes.front(); }
  bool matches(const FrameGeometry& geometry) const;
  bool operator==(const Frame&) const = default;
};

struct VideoSequence {
  FrameGeometry geometry;
  Rational frame_rate;
  std::vector<Frame> frames;

  std::size_t frame_count() const { return frames.size(); }
  // Checks every invariant: geometry, non-empty, per-frame plane sizes.
  void validate() const;
  bool operator==(const VideoSequence&) const = default;
};

inline constexpr std::uint32_t kDefaultGopSize = 29;

struct Gop {
  std::size_t index = 0;
  FrameGeometry geometry;
  std::vector<Frame> frames;

  std::uint32_t gop_size() const {
    return static_cast<std::uint32_t>(frames.size());
  }
};

struct Segmentation {
  std::vector<Gop> gops;
  std::size_t discarded_frames = 0;

  std::size_t coded_frames() const;
};

// Y4M reader. Unknown header parameters are skipped; each one skipped adds a
// line to `warnings` when it is non-null.
VideoSequence parse_y4m(std::span<const std::uint8_t> bytes,
                        std::vector<std::string>* warnings = nullptr);

std::vector<std::uint8_t> write_y4m(const VideoSequence& video);

// Headerless planar input; the byte count must be a whole number of frames.
VideoSequence read_raw_planar(std::span<const std::uint8_t> bytes,
                              const FrameGeometry& geometry,
                              Rational frame_rate);

// Splits into floor(n / gop_size) complete GOPs; the trailing remainder is
// dropped and counted in `discarded_frames`.
Segmentation segment_gops(const VideoSequence& video, std::uint32_t gop_size);

std::vector<std::uint8_t> read_file(const std::string& path);
// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string& path,
                       std::span<const std::uint8_t> bytes);
void write_file_atomic(const std::string& path, const std::string& text);

}  // namespace gvc
