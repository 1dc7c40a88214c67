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

#include "gvc/video.h"

#include <unistd.h>

#include <charconv>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string_view>

#include "gvc/error.h"

namespace gvc {

namespace {

constexpr std::string_view kSignature = "YUV4MPEG2";
constexpr std::string_view kFrameTag = "FRAME";
constexpr std::size_t kMaxHeaderLine = 4096;

bool parse_u32(std::string_view text, std::uint32_t& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

Chroma parse_chroma_tag(std::string_view tag) {
  if (tag == "420" || tag == "420jpeg" || tag == "420paldv" ||
      tag == "420mpeg2") {
    return Chroma::k420;
  }
  if (tag == "444") return Chroma::k444;
  if (tag == "mono") return Chroma::kGray;
  throw UnsupportedFormat("unsupported Y4M chroma tag 'C" + std::string(tag) +
                          "'");
}

const char* chroma_tag(Chroma c) {
  switch (c) {
    case Chroma::k420: return "420";
    case Chroma::k444: return "444";
    case Chroma::kGray: return "mono";
  }
  return "420";
}

// Returns the index one past the '\n' ending the line that starts at `pos`,
// or npos if no newline appears within `limit` bytes.
std::size_t find_line_end(std::span<const std::uint8_t> bytes, std::size_t pos,
                          std::size_t limit) {
  const std::size_t end = std::min(bytes.size(), pos + limit);
  for (std::size_t i = pos; i < end; ++i) {
    if (bytes[i] == '\n') return i + 1;
  }
  return std::string_view::npos;
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

void read_frame_payload(std::span<const std::uint8_t> bytes, std::size_t& pos,
                        const FrameGeometry& geometry, Frame& frame) {
  frame.planes.clear();
  for (std::size_t p = 0; p < geometry.plane_count(); ++p) {
    Plane plane(geometry.plane_width(p), geometry.plane_height(p));
    const std::size_t n = plane.samples.size();
    std::memcpy(plane.samples.data(), bytes.data() + pos, n);
    pos += n;
    frame.planes.push_back(std::move(plane));
  }
}

}  // namespace

const char* chroma_name(Chroma c) {
  switch (c) {
    case Chroma::k420: return "C420";
    case Chroma::k444: return "C444";
    case Chroma::kGray: return "GRAY";
  }
  return "?";
}

std::uint32_t FrameGeometry::plane_width(std::size_t plane) const {
  if (plane == 0 || chroma != Chroma::k420) return width;
  return width / 2;
}

std::uint32_t FrameGeometry::plane_height(std::size_t plane) const {
  if (plane == 0 || chroma != Chroma::k420) return height;
  return height / 2;
}

std::size_t FrameGeometry::frame_bytes() const {
  std::size_t total = 0;
  for (std::size_t p = 0; p < plane_count(); ++p) {
    total += std::size_t{plane_width(p)} * plane_height(p);
  }
  return total;
}

void FrameGeometry::validate() const {
  if (width == 0 || height == 0) {
    throw InvalidArgument("frame dimensions must be positive");
  }
  if (chroma == Chroma::k420 && (width % 2 != 0 || height % 2 != 0)) {
    throw InvalidArgument("4:2:0 video requires even width and height, got " +
                          std::to_string(width) + "x" + std::to_string(height));
  }
}

Frame Frame::blank(const FrameGeometry& geometry, std::uint8_t luma) {
  Frame frame;
  for (std::size_t p = 0; p < geometry.plane_count(); ++p) {
    frame.planes.emplace_back(geometry.plane_width(p), geometry.plane_height(p),
                              p == 0 ? luma : std::uint8_t{128});
  }
  return frame;
}

bool Frame::matches(const FrameGeometry& geometry) const {
  if (planes.size() != geometry.plane_count()) return false;
  for (std::size_t p = 0; p < planes.size(); ++p) {
    const Plane& plane = planes[p];
    if (plane.width != geometry.plane_width(p) ||
        plane.height != geometry.plane_height(p) ||
        plane.samples.size() != std::size_t{plane.width} * plane.height) {
      return false;
    }
  }
  return true;
}

void VideoSequence::validate() const {
  geometry.validate();
  if (frame_rate.num == 0 || frame_rate.den == 0) {
    throw InvalidArgument("frame rate must be a positive rational");
  }
  if (frames.empty()) throw InvalidArgument("video has no frames");
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (!frames[i].matches(geometry)) {
      throw InvalidArgument("frame " + std::to_string(i) +
                            " does not match the sequence geometry");
    }
  }
}

std::size_t Segmentation::coded_frames() const {
  std::size_t total = 0;
  for (const Gop& gop : gops) total += gop.frames.size();
  return total;
}

VideoSequence parse_y4m(std::span<const std::uint8_t> bytes,
                        std::vector<std::string>* warnings) {
  const std::size_t header_end = find_line_end(bytes, 0, kMaxHeaderLine);
  if (header_end == std::string_view::npos) {
    throw ParseError("missing Y4M signature line");
  }
  std::string_view header(reinterpret_cast<const char*>(bytes.data()),
                          header_end - 1);
  auto tokens = split_spaces(header);
  if (tokens.empty() || tokens.front() != kSignature) {
    throw ParseError("stream does not start with the YUV4MPEG2 signature");
  }

  VideoSequence video;
  bool have_w = false, have_h = false, have_f = false;
  video.geometry.chroma = Chroma::k420;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    std::string_view tok = tokens[i];
    const char key = tok.front();
    std::string_view value = tok.substr(1);
    switch (key) {
      case 'W':
        if (!parse_u32(value, video.geometry.width)) {
          throw ParseError("malformed width parameter '" + std::string(tok) + "'");
        }
        have_w = true;
        break;
      case 'H':
        if (!parse_u32(value, video.geometry.height)) {
          throw ParseError("malformed height parameter '" + std::string(tok) + "'");
        }
        have_h = true;
        break;
      case 'F': {
        auto colon = value.find(':');
        if (colon == std::string_view::npos ||
            !parse_u32(value.substr(0, colon), video.frame_rate.num) ||
            !parse_u32(value.substr(colon + 1), video.frame_rate.den) ||
            video.frame_rate.num == 0 || video.frame_rate.den == 0) {
          throw ParseError("malformed frame rate parameter '" +
                           std::string(tok) + "'");
        }
        have_f = true;
        break;
      }
      case 'C':
        video.geometry.chroma = parse_chroma_tag(value);
        break;
      case 'I':
        if (value != "p" && value != "?" && warnings) {
          warnings->push_back("interlace mode '" + std::string(tok) +
                              "' ignored; frames are read as progressive");
        }
        break;
      case 'A':
      case 'X':
        break;
      default:
        if (warnings) {
          warnings->push_back("unknown Y4M header parameter '" +
                              std::string(tok) + "' ignored");
        }
        break;
    }
  }
  if (!have_w || !have_h || !have_f) {
    throw ParseError("Y4M signature line must declare W, H and F");
  }
  try {
    video.geometry.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }

  const std::size_t frame_bytes = video.geometry.frame_bytes();
  std::size_t pos = header_end;
  while (pos < bytes.size()) {
    const std::size_t line_end = find_line_end(bytes, pos, kMaxHeaderLine);
    if (line_end == std::string_view::npos) {
      throw TruncationError("incomplete FRAME marker", pos);
    }
    std::string_view marker(reinterpret_cast<const char*>(bytes.data() + pos),
                            line_end - pos - 1);
    if (marker.substr(0, kFrameTag.size()) != kFrameTag ||
        (marker.size() > kFrameTag.size() && marker[kFrameTag.size()] != ' ')) {
      throw ParseError("expected FRAME marker at byte offset " +
                       std::to_string(pos));
    }
    pos = line_end;
    if (bytes.size() - pos < frame_bytes) {
      throw TruncationError(
          "frame " + std::to_string(video.frames.size()) + " needs " +
              std::to_string(frame_bytes) + " payload bytes, " +
              std::to_string(bytes.size() - pos) + " available",
          bytes.size());
    }
    Frame frame;
    read_frame_payload(bytes, pos, video.geometry, frame);
    video.frames.push_back(std::move(frame));
  }
  if (video.frames.empty()) throw ParseError("Y4M stream contains no frames");
  return video;
}

std::vector<std::uint8_t> write_y4m(const VideoSequence& video) {
  video.validate();
  std::string header = std::string(kSignature) + " W" +
                       std::to_string(video.geometry.width) + " H" +
                       std::to_string(video.geometry.height) + " F" +
                       std::to_string(video.frame_rate.num) + ":" +
                       std::to_string(video.frame_rate.den) + " Ip C" +
                       chroma_tag(video.geometry.chroma) + "\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() +
              video.frames.size() * (video.geometry.frame_bytes() + 6));
  for (const Frame& frame : video.frames) {
    out.insert(out.end(), kFrameTag.begin(), kFrameTag.end());
    out.push_back('\n');
    for (const Plane& plane : frame.planes) {
      out.insert(out.end(), plane.samples.begin(), plane.samples.end());
    }
  }
  return out;
}

VideoSequence read_raw_planar(std::span<const std::uint8_t> bytes,
                              const FrameGeometry& geometry,
                              Rational frame_rate) {
  geometry.validate();
  const std::size_t frame_bytes = geometry.frame_bytes();
  if (bytes.empty()) throw ParseError("raw input is empty");
  if (bytes.size() % frame_bytes != 0) {
    throw TruncationError("raw input is not a whole number of " +
                              std::to_string(frame_bytes) + "-byte frames",
                          bytes.size() - bytes.size() % frame_bytes);
  }
  VideoSequence video;
  video.geometry = geometry;
  video.frame_rate = frame_rate;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    Frame frame;
    read_frame_payload(bytes, pos, geometry, frame);
    video.frames.push_back(std::move(frame));
  }
  video.validate();
  return video;
}

Segmentation segment_gops(const VideoSequence& video, std::uint32_t gop_size) {
  if (gop_size == 0) throw InvalidArgument("gop_size must be at least 1");
  Segmentation result;
  const std::size_t n = video.frames.size();
  const std::size_t count = n / gop_size;
  result.gops.reserve(count);
  for (std::size_t g = 0; g < count; ++g) {
    Gop gop;
    gop.index = g;
    gop.geometry = video.geometry;
    auto first = video.frames.begin() + static_cast<std::ptrdiff_t>(g * gop_size);
    gop.frames.assign(first, first + gop_size);
    result.gops.push_back(std::move(gop));
  }
  result.discarded_frames = n - count * gop_size;
  return result;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return data;
}

void write_file_atomic(const std::string& path,
                       std::span<const std::uint8_t> bytes) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("error while writing '" + tmp + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename output into place at '" + path + "'");
  }
}

void write_file_atomic(const std::string& path, const std::string& text) {
  write_file_atomic(
      path, std::span<const std::uint8_t>(
                reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace gvc
