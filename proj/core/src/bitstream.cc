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

#include "gvc/bitstream.h"

#include <algorithm>
#include <limits>
#include <string>

#include "gvc/entropy.h"
#include "gvc/error.h"

namespace gvc {

namespace {

class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    for (int i = 0; i < 2; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void varint(std::uint64_t v) {
    while (v >= 0x80) {
      out_.push_back(static_cast<std::uint8_t>(v | 0x80));
      v >>= 7;
    }
    out_.push_back(static_cast<std::uint8_t>(v));
  }
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class ByteReader {
 public:
  ByteReader(std::span<const std::uint8_t> data, std::size_t& pos)
      : data_(data), pos_(pos) {}

  void need(std::size_t n, const char* what) const {
    if (data_.size() - pos_ < n) {
      throw DecodeError(std::string("truncated ") + what + " at byte offset " +
                        std::to_string(pos_));
    }
  }
  std::uint8_t u8(const char* what) {
    need(1, what);
    return data_[pos_++];
  }
  std::uint16_t u16(const char* what) {
    need(2, what);
    std::uint16_t v = static_cast<std::uint16_t>(data_[pos_] | (data_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  std::uint32_t u32(const char* what) {
    need(4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{data_[pos_ + i]} << (8 * i);
    pos_ += 4;
    return v;
  }
  std::uint64_t varint(const char* what) {
    std::uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      const std::uint8_t b = u8(what);
      v |= std::uint64_t{b & 0x7fu} << shift;
      if ((b & 0x80) == 0) return v;
    }
    throw DecodeError(std::string("overlong varint in ") + what);
  }
  std::span<const std::uint8_t> take(std::size_t n, const char* what) {
    need(n, what);
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t& pos_;
};

std::uint32_t zigzag(std::int32_t v) {
  return (static_cast<std::uint32_t>(v) << 1) ^ static_cast<std::uint32_t>(v >> 31);
}

std::int32_t unzigzag(std::uint32_t z) {
  return static_cast<std::int32_t>((z >> 1) ^ (~(z & 1) + 1));
}

// Residual arithmetic wraps modulo 2^32 so corrupt input cannot overflow.
std::int32_t wrap_sub(std::int32_t a, std::int32_t b) {
  return static_cast<std::int32_t>(static_cast<std::uint32_t>(a) -
                                   static_cast<std::uint32_t>(b));
}

std::int32_t wrap_add(std::int32_t a, std::int32_t b) {
  return static_cast<std::int32_t>(static_cast<std::uint32_t>(a) +
                                   static_cast<std::uint32_t>(b));
}

constexpr std::uint64_t kMaxPixelsPerFrame = std::uint64_t{16384} * 16384;

std::uint32_t checked_u32(std::uint64_t v, const char* field) {
  if (v > std::numeric_limits<std::uint32_t>::max()) {
    throw SerializeError(std::string("header field ") + field +
                         " does not fit in 32 bits");
  }
  return static_cast<std::uint32_t>(v);
}

void check_same_shape(const LatentGrid& a, const LatentGrid& b) {
  if (a.slices != b.slices || a.rows != b.rows || a.cols != b.cols ||
      a.values.size() != b.values.size()) {
    throw ShapeError("latent grid shape differs from its predictor");
  }
}

}  // namespace

ResidualTokens residual_encode(const CompressedTokens& tokens,
                               const CompressedTokens* predictor) {
  ResidualTokens out{tokens.keyframe, tokens.descriptor, tokens.latent};
  if (predictor == nullptr) return out;
  if (predictor->descriptor.size() != tokens.descriptor.size()) {
    throw ShapeError("descriptor length differs from its predictor");
  }
  check_same_shape(tokens.latent, predictor->latent);
  for (std::size_t i = 0; i < out.descriptor.size(); ++i) {
    out.descriptor[i] = wrap_sub(out.descriptor[i], predictor->descriptor[i]);
  }
  for (std::size_t i = 0; i < out.latent.values.size(); ++i) {
    out.latent.values[i] =
        wrap_sub(out.latent.values[i], predictor->latent.values[i]);
  }
  return out;
}

CompressedTokens residual_decode(const ResidualTokens& residual,
                                 const CompressedTokens* predictor,
                                 const OperatingPoint& op) {
  CompressedTokens out{residual.keyframe, residual.descriptor, residual.latent, op};
  if (predictor == nullptr) return out;
  if (predictor->descriptor.size() != out.descriptor.size()) {
    throw ShapeError("descriptor length differs from its predictor");
  }
  check_same_shape(out.latent, predictor->latent);
  for (std::size_t i = 0; i < out.descriptor.size(); ++i) {
    out.descriptor[i] = wrap_add(out.descriptor[i], predictor->descriptor[i]);
  }
  for (std::size_t i = 0; i < out.latent.values.size(); ++i) {
    out.latent.values[i] =
        wrap_add(out.latent.values[i], predictor->latent.values[i]);
  }
  return out;
}

std::vector<std::uint8_t> encode_value_array(std::span<const std::int32_t> values) {
  ByteWriter w;
  if (values.empty()) return w.take();
  std::vector<std::uint32_t> symbols(values.size());
  ByteWriter escapes;
  std::uint32_t max_symbol = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::uint32_t z = zigzag(values[i]);
    const std::uint32_t s = std::min(z, kEscapeSymbol);
    if (s == kEscapeSymbol) escapes.varint(z - kEscapeSymbol);
    symbols[i] = s;
    max_symbol = std::max(max_symbol, s);
  }
  std::vector<std::uint64_t> counts(max_symbol + 1, 0);
  for (std::uint32_t s : symbols) ++counts[s];
  const SymbolModel model = SymbolModel::from_counts(counts);
  const std::vector<std::uint8_t> escape_bytes = escapes.take();
  const std::vector<std::uint8_t> coded = entropy_encode(symbols, model);

  w.varint(model.alphabet_size());
  for (std::uint32_t f : model.frequencies()) w.varint(f);
  w.varint(escape_bytes.size());
  w.bytes(escape_bytes);
  w.varint(coded.size());
  w.bytes(coded);
  return w.take();
}

std::vector<std::int32_t> decode_value_array(std::span<const std::uint8_t> bytes,
                                             std::size_t& pos, std::size_t count) {
  std::vector<std::int32_t> values;
  if (count == 0) return values;
  ByteReader r(bytes, pos);
  const std::uint64_t alphabet = r.varint("symbol table");
  if (alphabet == 0 || alphabet > kEscapeSymbol + 1) {
    throw DecodeError("symbol table alphabet size " + std::to_string(alphabet) +
                      " out of range");
  }
  std::vector<std::uint32_t> freqs(alphabet);
  for (auto& f : freqs) {
    const std::uint64_t v = r.varint("symbol table");
    if (v > kProbScale) throw DecodeError("symbol frequency out of range");
    f = static_cast<std::uint32_t>(v);
  }
  const SymbolModel model = SymbolModel::from_frequencies(std::move(freqs));
  const auto escape_bytes = r.take(r.varint("escape length"), "escape data");
  const auto coded = r.take(r.varint("entropy chunk length"), "entropy chunk");
  const std::vector<std::uint32_t> symbols = entropy_decode(coded, model, count);

  std::size_t escape_pos = 0;
  ByteReader escapes(escape_bytes, escape_pos);
  values.reserve(count);
  for (std::uint32_t s : symbols) {
    std::uint64_t z = s;
    if (s == kEscapeSymbol) {
      z += escapes.varint("escape data");
      if (z > std::numeric_limits<std::uint32_t>::max()) {
        throw DecodeError("escaped value exceeds 32 bits");
      }
    }
    values.push_back(unzigzag(static_cast<std::uint32_t>(z)));
  }
  if (escape_pos != escape_bytes.size()) {
    throw DecodeError("unused bytes in escape data");
  }
  return values;
}

std::vector<std::uint8_t> encode_gop_payload(const ResidualTokens& residual) {
  ByteWriter w;
  w.bytes(encode_value_array(residual.keyframe.coefficients));
  w.bytes(encode_value_array(residual.descriptor));
  w.bytes(encode_value_array(residual.latent.values));
  return w.take();
}

std::vector<std::uint8_t> serialize(const StreamHeader& header,
                                    std::span<const CompressedTokens> tokens) {
  if (tokens.empty()) throw SerializeError("cannot serialize an empty token list");
  header.geometry.validate();
  header.op.validate();
  const OperatingPoint& op = header.op;
  ByteWriter w;
  w.bytes(kMagic);
  w.u16(kFormatVersion);
  w.u32(header.geometry.width);
  w.u32(header.geometry.height);
  w.u32(header.frame_rate.num);
  w.u32(header.frame_rate.den);
  w.u8(static_cast<std::uint8_t>(header.geometry.chroma));
  w.u32(op.gop_size);
  w.u32(checked_u32(op.quant_step_milli(), "quant_step_milli"));
  w.u32(op.spatial_stride);
  w.u32(op.temporal_stride);
  w.u32(op.descriptor_len);
  w.u32(op.refine_iters);
  w.u32(checked_u32(tokens.size(), "gop_count"));

  for (std::size_t g = 0; g < tokens.size(); ++g) {
    if (!(tokens[g].op == op)) {
      throw SerializeError("GOP " + std::to_string(g) +
                           " was encoded with a different operating point");
    }
    check_token_shape(tokens[g], header.geometry);
    const ResidualTokens residual =
        residual_encode(tokens[g], g == 0 ? nullptr : &tokens[g - 1]);
    const std::vector<std::uint8_t> payload = encode_gop_payload(residual);
    w.u32(checked_u32(payload.size(), "payload_len"));
    w.bytes(payload);
  }
  return w.take();
}

StreamHeader parse_header(std::span<const std::uint8_t> bytes) {
  std::size_t pos = 0;
  ByteReader r(bytes, pos);
  const auto magic = r.take(4, "magic");
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) {
    throw DecodeError("not a GVC1 bitstream (bad magic)");
  }
  const std::uint16_t version = r.u16("version");
  if (version != kFormatVersion) {
    throw DecodeError("unsupported bitstream version " + std::to_string(version));
  }
  StreamHeader h;
  h.geometry.width = r.u32("width");
  h.geometry.height = r.u32("height");
  h.frame_rate.num = r.u32("fps_num");
  h.frame_rate.den = r.u32("fps_den");
  const std::uint8_t chroma = r.u8("chroma");
  if (chroma > static_cast<std::uint8_t>(Chroma::kGray)) {
    throw DecodeError("invalid chroma code " + std::to_string(chroma));
  }
  h.geometry.chroma = static_cast<Chroma>(chroma);
  h.op.gop_size = r.u32("gop_size");
  h.op.quant_step = r.u32("quant_step_milli") / 1000.0;
  h.op.spatial_stride = r.u32("spatial_stride");
  h.op.temporal_stride = r.u32("temporal_stride");
  h.op.descriptor_len = r.u32("descriptor_len");
  h.op.refine_iters = r.u32("refine_iters");
  h.gop_count = r.u32("gop_count");
  try {
    h.geometry.validate();
    h.op.validate();
  } catch (const InvalidArgument& e) {
    throw DecodeError(std::string("invalid header: ") + e.what());
  }
  if (h.frame_rate.num == 0 || h.frame_rate.den == 0) {
    throw DecodeError("invalid header: zero frame rate term");
  }
  if (h.gop_count == 0) throw DecodeError("invalid header: zero GOP count");
  if (std::uint64_t{h.geometry.width} * h.geometry.height > kMaxPixelsPerFrame) {
    throw DecodeError("invalid header: frame size exceeds the supported maximum");
  }
  return h;
}

DecodedStream deserialize(std::span<const std::uint8_t> bytes) {
  DecodedStream out;
  out.header = parse_header(bytes);
  const StreamHeader& h = out.header;
  const LatentShape shape = latent_shape(h.geometry, h.op);
  const std::uint32_t blocks_wide = (h.geometry.width + 7) / 8;
  const std::uint32_t blocks_high = (h.geometry.height + 7) / 8;

  std::size_t pos = kHeaderBytes;
  ByteReader r(bytes, pos);
  // Every length prefix must fit inside what remains; this also caps the
  // allocations a corrupt header can trigger.
  if (std::uint64_t{h.gop_count} * 4 > bytes.size() - pos) {
    throw DecodeError("GOP count exceeds the stream size");
  }
  out.tokens.reserve(h.gop_count);
  for (std::uint32_t g = 0; g < h.gop_count; ++g) {
    const std::uint32_t len = r.u32("payload length");
    const auto payload = r.take(len, "GOP payload");
    std::size_t ppos = 0;
    ResidualTokens residual;
    residual.keyframe.blocks_wide = blocks_wide;
    residual.keyframe.blocks_high = blocks_high;
    residual.keyframe.coefficients =
        decode_value_array(payload, ppos, std::size_t{blocks_wide} * blocks_high * 64);
    residual.descriptor = decode_value_array(payload, ppos, h.op.descriptor_len);
    residual.latent.slices = shape.slices;
    residual.latent.rows = shape.rows;
    residual.latent.cols = shape.cols;
    residual.latent.values = decode_value_array(
        payload, ppos, std::size_t{shape.slices} * shape.rows * shape.cols);
    if (ppos != payload.size()) {
      throw DecodeError("GOP " + std::to_string(g) + " payload has " +
                        std::to_string(payload.size() - ppos) + " unused bytes");
    }
    out.tokens.push_back(
        residual_decode(residual, g == 0 ? nullptr : &out.tokens.back(), h.op));
    out.payload_bytes.push_back(len);
  }
  if (pos != bytes.size()) {
    throw DecodeError(std::to_string(bytes.size() - pos) +
                      " trailing bytes after the last GOP payload");
  }
  return out;
}

double measure_bpp(std::size_t byte_length, std::uint32_t width,
                   std::uint32_t height, std::size_t coded_frames) {
  const double pixels = static_cast<double>(width) * height *
                        static_cast<double>(coded_frames);
  if (pixels == 0.0) {
    throw InvalidArgument("bpp is undefined for zero coded pixels");
  }
  return 8.0 * static_cast<double>(byte_length) / pixels;
}

}  // namespace gvc
