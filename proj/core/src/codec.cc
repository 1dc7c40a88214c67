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

#include "gvc/codec.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <thread>

#include "gvc/bitstream.h"
#include "gvc/error.h"
#include "gvc/token_encoder.h"

namespace gvc {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(threads, 1u), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

EncodeResult encode_sequence(const VideoSequence& video, const OperatingPoint& op,
                             unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  op.validate();
  video.validate();
  const Segmentation seg = segment_gops(video, op.gop_size);
  if (seg.gops.empty()) {
    throw EncodeError("input has " + std::to_string(video.frames.size()) +
                      " frames, fewer than one GOP of " + std::to_string(op.gop_size));
  }
  std::vector<CompressedTokens> tokens(seg.gops.size());
  parallel_for(seg.gops.size(), threads,
               [&](std::size_t i) { tokens[i] = encode_gop(seg.gops[i], op); });

  StreamHeader header;
  header.geometry = video.geometry;
  header.frame_rate = video.frame_rate;
  header.op = op;
  header.gop_count = static_cast<std::uint32_t>(tokens.size());

  EncodeResult r;
  r.bytes = serialize(header, tokens);
  r.gop_count = seg.gops.size();
  r.coded_frames = seg.coded_frames();
  r.discarded_frames = seg.discarded_frames;
  r.bpp = measure_bpp(r.bytes.size(), video.geometry.width, video.geometry.height,
                      r.coded_frames);
  r.wall_time_s = seconds_since(start);
  return r;
}

DecodeResult decode_stream(std::span<const std::uint8_t> bytes, unsigned threads,
                           const DecoderConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const DecodedStream stream = deserialize(bytes);
  const FrameGeometry& geometry = stream.header.geometry;
  std::vector<DecodedGop> gops(stream.tokens.size());
  parallel_for(gops.size(), threads, [&](std::size_t i) {
    gops[i] = decode_gop(stream.tokens[i], geometry, i, config);
  });

  DecodeResult r;
  r.video.geometry = geometry;
  r.video.frame_rate = stream.header.frame_rate;
  r.video.frames.reserve(gops.size() * stream.header.op.gop_size);
  for (DecodedGop& g : gops) {
    for (Frame& f : g.gop.frames) r.video.frames.push_back(std::move(f));
    r.reports.push_back(std::move(g.report));
  }
  r.wall_time_s = seconds_since(start);
  return r;
}

RoundTrip evaluate_sequence(const std::string& name, const VideoSequence& video,
                            const OperatingPoint& op, unsigned threads) {
  RoundTrip rt;
  rt.encoded = encode_sequence(video, op, threads);
  rt.decoded = decode_stream(rt.encoded.bytes, threads);

  const std::span<const Frame> coded(video.frames.data(), rt.encoded.coded_frames);
  SequenceMetrics& m = rt.metrics;
  m.name = name;
  m.bpp = rt.encoded.bpp;
  m.compression_rate_percent = compression_rate(m.bpp);
  m.psnr_db = psnr(coded, rt.decoded.video.frames);
  m.ssim = ssim(coded, rt.decoded.video.frames);
  m.coded_frames = rt.encoded.coded_frames;
  m.discarded_frames = rt.encoded.discarded_frames;
  m.bitstream_bytes = rt.encoded.bytes.size();
  for (const ReconstructionReport& rep : rt.decoded.reports) {
    m.gops.push_back(GopDecodeSummary{rep.gop_index, rep.iterations_run,
                                      rep.token_consistency_error, rep.quant_step / 2.0,
                                      rep.wall_time_s});
  }
  m.encode_wall_time_s = rt.encoded.wall_time_s;
  m.decode_wall_time_s = rt.decoded.wall_time_s;
  return rt;
}

}  // namespace gvc
