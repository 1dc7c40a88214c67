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

#include "gvc/report.h"

#include <cstdio>

#include "json.hpp"

namespace gvc {

namespace {

using json = nlohmann::json;

json op_json(const OperatingPoint& op) {
  return {{"quant_step", op.quant_step},
          {"spatial_stride", op.spatial_stride},
          {"temporal_stride", op.temporal_stride},
          {"descriptor_len", op.descriptor_len},
          {"refine_iters", op.refine_iters},
          {"gop_size", op.gop_size}};
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string metrics_report_json(const MetricsReport& report, const OperatingPoint& op,
                                bool include_wall_times) {
  const auto wall = [&](double s) { return include_wall_times ? s : 0.0; };
  json sequences = json::array();
  for (const SequenceMetrics& s : report.sequences) {
    json gops = json::array();
    for (const GopDecodeSummary& g : s.gops) {
      gops.push_back({{"index", g.index},
                      {"iterations_run", g.iterations_run},
                      {"token_consistency_error", g.token_consistency_error},
                      {"consistency_bound", g.consistency_bound},
                      {"wall_time_s", wall(g.wall_time_s)}});
    }
    sequences.push_back(
        {{"name", s.name},
         {"bpp", s.bpp},
         {"compression_rate_percent", s.compression_rate_percent},
         {"psnr_db", s.psnr_db},
         {"ssim", s.ssim},
         {"coded_frames", s.coded_frames},
         {"discarded_frames", s.discarded_frames},
         {"bitstream_bytes", s.bitstream_bytes},
         {"gops", gops},
         {"encode_wall_time_s", wall(s.encode_wall_time_s)},
         {"decode_wall_time_s", wall(s.decode_wall_time_s)},
         {"external_perceptual",
          s.external_perceptual ? json(*s.external_perceptual) : json(nullptr)}});
  }
  const DatasetMetrics& d = report.dataset;
  json doc;
  doc["schema"] = kMetricsSchema;
  doc["raw_bits_per_pixel"] = kRawBitsPerPixel;
  doc["operating_point"] = op_json(op);
  doc["sequences"] = sequences;
  doc["dataset"] = {{"sequence_count", d.sequence_count},
                    {"mean_bpp", d.mean_bpp},
                    {"mean_compression_rate_percent", d.mean_compression_rate_percent},
                    {"mean_psnr_db", d.mean_psnr_db},
                    {"mean_ssim", d.mean_ssim}};
  return doc.dump(2) + "\n";
}

std::string reconstruction_reports_json(std::span<const ReconstructionReport> reports,
                                        bool include_wall_times) {
  json list = json::array();
  for (const ReconstructionReport& r : reports) {
    list.push_back({{"gop_index", r.gop_index},
                    {"iterations_run", r.iterations_run},
                    {"token_consistency_error", r.token_consistency_error},
                    {"consistency_bound", r.quant_step / 2.0},
                    {"quant_step", r.quant_step},
                    {"descriptor", r.descriptor},
                    {"output_mean_luma", r.output_mean_luma},
                    {"wall_time_s", include_wall_times ? r.wall_time_s : 0.0}});
  }
  json doc;
  doc["schema"] = kDecodeSchema;
  doc["gops"] = list;
  return doc.dump(2) + "\n";
}

std::string rd_csv(std::span<const RdPoint> points) {
  std::string out =
      "sequence,quant_step,spatial_stride,temporal_stride,descriptor_len,refine_iters,"
      "bpp,compression_rate_percent,psnr_db,ssim\n";
  for (const RdPoint& p : points) {
    out += p.sequence + "," + fixed(p.op.quant_step, 3) + "," +
           std::to_string(p.op.spatial_stride) + "," + std::to_string(p.op.temporal_stride) +
           "," + std::to_string(p.op.descriptor_len) + "," +
           std::to_string(p.op.refine_iters) + "," + fixed(p.bpp, 6) + "," +
           fixed(100.0 * p.bpp / kRawBitsPerPixel, 6) + "," + fixed(p.psnr_db, 4) + "," +
           fixed(p.ssim, 6) + "\n";
  }
  return out;
}

}  // namespace gvc
