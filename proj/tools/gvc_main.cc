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

// gvc: encode, decode, evaluate, plan and simulate from the command line.
//
// Exit codes: 0 success, 2 input (unreadable / unparsable / too short),
// 3 configuration (bad flags, operating point, profile, ladder),
// 4 container corruption, 5 infeasible budget, 1 anything else.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gvc/bitstream.h"
#include "gvc/channel.h"
#include "gvc/codec.h"
#include "gvc/corpus.h"
#include "gvc/error.h"
#include "gvc/report.h"
#include "gvc/tradeoff.h"
#include "gvc/video.h"

namespace {

enum Exit { kOk = 0, kOther = 1, kInput = 2, kConfig = 3, kCorrupt = 4, kInfeasible = 5 };

struct OpFlags {
  gvc::OperatingPoint op;

  void add(CLI::App* app) {
    app->add_option("--quant-step", op.quant_step, "latent / keyframe quantizer step")
        ->capture_default_str();
    app->add_option("--spatial-stride", op.spatial_stride, "latent cell size in pixels")
        ->capture_default_str();
    app->add_option("--temporal-stride", op.temporal_stride, "frames between latent slices")
        ->capture_default_str();
    app->add_option("--descriptor-len", op.descriptor_len, "descriptor entries per GOP")
        ->capture_default_str();
    app->add_option("--refine-iters", op.refine_iters, "decoder refinement iterations")
        ->capture_default_str();
    app->add_option("--gop-size", op.gop_size, "frames per GOP")->capture_default_str();
  }
};

struct InputFlags {
  std::string path;
  bool raw = false;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::string fps = "25:1";
  std::string chroma = "420";

  void add(CLI::App* app, bool required = true) {
    auto* opt = app->add_option("input", path, "Y4M file (or raw planar with --raw)");
    if (required) opt->required();
    app->add_flag("--raw", raw, "input is headerless planar video");
    app->add_option("--width", width, "raw input width");
    app->add_option("--height", height, "raw input height");
    app->add_option("--fps", fps, "raw input frame rate as num:den")->capture_default_str();
    app->add_option("--chroma", chroma, "raw input chroma: 420, 444 or mono")
        ->capture_default_str();
  }

  // Checked before any file is touched.
  void validate() const {
    if (!raw) return;
    if (width == 0 || height == 0) throw gvc::ConfigError("--raw needs --width and --height");
    raw_geometry().validate();
    raw_rate();
  }

  gvc::FrameGeometry raw_geometry() const {
    gvc::Chroma c;
    if (chroma == "420") {
      c = gvc::Chroma::k420;
    } else if (chroma == "444") {
      c = gvc::Chroma::k444;
    } else if (chroma == "mono" || chroma == "gray") {
      c = gvc::Chroma::kGray;
    } else {
      throw gvc::ConfigError("unknown --chroma '" + chroma + "'");
    }
    return gvc::FrameGeometry{width, height, c};
  }

  gvc::Rational raw_rate() const {
    const auto colon = fps.find(':');
    try {
      gvc::Rational r;
      r.num = static_cast<std::uint32_t>(std::stoul(fps.substr(0, colon)));
      r.den = colon == std::string::npos
                  ? 1u
                  : static_cast<std::uint32_t>(std::stoul(fps.substr(colon + 1)));
      if (r.num == 0 || r.den == 0) throw std::invalid_argument("zero");
      return r;
    } catch (const std::logic_error&) {
      throw gvc::ConfigError("bad --fps '" + fps + "' (expected num:den)");
    }
  }

  gvc::VideoSequence load() const {
    const auto bytes = gvc::read_file(path);
    if (raw) return gvc::read_raw_planar(bytes, raw_geometry(), raw_rate());
    std::vector<std::string> warnings;
    gvc::VideoSequence v = gvc::parse_y4m(bytes, &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << path << ": " << w << "\n";
    return v;
  }
};

std::string fmt(double v, int digits = 6) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

std::string profile_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  const char* env = std::getenv("GVC_PROFILE_DIR");
  return env ? env : "";
}

std::vector<gvc::CorpusEntry> load_manifest(const std::string& path) {
  const auto bytes = gvc::read_file(path);
  return gvc::parse_corpus_manifest(std::string(bytes.begin(), bytes.end()));
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::logic_error&) {
      throw gvc::ConfigError("bad list entry '" + item + "'");
    }
  }
  if (out.empty()) throw gvc::ConfigError("empty list");
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"gvc: ultra-low-rate generative video codec lab"};
  app.require_subcommand(1, 1);
  unsigned threads = 1;
  app.add_option("--threads", threads, "worker threads for per-GOP work")
      ->capture_default_str();

  // encode
  auto* encode = app.add_subcommand("encode", "encode a video into a GVC1 bitstream");
  InputFlags enc_in;
  OpFlags enc_op;
  std::string enc_out;
  enc_in.add(encode);
  enc_op.add(encode);
  encode->add_option("-o,--output", enc_out, "bitstream path")->required();

  // decode
  auto* decode = app.add_subcommand("decode", "decode a GVC1 bitstream to Y4M");
  std::string dec_in, dec_out, dec_report;
  bool dec_no_wall = false;
  decode->add_option("input", dec_in, "bitstream path")->required();
  decode->add_option("-o,--output", dec_out, "Y4M path")->required();
  decode->add_option("--report", dec_report, "per-GOP reconstruction reports (JSON)");
  decode->add_flag("--no-wall-times", dec_no_wall, "write wall-time fields as 0");

  // eval
  auto* eval = app.add_subcommand("eval", "encode, decode and score one file or a corpus");
  InputFlags ev_in;
  OpFlags ev_op;
  std::string ev_manifest, ev_report, ev_name;
  bool ev_no_wall = false;
  ev_in.add(eval, false);
  ev_op.add(eval);
  auto* ev_manifest_opt =
      eval->add_option("--manifest", ev_manifest, "corpus manifest of synthetic sequences");
  eval->get_option("input")->excludes(ev_manifest_opt);
  eval->add_option("--report", ev_report, "metrics report path (JSON)");
  eval->add_option("--name", ev_name, "sequence name for a single input");
  eval->add_flag("--no-wall-times", ev_no_wall, "write wall-time fields as 0");

  // plan
  auto* plan = app.add_subcommand("plan", "pick an operating point for a hardware budget");
  std::string pl_profile, pl_resolution = "480p", pl_ladder, pl_profile_dir;
  double pl_latency = 0.0;
  std::optional<double> pl_max_bpp;
  plan->add_option("--profile", pl_profile, "hardware profile name")->required();
  plan->add_option("--resolution", pl_resolution, "480p, 720p or 1080p")->capture_default_str();
  plan->add_option("--latency", pl_latency, "per-GOP encode+decode budget in seconds")
      ->required();
  plan->add_option("--max-bpp", pl_max_bpp, "rate ceiling");
  plan->add_option("--ladder", pl_ladder, "operating-point ladder (JSON)");
  plan->add_option("--profile-dir", pl_profile_dir,
                   "extra profile JSON files (default: $GVC_PROFILE_DIR)");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "transmit streams over a modelled link");
  std::string sim_scenario, sim_out, sim_profile_dir;
  simulate->add_option("scenario", sim_scenario, "scenario file (JSON)")->required();
  simulate->add_option("-o,--output", sim_out, "report path (default: stdout)");
  simulate->add_option("--profile-dir", sim_profile_dir,
                       "extra profile JSON files (default: $GVC_PROFILE_DIR)");

  // corpus
  auto* corpus = app.add_subcommand("corpus", "write synthetic sequences as Y4M");
  gvc::CorpusEntry cp_entry;
  std::string cp_manifest, cp_out;
  auto* cp_manifest_opt = corpus->add_option("--manifest", cp_manifest, "corpus manifest");
  auto* cp_gen_opt = corpus->add_option("--generator", cp_entry.generator, "generator name");
  cp_manifest_opt->excludes(cp_gen_opt);
  corpus->add_option("--seed", cp_entry.seed, "generator seed")->capture_default_str();
  corpus->add_option("--width", cp_entry.width)->capture_default_str();
  corpus->add_option("--height", cp_entry.height)->capture_default_str();
  corpus->add_option("--frames", cp_entry.frames)->capture_default_str();
  corpus->add_option("-o,--output", cp_out, "Y4M file, or directory with --manifest")
      ->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "rate-distortion sweep over a corpus (CSV)");
  OpFlags sw_op;
  std::string sw_manifest, sw_steps = "4,8,16,32,64", sw_iters = "8", sw_out;
  sw_op.add(sweep);
  sweep->add_option("--manifest", sw_manifest, "corpus manifest")->required();
  sweep->add_option("--quant-steps", sw_steps, "comma-separated quant steps")
      ->capture_default_str();
  sweep->add_option("--iters", sw_iters, "comma-separated refine_iters values")
      ->capture_default_str();
  sweep->add_option("-o,--output", sw_out, "CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*encode) {
      enc_op.op.validate();
      enc_in.validate();
      const gvc::VideoSequence video = enc_in.load();
      const gvc::EncodeResult r = gvc::encode_sequence(video, enc_op.op, threads);
      gvc::write_file_atomic(enc_out, r.bytes);
      std::cerr << r.gop_count << " GOPs, " << r.discarded_frames << " frames discarded; "
                << r.bytes.size() << " bytes, " << fmt(r.bpp) << " bpp ("
                << fmt(gvc::compression_rate(r.bpp), 4) << "% of raw)\n";
    } else if (*decode) {
      const auto bytes = gvc::read_file(dec_in);
      const gvc::DecodeResult r = gvc::decode_stream(bytes, threads);
      gvc::write_file_atomic(dec_out, gvc::write_y4m(r.video));
      const std::string reports = gvc::reconstruction_reports_json(r.reports, !dec_no_wall);
      if (dec_report.empty()) {
        std::cout << reports;
      } else {
        gvc::write_file_atomic(dec_report, reports);
      }
      for (const gvc::ReconstructionReport& rep : r.reports) {
        std::cerr << "GOP " << rep.gop_index << ": " << rep.iterations_run
                  << " iterations, consistency error " << fmt(rep.token_consistency_error, 4)
                  << " (bound " << fmt(rep.quant_step / 2, 4) << ")\n";
      }
    } else if (*eval) {
      ev_op.op.validate();
      ev_in.validate();
      if (ev_in.path.empty() && ev_manifest.empty()) {
        throw gvc::ConfigError("eval needs an input file or --manifest");
      }
      gvc::MetricsReport report;
      if (!ev_manifest.empty()) {
        for (const gvc::CorpusEntry& e : load_manifest(ev_manifest)) {
          const gvc::VideoSequence video = gvc::generate_synthetic(e);
          report.sequences.push_back(
              gvc::evaluate_sequence(e.name, video, ev_op.op, threads).metrics);
        }
      } else {
        const gvc::VideoSequence video = ev_in.load();
        const std::string name =
            ev_name.empty() ? std::filesystem::path(ev_in.path).stem().string() : ev_name;
        report.sequences.push_back(
            gvc::evaluate_sequence(name, video, ev_op.op, threads).metrics);
      }
      report.dataset = gvc::aggregate(report.sequences);
      for (const gvc::SequenceMetrics& s : report.sequences) {
        std::cerr << s.name << ": " << fmt(s.bpp) << " bpp, " << fmt(s.psnr_db, 2)
                  << " dB, SSIM " << fmt(s.ssim, 4) << "\n";
      }
      std::cerr << "mean: " << fmt(report.dataset.mean_bpp) << " bpp ("
                << fmt(report.dataset.mean_compression_rate_percent, 4) << "%), "
                << fmt(report.dataset.mean_psnr_db, 2) << " dB\n";
      const std::string json = gvc::metrics_report_json(report, ev_op.op, !ev_no_wall);
      if (ev_report.empty()) {
        std::cout << json;
      } else {
        gvc::write_file_atomic(ev_report, json);
      }
    } else if (*plan) {
      gvc::Budget budget;
      budget.max_total_latency_s = pl_latency;
      budget.max_bpp = pl_max_bpp;
      budget.resolution = gvc::parse_resolution(pl_resolution);
      budget.validate();
      const auto profiles = gvc::load_profiles(profile_dir(pl_profile_dir));
      const gvc::HardwareProfile& profile = gvc::find_profile(profiles, pl_profile);
      std::vector<gvc::LadderRung> ladder = gvc::default_ladder();
      if (!pl_ladder.empty()) {
        const auto bytes = gvc::read_file(pl_ladder);
        ladder = gvc::parse_ladder(std::string(bytes.begin(), bytes.end()));
      }
      const gvc::Feasibility f = gvc::feasible(profile, budget);
      std::cerr << "reference model: " << f.explanation << "\n";
      const gvc::Selection s = gvc::select_operating_point(profile, budget, ladder);
      std::cout << "rung " << s.rung_index << ": quant_step " << fmt(s.op.quant_step, 3)
                << ", refine_iters " << s.op.refine_iters << ", predicted "
                << fmt(s.predicted_bpp) << " bpp, " << fmt(s.predicted_latency_s, 3)
                << " s per GOP\n"
                << "binding constraint: " << s.binding_constraint << "\n"
                << s.explanation << "\n";
    } else if (*simulate) {
      const auto bytes = gvc::read_file(sim_scenario);
      const std::string base = std::filesystem::path(sim_scenario).parent_path().string();
      const gvc::Scenario sc =
          gvc::parse_scenario(std::string(bytes.begin(), bytes.end()), base.empty() ? "." : base);
      const auto profiles = gvc::load_profiles(profile_dir(sim_profile_dir));
      const gvc::ScenarioResult r = gvc::run_scenario(sc, profiles);
      const std::string json = gvc::scenario_report_json(r);
      if (sim_out.empty()) {
        std::cout << json;
      } else {
        gvc::write_file_atomic(sim_out, json);
      }
      std::cerr << "stream completes at " << fmt(r.stream.completion_s, 4) << " s, "
                << r.stream.violations << " deadline violations\n";
      if (r.bandwidth) {
        std::cerr << "reference needs " << fmt(r.bandwidth->ratio, 4)
                  << "x the bandwidth\n";
      }
    } else if (*corpus) {
      if (!cp_manifest.empty()) {
        const auto entries = load_manifest(cp_manifest);
        std::filesystem::create_directories(cp_out);
        for (const gvc::CorpusEntry& e : entries) {
          const auto path = std::filesystem::path(cp_out) / (e.name + ".y4m");
          gvc::write_file_atomic(path.string(), gvc::write_y4m(gvc::generate_synthetic(e)));
          std::cerr << "wrote " << path.string() << "\n";
        }
      } else {
        if (cp_entry.generator.empty()) throw gvc::ConfigError("--generator or --manifest required");
        cp_entry.name = cp_entry.generator;
        gvc::write_file_atomic(cp_out, gvc::write_y4m(gvc::generate_synthetic(cp_entry)));
      }
    } else if (*sweep) {
      sw_op.op.validate();
      const std::vector<double> steps = parse_list(sw_steps);
      const std::vector<double> iters = parse_list(sw_iters);
      const auto entries = load_manifest(sw_manifest);
      std::vector<gvc::RdPoint> points;
      for (const gvc::CorpusEntry& e : entries) {
        const gvc::VideoSequence video = gvc::generate_synthetic(e);
        for (double q : steps) {
          for (double it : iters) {
            gvc::OperatingPoint op = sw_op.op;
            op.quant_step = q;
            if (it < 0) throw gvc::ConfigError("negative --iters entry");
            op.refine_iters = static_cast<std::uint32_t>(it);
            op.validate();
            const gvc::RoundTrip rt = gvc::evaluate_sequence(e.name, video, op, threads);
            points.push_back({e.name, op, rt.metrics.bpp, rt.metrics.psnr_db, rt.metrics.ssim});
            std::cerr << e.name << " q=" << q << " it=" << op.refine_iters << ": "
                      << fmt(rt.metrics.bpp) << " bpp, " << fmt(rt.metrics.psnr_db, 2)
                      << " dB\n";
          }
        }
      }
      gvc::write_file_atomic(sw_out, gvc::rd_csv(points));
    }
  } catch (const gvc::InfeasibleError& e) {
    std::cerr << "infeasible (" << e.binding_constraint() << "): " << e.what() << "\n";
    return kInfeasible;
  } catch (const gvc::DecodeError& e) {
    std::cerr << "corrupt bitstream: " << e.what() << "\n";
    return kCorrupt;
  } catch (const gvc::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const gvc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const gvc::EncodeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const gvc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const gvc::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const gvc::ShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
