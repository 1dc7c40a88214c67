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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gvc/corpus.h"
#include "gvc/video.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("gvc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  CliResult run(const std::string& args) const {
    const std::string cmd = std::string("\"") + GVC_CLI_PATH + "\" " + args + " >\"" +
                            path("stdout") + "\" 2>\"" + path("stderr") + "\"";
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(path("stdout"));
    r.err = slurp(path("stderr"));
    return r;
  }

  void write_text(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
  }

  // 64 frames of a small moving gradient.
  std::string make_clip(std::uint32_t frames = 64) const {
    gvc::CorpusEntry e{"clip", "moving-gradient", 1, 64, 48, frames, {30, 1}};
    gvc::write_file_atomic(path("clip.y4m"), gvc::write_y4m(gvc::generate_synthetic(e)));
    return path("clip.y4m");
  }

  fs::path dir_;
};

TEST_F(Cli, HelpAndUsage) {
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("").code, 3);
  EXPECT_EQ(run("encode").code, 3);
  EXPECT_EQ(run("frobnicate").code, 3);
}

TEST_F(Cli, EncodeReportsDiscardedFrames) {
  const std::string clip = make_clip();
  const CliResult r = run("encode \"" + clip + "\" -o \"" + path("a.gvc") + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("2 GOPs, 6 frames discarded"), std::string::npos) << r.err;
  EXPECT_EQ(run("--threads 3 encode \"" + clip + "\" -o \"" + path("b.gvc") + "\"").code, 0);
  EXPECT_EQ(slurp(path("a.gvc")), slurp(path("b.gvc")));
}

TEST_F(Cli, DecodeRoundTrip) {
  const std::string clip = make_clip(29);
  ASSERT_EQ(run("encode \"" + clip + "\" -o \"" + path("a.gvc") + "\"").code, 0);
  const CliResult r = run("decode \"" + path("a.gvc") + "\" -o \"" + path("out.y4m") +
                    "\" --report \"" + path("rep.json") + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto bytes = gvc::read_file(path("out.y4m"));
  const auto v = gvc::parse_y4m(bytes);
  EXPECT_EQ(v.frame_count(), 29u);
  EXPECT_EQ(v.geometry.width, 64u);
  const auto rep = nlohmann::json::parse(slurp(path("rep.json")));
  EXPECT_EQ(rep["gops"].size(), 1u);
}

TEST_F(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run("encode \"" + path("missing.y4m") + "\" -o \"" + path("x.gvc") + "\"").code, 2);
  write_text("junk.y4m", "NOT A Y4M FILE\n");
  EXPECT_EQ(run("encode \"" + path("junk.y4m") + "\" -o \"" + path("x.gvc") + "\"").code, 2);
  const std::string clip = make_clip(10);
  EXPECT_EQ(run("encode \"" + clip + "\" -o \"" + path("x.gvc") + "\"").code, 2);
  EXPECT_FALSE(fs::exists(path("x.gvc")));
  write_text("bad.json", "{\"link\": {");
  EXPECT_EQ(run("simulate \"" + path("bad.json") + "\"").code, 2);
}

TEST_F(Cli, ConfigErrorsExitThree) {
  const std::string clip = make_clip(29);
  EXPECT_EQ(run("encode \"" + clip + "\" --quant-step 0 -o \"" + path("x.gvc") + "\"").code, 3);
  EXPECT_EQ(run("encode \"" + clip + "\" --raw -o \"" + path("x.gvc") + "\"").code, 3);
  EXPECT_EQ(run("plan --profile TPU --latency 3").code, 3);
  EXPECT_EQ(run("plan --profile 4090 --latency 3 --resolution 4k").code, 3);
}

TEST_F(Cli, CorruptBitstreamExitsFour) {
  const std::string clip = make_clip(29);
  ASSERT_EQ(run("encode \"" + clip + "\" -o \"" + path("a.gvc") + "\"").code, 0);
  std::string bytes = slurp(path("a.gvc"));
  bytes[0] = 'X';
  write_text("bad.gvc", bytes);
  EXPECT_EQ(run("decode \"" + path("bad.gvc") + "\" -o \"" + path("o.y4m") + "\"").code, 4);
  write_text("short.gvc", slurp(path("a.gvc")).substr(0, 60));
  EXPECT_EQ(run("decode \"" + path("short.gvc") + "\" -o \"" + path("o.y4m") + "\"").code, 4);
  EXPECT_FALSE(fs::exists(path("o.y4m")));
}

TEST_F(Cli, PlanFeasibleAndInfeasible) {
  const CliResult ok = run("plan --profile 4090 --resolution 480p --latency 2.5");
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_NE(ok.out.find("binding constraint"), std::string::npos);
  const CliResult bad = run("plan --profile 4090 --resolution 1080p --latency 1");
  EXPECT_EQ(bad.code, 5);
  EXPECT_NE(bad.err.find("latency"), std::string::npos);
}

TEST_F(Cli, ProfileDirFromEnvironment) {
  fs::create_directories(path("profiles"));
  write_text("profiles/edge.json", R"({"profiles": [{"name": "edge", "latency":
      {"480p": {"encoder_s": 0.1, "decoder_s": 0.2}}}]})");
  EXPECT_EQ(run("plan --profile edge --latency 1").code, 3);
  const std::string env = "GVC_PROFILE_DIR=\"" + path("profiles") + "\" ";
  const std::string cmd = env + "\"" + GVC_CLI_PATH + "\" plan --profile edge --latency 1 >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 0);
}

TEST_F(Cli, SimulateBitstreamScenario) {
  const std::string clip = make_clip(58);
  ASSERT_EQ(run("encode \"" + clip + "\" -o \"" + path("a.gvc") + "\"").code, 0);
  write_text("scn.json", R"({"link": {"rate_bps": 8000, "propagation_delay_s": 0.1},
      "stream": {"bitstream": "a.gvc"},
      "reference": {"bpp": 0.05, "width": 64, "height": 48, "frames": 58},
      "profile": "A100", "resolution": "480p"})");
  const CliResult r = run("simulate \"" + path("scn.json") + "\" -o \"" + path("rep.json") + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(slurp(path("rep.json")));
  EXPECT_TRUE(doc.contains("bandwidth_ratio"));
  EXPECT_TRUE(doc.contains("end_to_end"));
}

TEST_F(Cli, EvalDeterministicReport) {
  const std::string clip = make_clip(29);
  const std::string args = "eval \"" + clip + "\" --refine-iters 2 --no-wall-times --report ";
  ASSERT_EQ(run(args + "\"" + path("r1.json") + "\"").code, 0);
  ASSERT_EQ(run("--threads 2 " + args + "\"" + path("r2.json") + "\"").code, 0);
  EXPECT_EQ(slurp(path("r1.json")), slurp(path("r2.json")));
  EXPECT_EQ(run("eval \"" + clip + "\" --manifest m.json").code, 3);
}

}  // namespace
