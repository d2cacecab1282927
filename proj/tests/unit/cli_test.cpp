// Copyright 2026 The nstkit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "nst/evaluation.hpp"
#include "nst/image_io.hpp"
#include "nst/synthetic.hpp"
#include "nst/weights.hpp"

namespace nst::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    root_ = fs::temp_directory_path() / ("nst_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(root_ / "content");
    fs::create_directories(root_ / "style");
    fs::create_directories(root_ / "empty");
    for (int i = 0; i < 2; ++i) {
      save_png(root_ / "content" / ("c" + std::to_string(i) + ".png"), make_content_image(64, 48, i));
      save_png(root_ / "style" / ("s" + std::to_string(i) + ".png"), make_style_image(64, 48, 100 + i));
    }
    save_weights(root_ / "w.nstw", nst::testing::synthetic_store());
    std::ofstream(root_ / "junk.nstw") << "not a weight file";
  }
  static void TearDownTestSuite() { fs::remove_all(root_); }

  static std::string path(const std::string& rel) { return (root_ / rel).string(); }

  static fs::path root_;
};

fs::path CliTest::root_;

TEST_F(CliTest, UsageErrorsExit64) {
  EXPECT_EQ(call({}).code, kExitUsage);
  EXPECT_EQ(call({"paint"}).code, kExitUsage);
  EXPECT_EQ(call({"stylize", "--method", "gatys", "--content", path("content/c0.png"), "--style",
                  path("style/s0.png"), "--out", path("o.png"), "--weights", path("w.nstw")})
                .code,
            kExitUsage);
  EXPECT_EQ(call({"stylize", "--method", "adain", "--alpha", "1.5"}).code, kExitUsage);
  EXPECT_EQ(call({"reconstruct", "--level", "6"}).code, kExitUsage);
  EXPECT_EQ(call({"bench", "--reps", "0"}).code, kExitUsage);
  EXPECT_EQ(call({"evaluate", "--size", "64by48", "--content", path("content"), "--style",
                  path("style"), "--weights", path("w.nstw")})
                .code,
            kExitUsage);
  EXPECT_EQ(call({"--help"}).code, kExitOk);
}

TEST_F(CliTest, MissingInputsExit2) {
  EXPECT_EQ(call({"stylize", "--method", "adain", "--content", path("nope.png"), "--style",
                  path("style/s0.png"), "--out", path("o.png"), "--weights", path("w.nstw")})
                .code,
            kExitInput);
  const Result empty = call({"evaluate", "--size", "64x48", "--content", path("empty"), "--style",
                             path("style"), "--weights", path("w.nstw")});
  EXPECT_EQ(empty.code, kExitInput);
  EXPECT_NE(empty.err.find("no PNG"), std::string::npos);
}

TEST_F(CliTest, BadWeightsExit3) {
  const std::vector<std::string> base{"stylize", "--method", "adain", "--size", "64x48",
                                      "--content", path("content/c0.png"), "--style",
                                      path("style/s0.png"), "--out", path("o.png"), "--weights"};
  auto missing = base;
  missing.push_back(path("absent.nstw"));
  EXPECT_EQ(call(missing).code, kExitWeights);
  auto junk = base;
  junk.push_back(path("junk.nstw"));
  EXPECT_EQ(call(junk).code, kExitWeights);
}

TEST_F(CliTest, StylizeWritesPng) {
  const Result r = call({"stylize", "--method", "photo-r", "--size", "64x48", "--content",
                         path("content/c0.png"), "--style", path("style/s1.png"), "--out",
                         path("styled.png"), "--weights", path("w.nstw")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Image img = load_image(path("styled.png"));
  EXPECT_EQ(img.width(), 64);
  EXPECT_EQ(img.height(), 48);
}

TEST_F(CliTest, EvaluateCorpusCsv) {
  const std::vector<std::string> args{"evaluate", "--size", "64x48", "--content", path("content"),
                                      "--style", path("style"), "--weights", path("w.nstw")};
  const Result a = call(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 6);
  EXPECT_EQ(a.out.substr(0, a.out.find('\n')), kEvalCsvHeader);
  EXPECT_NE(a.out.find("ust-wct4,"), std::string::npos);
  EXPECT_NE(a.out.find(",4\n"), std::string::npos);
  EXPECT_EQ(call(args).out, a.out);

  auto with_report = args;
  with_report.insert(with_report.end(), {"--report", path("eval.csv"), "--jobs", "2"});
  const Result b = call(with_report);
  ASSERT_EQ(b.code, kExitOk) << b.err;
  std::ifstream is(path("eval.csv"));
  const std::string csv((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  EXPECT_EQ(csv, a.out);
  EXPECT_NE(b.out.find("PHOTO-R"), std::string::npos);
}

TEST_F(CliTest, BenchSingleRep) {
  const Result r = call({"bench", "--method", "adain", "--method", "ust-wct", "--reps", "1", "--size",
                         "64x48", "--content", path("content/c0.png"), "--style",
                         path("style/s0.png"), "--weights", path("w.nstw")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), kBenchCsvHeader);
  EXPECT_NE(r.out.find(",1,64,48\n"), std::string::npos);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
}

TEST_F(CliTest, ReconstructWritesPng) {
  const Result r = call({"reconstruct", "--level", "3", "--size", "64x48", "--content",
                         path("content/c1.png"), "--out", path("recon.png"), "--weights",
                         path("w.nstw")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(fs::is_regular_file(path("recon.png")));
  EXPECT_NE(r.out.find("SSIM"), std::string::npos);
}

TEST_F(CliTest, WeightsFromEnvironment) {
  ::setenv(kWeightsEnv, path("w.nstw").c_str(), 1);
  const Result r = call({"reconstruct", "--level", "1", "--size", "64x48", "--content",
                         path("content/c0.png"), "--out", path("env.png")});
  ::unsetenv(kWeightsEnv);
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(call({"reconstruct", "--level", "1", "--size", "64x48", "--content",
                  path("content/c0.png"), "--out", path("env.png")})
                .code,
            kExitUsage);
}

}  // namespace
}  // namespace nst::cli
