// Copyright 2026 The Mimic Toolkit Authors
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

#include "mimic/pipeline.h"

#include <sys/wait.h>

#include <cstdlib>
#include <random>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "mimic/camera.h"
#include "mimic/errors.h"
#include "mimic/motion_io.h"
#include "pipeline_fixture.h"

namespace mimic {
namespace {

namespace fs = std::filesystem;
using testing::ReadText;
using testing::WriteText;

PipelineConfig RetargetConfigFor(const fs::path& in, const fs::path& out, RetargetAlgorithm algo) {
  PipelineConfig c;
  c.input = in.string();
  c.output = out.string();
  c.algorithm = algo;
  c.retarget.epochs = 20;
  return c;
}

TEST(RunRetarget, CopyOnOneFile) {
  auto dir = testing::TempDir("pipe_copy");
  testing::WriteHumanCorpus(dir / "in", 1, 8, 1);
  std::ostringstream log;
  PipelineConfig c = RetargetConfigFor(dir / "in", dir / "out", RetargetAlgorithm::kCopy);
  EXPECT_EQ(RunRetarget(c, log), kExitOk) << log.str();
  MotionSequence out = LoadMotion((dir / "out" / "seq_0.json").string(), BuiltinSkeleton("h1"));
  EXPECT_EQ(out.num_frames(), 8);
  auto manifest = nlohmann::json::parse(ReadText(dir / "out" / "manifest.json"));
  EXPECT_EQ(manifest["algorithm"], "copy");
  ASSERT_EQ(manifest["sequences"].size(), 1u);
  EXPECT_EQ(manifest["sequences"][0]["status"], "ok");
  EXPECT_TRUE(manifest["sequences"][0]["loss"]["total"].is_number());
}

TEST(RunRetarget, HandWeightForSittingIsConfigError) {
  auto dir = testing::TempDir("pipe_hand");
  testing::WriteHumanCorpus(dir / "in", 1, 4, 2);
  PipelineConfig c = RetargetConfigFor(dir / "in", dir / "out", RetargetAlgorithm::kOptimize);
  c.task = TaskId::kSitChair;
  c.retarget.lambda_hand = 0.5;
  std::ostringstream log;
  EXPECT_EQ(RunRetarget(c, log), kExitConfigError);
  EXPECT_NE(log.str().find("hand"), std::string::npos) << log.str();
}

TEST(RunRetarget, EmptyCorpusSucceedsWithEmptyManifest) {
  auto dir = testing::TempDir("pipe_empty");
  fs::create_directories(dir / "in");
  std::ostringstream log;
  EXPECT_EQ(RunRetarget(RetargetConfigFor(dir / "in", dir / "out", RetargetAlgorithm::kOptimize), log), kExitOk);
  auto manifest = nlohmann::json::parse(ReadText(dir / "out" / "manifest.json"));
  EXPECT_TRUE(manifest["sequences"].empty());
}

TEST(RunRetarget, UnreadableCorpusIsConfigError) {
  auto dir = testing::TempDir("pipe_missing");
  std::ostringstream log;
  EXPECT_EQ(RunRetarget(RetargetConfigFor(dir / "nope", dir / "out", RetargetAlgorithm::kCopy), log),
            kExitConfigError);
}

TEST(RunRetarget, BadSequenceIsIsolated) {
  auto dir = testing::TempDir("pipe_bad_seq");
  testing::WriteHumanCorpus(dir / "in", 2, 5, 3);
  WriteText(dir / "in" / "broken.json", "{\"fps\": 50");
  std::ostringstream log;
  EXPECT_EQ(RunRetarget(RetargetConfigFor(dir / "in", dir / "out", RetargetAlgorithm::kCopy), log), kExitFailures);
  auto manifest = nlohmann::json::parse(ReadText(dir / "out" / "manifest.json"));
  ASSERT_EQ(manifest["sequences"].size(), 3u);
  EXPECT_EQ(manifest["sequences"][0]["id"], "broken");
  EXPECT_EQ(manifest["sequences"][0]["status"], "failed");
  EXPECT_EQ(manifest["sequences"][1]["status"], "ok");
  EXPECT_TRUE(fs::exists(dir / "out" / "seq_1.json"));
  EXPECT_FALSE(fs::exists(dir / "out" / "broken.json"));
}

TEST(RunRetarget, DeterministicAcrossRunsAndWorkerCounts) {
  auto dir = testing::TempDir("pipe_determinism");
  testing::WriteHumanCorpus(dir / "in", 3, 6, 4);
  PipelineConfig a = RetargetConfigFor(dir / "in", dir / "a", RetargetAlgorithm::kAlignOptimize);
  a.workers = 1;
  PipelineConfig b = RetargetConfigFor(dir / "in", dir / "b", RetargetAlgorithm::kAlignOptimize);
  b.workers = 3;
  std::ostringstream log;
  ASSERT_EQ(RunRetarget(a, log), kExitOk) << log.str();
  ASSERT_EQ(RunRetarget(b, log), kExitOk) << log.str();
  for (const char* f : {"manifest.json", "seq_0.json", "seq_1.json", "seq_2.json"}) {
    EXPECT_EQ(ReadText(dir / "a" / f), ReadText(dir / "b" / f)) << f;
  }
}

TEST(RunRetarget, FilterDropsMotionsThatMissTheSeat) {
  auto dir = testing::TempDir("pipe_filter");
  testing::WriteHumanCorpus(dir / "in", 2, 20, 5);
  fs::create_directories(dir / "scenes");
  // The H1 pelvis follows the human root at 0.9 m.
  testing::WriteSitScene(dir / "scenes" / "seq_0.json", 0.8);
  testing::WriteSitScene(dir / "scenes" / "seq_1.json", 0.2);
  PipelineConfig c = RetargetConfigFor(dir / "in", dir / "out", RetargetAlgorithm::kCopy);
  c.filter = true;
  c.scene = (dir / "scenes").string();
  std::ostringstream log;
  EXPECT_EQ(RunRetarget(c, log), kExitOk) << log.str();
  auto manifest = nlohmann::json::parse(ReadText(dir / "out" / "manifest.json"));
  EXPECT_EQ(manifest["sequences"][0]["status"], "ok");
  EXPECT_EQ(manifest["sequences"][1]["status"], "filtered");
  EXPECT_FALSE(fs::exists(dir / "out" / "seq_1.json"));
  fs::remove(dir / "scenes" / "seq_1.json");
  EXPECT_EQ(RunRetarget(c, log), kExitConfigError);
}

// A humanoid motion seated at 1.0 m with zero torques.
void WritePerfectSit(const fs::path& path) {
  Skeleton h1 = BuiltinSkeleton("h1");
  Pose p = Pose::Zero(h1);
  p.root_position = Vec3(0.1, 0.0, 1.0);
  MotionSequence m = testing::StaticMotion(h1, p, 30);
  m.torques.emplace(30, Eigen::VectorXd::Zero(19));
  SaveMotion(m, path.string());
}

TEST(RunEval, PerfectSittingSummary) {
  auto dir = testing::TempDir("pipe_eval");
  fs::create_directories(dir / "in");
  WritePerfectSit(dir / "in" / "sit.json");
  testing::WriteSitScene(dir / "scene.json", 0.9);
  PipelineConfig c;
  c.input = (dir / "in").string();
  c.output = (dir / "out").string();
  c.scene = (dir / "scene.json").string();
  std::ostringstream log;
  ASSERT_EQ(RunEval(c, log), kExitOk) << log.str();
  const std::string csv = ReadText(dir / "out" / "report.csv");
  EXPECT_EQ(csv, EvalCsvHeader() + "\nsit,1,0,1,1,1,1,1\nsummary,1,,,,,,1\n");
  c.output = (dir / "again").string();
  ASSERT_EQ(RunEval(c, log), kExitOk);
  EXPECT_EQ(ReadText(dir / "again" / "report.csv"), csv);
}

TEST(RunEval, NoEnergyRowAndFailuresOnlyExit) {
  auto dir = testing::TempDir("pipe_eval_noenergy");
  fs::create_directories(dir / "in");
  Skeleton h1 = BuiltinSkeleton("h1");
  Pose p = Pose::Zero(h1);
  p.root_position = Vec3(0, 0, 1.0);
  SaveMotion(testing::StaticMotion(h1, p, 20), (dir / "in" / "bare.json").string());
  testing::WriteSitScene(dir / "scene.json", 0.9);
  PipelineConfig c;
  c.input = (dir / "in").string();
  c.output = (dir / "out").string();
  c.scene = (dir / "scene.json").string();
  std::ostringstream log;
  EXPECT_EQ(RunEval(c, log), kExitFailures);
  EXPECT_NE(ReadText(dir / "out" / "report.csv").find("bare,1,no-energy,0,0,0,0,0"), std::string::npos);
}

TEST(RunEval, MissingSceneIsConfigError) {
  auto dir = testing::TempDir("pipe_eval_noscene");
  fs::create_directories(dir / "in");
  WritePerfectSit(dir / "in" / "sit.json");
  PipelineConfig c;
  c.input = (dir / "in").string();
  c.output = (dir / "out").string();
  c.scene = (dir / "absent.json").string();
  std::ostringstream log;
  EXPECT_EQ(RunEval(c, log), kExitConfigError);
  c.scene.reset();
  EXPECT_EQ(RunEval(c, log), kExitConfigError);
}

TEST(RunScoreRewards, SelfReferenceIsPerfect) {
  auto dir = testing::TempDir("pipe_rewards");
  fs::create_directories(dir / "in");
  WritePerfectSit(dir / "in" / "sit.json");
  PipelineConfig c;
  c.input = (dir / "in").string();
  c.reference = (dir / "in").string();
  c.output = (dir / "out").string();
  c.task = TaskId::kSitChair;
  std::ostringstream log;
  ASSERT_EQ(RunScoreRewards(c, log), kExitOk) << log.str();
  std::stringstream csv(ReadText(dir / "out" / "sit.rewards.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, RewardCsvHeader());
  std::getline(csv, line);
  EXPECT_EQ(line, "0,1,20,5,0,0,0,0,0,0,0,26");
  c.task.reset();
  EXPECT_EQ(RunScoreRewards(c, log), kExitConfigError);
}

TEST(RunElevation, PelvisRigToMaps) {
  auto dir = testing::TempDir("pipe_elevation");
  fs::create_directories(dir / "depth");
  for (const Camera& cam : PelvisCameraRig().cameras) {
    DepthImage img{cam.id, cam.width, cam.height, std::vector<float>(cam.width * cam.height, 2.0f)};
    SaveDepthImage(img, (dir / "depth" / (cam.id + ".f32")).string());
  }
  PipelineConfig c;
  c.input = (dir / "depth").string();
  c.output = (dir / "out").string();
  c.task = TaskId::kLieBed;
  std::ostringstream log;
  ASSERT_EQ(RunElevation(c, log), kExitOk) << log.str();
  EXPECT_EQ(fs::file_size(dir / "out" / "elevation.f32"), 128u * 128u * 4u);
  EXPECT_TRUE(fs::exists(dir / "out" / "elevation.pgm"));
  c.task = TaskId::kTouchPoints;  // head rig has no image here
  EXPECT_EQ(RunElevation(c, log), kExitConfigError);
}

TEST(RunReport, MergesEvalCsvs) {
  auto dir = testing::TempDir("pipe_report");
  WriteText(dir / "a.csv", EvalCsvHeader() + "\nm1,1,0,1,1,1,1,1\nm2,0,5,1,1,1,1,0\nsummary,0.5,,,,,,0.5\n");
  WriteText(dir / "b.csv", EvalCsvHeader() + "\nm3,1,3000000,0,0,1,1,0.5\n");
  PipelineConfig c;
  c.input = (dir / "a.csv").string();
  c.inputs = {(dir / "b.csv").string()};
  c.output = (dir / "summary.csv").string();
  std::ostringstream log;
  ASSERT_EQ(RunReport(c, log), kExitOk) << log.str();
  EXPECT_EQ(ReadText(dir / "summary.csv"),
            "report,motions,kinematic,success_avg\na,2,0.5,0.5\nb,1,1,0.5\noverall,3,0.6666666666666666,0.5\n");
  WriteText(dir / "bad.csv", "x,y\n");
  c.inputs = {(dir / "bad.csv").string()};
  EXPECT_EQ(RunReport(c, log), kExitConfigError);
}

TEST(PipelineConfig, ParseAndReject) {
  PipelineConfig c = ParsePipelineConfig(
      R"({"input": "in", "output": "out", "algorithm": "align-optimize", "task": "T",
          "retarget": {"lambda_hand": 0.5, "epochs": 10}, "seed": 7, "workers": 2})");
  EXPECT_EQ(c.algorithm, RetargetAlgorithm::kAlignOptimize);
  EXPECT_EQ(*c.task, TaskId::kTouchPoints);
  EXPECT_EQ(*c.retarget.lambda_hand, 0.5);
  EXPECT_EQ(c.retarget.epochs, 10);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_THROW(ParsePipelineConfig(R"({"inptu": "x"})"), ConfigError);
  EXPECT_THROW(ParsePipelineConfig(R"({"algorithm": "magic"})"), ConfigError);
  EXPECT_THROW(ParsePipelineConfig(R"({"retarget": {"lr": 1}})"), ConfigError);
  EXPECT_THROW(ParsePipelineConfig("[1"), ParseError);
}

int RunCli(const std::string& args) {
  int status = std::system((std::string(MIMIC_CLI_PATH) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodes) {
  auto dir = testing::TempDir("pipe_cli");
  testing::WriteHumanCorpus(dir / "in", 1, 4, 6);
  const std::string in = (dir / "in").string();
  const std::string out = (dir / "out").string();
  EXPECT_EQ(RunCli("retarget --algo copy --mapping unihsi --in " + in + " --out " + out), 0);
  EXPECT_TRUE(fs::exists(dir / "out" / "seq_0.json"));
  EXPECT_EQ(RunCli("retarget --algo optimize --task SC --lambda-hand 0.5 --in " + in + " --out " + out), 2);
  EXPECT_EQ(RunCli("retarget --algo bogus --in " + in + " --out " + out), 2);
  EXPECT_EQ(RunCli("retarget --no-such-flag"), 2);
  EXPECT_EQ(RunCli("eval --in " + out + " --out " + (dir / "eval").string() + " --scene " +
                   (dir / "missing.json").string()),
            2);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  auto dir = testing::TempDir("pipe_cli_config");
  testing::WriteHumanCorpus(dir / "in", 1, 4, 7);
  nlohmann::json cfg = {{"input", (dir / "in").string()}, {"output", (dir / "from_config").string()},
                        {"algorithm", "copy"}};
  WriteText(dir / "cfg.json", cfg.dump());
  EXPECT_EQ(RunCli("retarget --config " + (dir / "cfg.json").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "from_config" / "manifest.json"));
  EXPECT_EQ(RunCli("retarget --config " + (dir / "cfg.json").string() + " --out " + (dir / "flag").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "flag" / "manifest.json"));
}

}  // namespace
}  // namespace mimic
