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

// Command-line driver for the retargeting, evaluation and perception tools.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mimic/errors.h"
#include "mimic/pipeline.h"
#include "mimic/scene.h"

namespace {

// Flag values as parsed; only flags the user gave override the config file.
struct Flags {
  std::string config;
  std::string input, output, human_skeleton, humanoid_skeleton, mapping, algorithm, task, scene, pd_gains,
      reference, variant;
  std::vector<std::string> inputs;
  double cell_size = 0, lambda_pos = 0, lambda_hand = 0, lambda_ori = 0, lambda_acc = 0, learning_rate = 0;
  int epochs = 0, workers = 0;
  uint64_t seed = 0;
  bool filter = false;
};

void AddCommon(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "JSON config file");
  app->add_option("--in", f.input, "input file or directory");
  app->add_option("--out", f.output, "output directory (output file for report)");
  app->add_option("--workers", f.workers, "worker threads (0 = all cores)");
  app->add_option("--seed", f.seed, "seed recorded with the outputs");
  app->add_option("--humanoid-skeleton", f.humanoid_skeleton, "humanoid skeleton name or file");
  app->add_option("--task", f.task, "task code: SC, SS, LB, LS, T or L");
}

mimic::PipelineConfig BuildConfig(CLI::App* app, const Flags& f) {
  mimic::PipelineConfig c;
  if (app->count("--config")) c = mimic::LoadPipelineConfig(f.config);
  auto has = [&](const char* name) {
    try {
      return app->count(name) > 0;
    } catch (const CLI::OptionNotFound&) {
      return false;
    }
  };
  if (has("--in")) c.input = f.input;
  if (has("--out")) c.output = f.output;
  if (has("--workers")) c.workers = f.workers;
  if (has("--seed")) c.seed = f.seed;
  if (has("--humanoid-skeleton")) c.humanoid_skeleton = f.humanoid_skeleton;
  if (has("--human-skeleton")) c.human_skeleton = f.human_skeleton;
  if (has("--mapping")) c.mapping = f.mapping;
  if (has("--algo")) c.algorithm = mimic::ParseRetargetAlgorithm(f.algorithm);
  if (has("--task")) c.task = mimic::ParseTaskCode(f.task);
  if (has("--scene")) c.scene = f.scene;
  if (has("--pd-gains")) c.pd_gains = f.pd_gains;
  if (has("--reference")) c.reference = f.reference;
  if (has("--variant")) c.variant = mimic::ParseTrackerVariant(f.variant);
  if (has("--cell-size")) c.cell_size = f.cell_size;
  if (has("--filter")) c.filter = f.filter;
  if (has("--lambda-pos")) c.retarget.lambda_pos = f.lambda_pos;
  if (has("--lambda-hand")) c.retarget.lambda_hand = f.lambda_hand;
  if (has("--lambda-ori")) c.retarget.lambda_ori = f.lambda_ori;
  if (has("--lambda-acc")) c.retarget.lambda_acc = f.lambda_acc;
  if (has("--lr")) c.retarget.learning_rate = f.learning_rate;
  if (has("--epochs")) c.retarget.epochs = f.epochs;
  if (has("--inputs")) c.inputs = f.inputs;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Human-to-humanoid motion retargeting and evaluation tools"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* retarget = app.add_subcommand("retarget", "retarget a corpus of human motions");
  AddCommon(retarget, f);
  retarget->add_option("--algo", f.algorithm, "copy, optimize or align-optimize");
  retarget->add_option("--mapping", f.mapping, "mapping preset (unihsi, roam, core4d) or file");
  retarget->add_option("--human-skeleton", f.human_skeleton, "human skeleton name or file");
  retarget->add_option("--scene", f.scene, "scene file or directory (for --filter)");
  retarget->add_flag("--filter", f.filter, "drop outputs that fail the kinematic metric");
  retarget->add_option("--lambda-pos", f.lambda_pos);
  retarget->add_option("--lambda-hand", f.lambda_hand);
  retarget->add_option("--lambda-ori", f.lambda_ori);
  retarget->add_option("--lambda-acc", f.lambda_acc);
  retarget->add_option("--lr", f.learning_rate, "Adam learning rate");
  retarget->add_option("--epochs", f.epochs);

  CLI::App* eval = app.add_subcommand("eval", "kinematic and physical metrics for humanoid motions");
  AddCommon(eval, f);
  eval->add_option("--scene", f.scene, "scene file or directory of <motion>.json scenes");
  eval->add_option("--pd-gains", f.pd_gains, "PD gains file for motions that only carry actions");

  CLI::App* elevation = app.add_subcommand("elevation", "elevation map from depth images");
  AddCommon(elevation, f);
  elevation->add_option("--scene", f.scene, "task T scene with wrist targets");
  elevation->add_option("--cell-size", f.cell_size, "cell size in meters");

  CLI::App* score = app.add_subcommand("score-rewards", "per-frame tracking rewards against a reference");
  AddCommon(score, f);
  score->add_option("--reference", f.reference, "reference motion file or directory");
  score->add_option("--variant", f.variant, "hst or phc");
  score->add_option("--pd-gains", f.pd_gains, "PD gains file for motions that only carry actions");

  CLI::App* report = app.add_subcommand("report", "merge eval reports");
  AddCommon(report, f);
  report->add_option("--inputs", f.inputs, "more eval report CSVs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : mimic::kExitConfigError;
  }

  CLI::App* cmd = app.get_subcommands().front();
  mimic::PipelineConfig config;
  try {
    config = BuildConfig(cmd, f);
  } catch (const mimic::Error& e) {
    std::cerr << cmd->get_name() << ": " << e.what() << "\n";
    return mimic::kExitConfigError;
  }
  if (cmd == retarget) return mimic::RunRetarget(config, std::cerr);
  if (cmd == eval) return mimic::RunEval(config, std::cerr);
  if (cmd == elevation) return mimic::RunElevation(config, std::cerr);
  if (cmd == score) return mimic::RunScoreRewards(config, std::cerr);
  return mimic::RunReport(config, std::cerr);
}
