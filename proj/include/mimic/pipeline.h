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

#ifndef MIMIC_PIPELINE_H_
#define MIMIC_PIPELINE_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mimic/retarget.h"
#include "mimic/rewards.h"
#include "mimic/task.h"

namespace mimic {

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailures = 1;
inline constexpr int kExitConfigError = 2;

enum class RetargetAlgorithm { kCopy, kOptimize, kAlignOptimize };

RetargetAlgorithm ParseRetargetAlgorithm(std::string_view name);  // copy | optimize | align-optimize
std::string_view RetargetAlgorithmName(RetargetAlgorithm algorithm);

struct PipelineConfig {
  // Motion file or directory of motion files (*.json, sorted by name).
  std::string input;
  // Output directory, or output file for `report`.
  std::string output;
  // Human skeleton name or file; defaults to the mapping's human skeleton.
  std::optional<std::string> human_skeleton;
  std::string humanoid_skeleton = "h1";
  std::string mapping = "unihsi";
  RetargetAlgorithm algorithm = RetargetAlgorithm::kOptimize;
  RetargetConfig retarget;
  std::optional<TaskId> task;
  // Scene file shared by every motion, or a directory holding `<stem>.json`
  // per motion.
  std::optional<std::string> scene;
  std::optional<std::string> pd_gains;
  // Reference motion file or directory for score-rewards.
  std::optional<std::string> reference;
  TrackerVariant variant = TrackerVariant::kHst;
  std::optional<double> cell_size;
  // Apply the kinematic metric to retargeted motions and skip the failures.
  bool filter = false;
  // Recorded in outputs. Every stage is deterministic for fixed inputs.
  uint64_t seed = 0;
  // Worker threads; 0 picks the hardware concurrency.
  int workers = 0;
  // Extra inputs for `report`.
  std::vector<std::string> inputs;
};

// Reads a JSON config. Keys mirror the command-line flags:
// {"input", "output", "human_skeleton", "humanoid_skeleton", "mapping",
//  "algorithm", "task", "scene", "pd_gains", "reference", "variant",
//  "cell_size", "filter", "seed", "workers", "inputs",
//  "retarget": {"lambda_pos", "lambda_hand", "lambda_ori", "lambda_acc",
//               "learning_rate", "epochs"}}
// Throws ParseError / ConfigError.
PipelineConfig ParsePipelineConfig(std::string_view json_text);
PipelineConfig LoadPipelineConfig(const std::string& path);

// Motion files of a corpus, sorted. Throws IoError when the path is missing.
std::vector<std::string> ListCorpus(const std::string& path);

// Each command returns an exit code and writes diagnostics to `log`.
//
// retarget: one motion file per input plus manifest.json in the output
//   directory. Per-sequence failures are recorded in the manifest; exit 1
//   when any sequence failed.
int RunRetarget(const PipelineConfig& config, std::ostream& log);
// eval: report.csv in the output directory with one row per motion and a
//   summary row. Exit 1 when no motion succeeded at any energy bound.
int RunEval(const PipelineConfig& config, std::ostream& log);
// elevation: rasterizes the depth images in `input` with the task's camera
//   rig into `<output>/elevation.{pgm,f32}`; task T with a scene also writes
//   `<output>/targets.{pgm,f32}`.
int RunElevation(const PipelineConfig& config, std::ostream& log);
// score-rewards: `<output>/<stem>.rewards.csv` per motion, scored frame by
//   frame against the reference motion of the same name.
int RunScoreRewards(const PipelineConfig& config, std::ostream& log);
// report: merges eval report CSVs (input plus inputs) into one summary CSV at
//   `output` with a row per report and an overall row.
int RunReport(const PipelineConfig& config, std::ostream& log);

// CSV text of an eval run, exposed for tests.
std::string EvalCsvHeader();

}  // namespace mimic

#endif  // MIMIC_PIPELINE_H_
