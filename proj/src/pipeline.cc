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

#include <algorithm>
#include <atomic>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "mimic/camera.h"
#include "mimic/elevation.h"
#include "mimic/errors.h"
#include "mimic/mapping.h"
#include "mimic/metrics.h"
#include "mimic/motion_io.h"
#include "mimic/scene.h"
#include "mimic/skeleton.h"
#include "mimic/track_state.h"

namespace mimic {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string Num(double v) {
  if (v == 0.0) v = 0.0;  // no "-0" in CSVs
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string Stem(const std::string& path) { return fs::path(path).stem().string(); }

void WriteFile(const fs::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << data;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void EnsureOutputDir(const std::string& dir) {
  if (dir.empty()) throw ConfigError("an output directory is required");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "'");
}

int WorkerCount(const PipelineConfig& config, size_t jobs) {
  int n = config.workers > 0 ? config.workers : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(1, n);
  return static_cast<int>(std::min<size_t>(n, std::max<size_t>(jobs, 1)));
}

// Runs job(i) for i in [0, count) on a bounded pool. Results are stored by
// the jobs themselves, indexed by i.
void ParallelFor(size_t count, int workers, const std::function<void(size_t)>& job) {
  std::atomic<size_t> next{0};
  auto loop = [&] {
    for (size_t i = next++; i < count; i = next++) job(i);
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(loop);
  loop();
  for (std::thread& t : pool) t.join();
}

// Scene for a motion: a shared file or `<dir>/<stem>.json`.
TaskScene SceneFor(const PipelineConfig& config, const std::string& motion_path) {
  if (!config.scene) throw ConfigError("a scene file or directory is required");
  std::string path = *config.scene;
  if (fs::is_directory(path)) path = (fs::path(path) / (Stem(motion_path) + ".json")).string();
  if (!fs::is_regular_file(path)) throw IoError("missing scene file '" + path + "'");
  TaskScene scene = LoadScene(path);
  if (config.task && *config.task != scene.task) {
    throw ConfigError("scene '" + path + "' is for task " + std::string(TaskCode(scene.task)) +
                      " but the config names task " + std::string(TaskCode(*config.task)));
  }
  return scene;
}

// Checks every scene up front so a missing one is a configuration error
// rather than a per-motion failure.
std::vector<TaskScene> LoadScenes(const PipelineConfig& config, const std::vector<std::string>& corpus) {
  std::vector<TaskScene> scenes;
  for (const std::string& path : corpus) scenes.push_back(SceneFor(config, path));
  return scenes;
}

std::string ReferenceFor(const PipelineConfig& config, const std::string& motion_path) {
  if (!config.reference) throw ConfigError("a reference motion file or directory is required");
  std::string path = *config.reference;
  if (fs::is_directory(path)) path = (fs::path(path) / fs::path(motion_path).filename()).string();
  if (!fs::is_regular_file(path)) throw IoError("missing reference motion '" + path + "'");
  return path;
}

template <typename Fn>
int Guard(std::ostream& log, const char* command, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    log << command << ": " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    log << command << ": unexpected error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

struct RetargetOutcome {
  std::string id;
  std::string status = "failed";
  std::optional<LossBreakdown> loss;
  std::optional<double> position_error;
  std::string error;
  std::string motion_text;
};

RetargetOutcome RetargetOne(const PipelineConfig& config, const std::string& path, const Skeleton& human,
                            const Skeleton& humanoid, const JointMapping& mapping) {
  RetargetOutcome out;
  out.id = Stem(path);
  try {
    MotionSequence human_motion = LoadMotion(path, human);
    MotionSequence result;
    switch (config.algorithm) {
      case RetargetAlgorithm::kCopy: {
        result = CopyRotation(human_motion, human, humanoid, mapping);
        ReferenceTargets targets = MakeReferenceTargets(human_motion, human, mapping);
        RetargetObjective objective(humanoid, mapping, targets, config.retarget);
        RetargetState state = RetargetState::FromMotion(result, humanoid);
        out.loss = objective.Evaluate(state);
        out.position_error = objective.MeanJointPositionError(state);
        break;
      }
      case RetargetAlgorithm::kOptimize:
      case RetargetAlgorithm::kAlignOptimize: {
        RetargetResult r = config.algorithm == RetargetAlgorithm::kOptimize
                               ? RetargetOptimize(human_motion, human, humanoid, mapping, config.retarget)
                               : RetargetAlignOptimize(human_motion, human, humanoid, mapping, config.retarget);
        result = std::move(r.motion);
        out.loss = r.loss;
        out.position_error = r.mean_position_error;
        break;
      }
    }
    if (config.filter) {
      TaskScene scene = SceneFor(config, path);
      if (!KinematicSuccess(scene, result, humanoid).pass) {
        out.status = "filtered";
        return out;
      }
    }
    out.motion_text = SerializeMotion(result);
    out.status = "ok";
  } catch (const std::exception& e) {
    out.status = "failed";
    out.error = e.what();
  }
  return out;
}

json LossJson(const LossBreakdown& l) {
  return {{"total", l.total}, {"pos", l.pos}, {"hand", l.hand}, {"ori", l.ori}, {"acc", l.acc}};
}

std::string EvalCsvRow(const EvalReport& r) {
  std::string row = r.motion_id + "," + (r.kinematic_pass ? "1" : "0") + ",";
  row += r.has_energy ? Num(r.max_energy()) : "no-energy";
  for (bool p : r.physical_pass) row += p ? ",1" : ",0";
  row += "," + Num(r.success_average());
  return row;
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

RetargetAlgorithm ParseRetargetAlgorithm(std::string_view name) {
  if (name == "copy") return RetargetAlgorithm::kCopy;
  if (name == "optimize") return RetargetAlgorithm::kOptimize;
  if (name == "align-optimize") return RetargetAlgorithm::kAlignOptimize;
  throw ConfigError("unknown retarget algorithm '" + std::string(name) +
                    "' (expected copy, optimize or align-optimize)");
}

std::string_view RetargetAlgorithmName(RetargetAlgorithm algorithm) {
  switch (algorithm) {
    case RetargetAlgorithm::kCopy:
      return "copy";
    case RetargetAlgorithm::kOptimize:
      return "optimize";
    case RetargetAlgorithm::kAlignOptimize:
      return "align-optimize";
  }
  return "?";
}

PipelineConfig ParsePipelineConfig(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  PipelineConfig c;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "input") c.input = value.get<std::string>();
      else if (key == "output") c.output = value.get<std::string>();
      else if (key == "human_skeleton") c.human_skeleton = value.get<std::string>();
      else if (key == "humanoid_skeleton") c.humanoid_skeleton = value.get<std::string>();
      else if (key == "mapping") c.mapping = value.get<std::string>();
      else if (key == "algorithm") c.algorithm = ParseRetargetAlgorithm(value.get<std::string>());
      else if (key == "task") c.task = ParseTaskCode(value.get<std::string>());
      else if (key == "scene") c.scene = value.get<std::string>();
      else if (key == "pd_gains") c.pd_gains = value.get<std::string>();
      else if (key == "reference") c.reference = value.get<std::string>();
      else if (key == "variant") c.variant = ParseTrackerVariant(value.get<std::string>());
      else if (key == "cell_size") c.cell_size = value.get<double>();
      else if (key == "filter") c.filter = value.get<bool>();
      else if (key == "seed") c.seed = value.get<uint64_t>();
      else if (key == "workers") c.workers = value.get<int>();
      else if (key == "inputs") c.inputs = value.get<std::vector<std::string>>();
      else if (key == "retarget") {
        for (const auto& [k, v] : value.items()) {
          if (k == "lambda_pos") c.retarget.lambda_pos = v.get<double>();
          else if (k == "lambda_hand") c.retarget.lambda_hand = v.get<double>();
          else if (k == "lambda_ori") c.retarget.lambda_ori = v.get<double>();
          else if (k == "lambda_acc") c.retarget.lambda_acc = v.get<double>();
          else if (k == "learning_rate") c.retarget.learning_rate = v.get<double>();
          else if (k == "epochs") c.retarget.epochs = v.get<int>();
          else throw ConfigError("config: unknown retarget key '" + k + "'");
        }
      } else {
        throw ConfigError("config: unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const LookupError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

PipelineConfig LoadPipelineConfig(const std::string& path) { return ParsePipelineConfig(ReadFile(path)); }

std::vector<std::string> ListCorpus(const std::string& path) {
  if (path.empty()) throw ConfigError("an input path is required");
  if (fs::is_regular_file(path)) return {path};
  if (!fs::is_directory(path)) throw IoError("cannot read corpus '" + path + "'");
  std::vector<std::string> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(path, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json" && entry.path().filename() != "manifest.json") {
      files.push_back(entry.path().string());
    }
  }
  if (ec) throw IoError("cannot list corpus '" + path + "': " + ec.message());
  std::sort(files.begin(), files.end());
  return files;
}

int RunRetarget(const PipelineConfig& config, std::ostream& log) {
  return Guard(log, "retarget", [&] {
    RetargetConfig rc = config.retarget;
    rc.task = config.task;
    rc.Validate();
    const JointMapping mapping = LoadMapping(config.mapping);
    const Skeleton human = ResolveSkeleton(config.human_skeleton.value_or(mapping.human_skeleton));
    const Skeleton humanoid = ResolveSkeleton(config.humanoid_skeleton);
    ValidateMapping(mapping, human, humanoid);
    const std::vector<std::string> corpus = ListCorpus(config.input);
    EnsureOutputDir(config.output);
    if (config.filter) LoadScenes(config, corpus);

    PipelineConfig effective = config;
    effective.retarget = rc;
    std::vector<RetargetOutcome> outcomes(corpus.size());
    ParallelFor(corpus.size(), WorkerCount(config, corpus.size()), [&](size_t i) {
      outcomes[i] = RetargetOne(effective, corpus[i], human, humanoid, mapping);
    });

    json entries = json::array();
    int failed = 0;
    for (const RetargetOutcome& o : outcomes) {
      json e = {{"id", o.id}, {"status", o.status}};
      e["loss"] = o.loss ? LossJson(*o.loss) : json(nullptr);
      e["mean_position_error"] = o.position_error ? json(*o.position_error) : json(nullptr);
      if (o.status == "ok") {
        const std::string file = o.id + ".json";
        WriteFile(fs::path(config.output) / file, o.motion_text);
        e["output"] = file;
      }
      if (!o.error.empty()) {
        e["error"] = o.error;
        log << "retarget: " << o.id << ": " << o.error << "\n";
        ++failed;
      }
      entries.push_back(std::move(e));
    }
    json manifest = {{"algorithm", RetargetAlgorithmName(config.algorithm)},
                     {"mapping", config.mapping},
                     {"humanoid_skeleton", humanoid.name()},
                     {"seed", config.seed},
                     {"sequences", std::move(entries)}};
    WriteFile(fs::path(config.output) / "manifest.json", manifest.dump(2) + "\n");
    return failed > 0 ? kExitFailures : kExitOk;
  });
}

std::string EvalCsvHeader() { return "motion_id,kinematic,e_max,pass_1e6,pass_2e6,pass_4e6,pass_8e6,success_avg"; }

int RunEval(const PipelineConfig& config, std::ostream& log) {
  return Guard(log, "eval", [&] {
    const Skeleton skeleton = ResolveSkeleton(config.humanoid_skeleton);
    const std::vector<std::string> corpus = ListCorpus(config.input);
    EnsureOutputDir(config.output);
    const std::vector<TaskScene> scenes = LoadScenes(config, corpus);
    std::optional<PdGains> gains;
    if (config.pd_gains) gains = LoadPdGains(*config.pd_gains);

    std::vector<MotionSequence> motions;
    for (const std::string& path : corpus) motions.push_back(LoadMotion(path, skeleton));

    std::vector<EvalReport> reports(corpus.size());
    ParallelFor(corpus.size(), WorkerCount(config, corpus.size()), [&](size_t i) {
      reports[i] = Evaluate(Stem(corpus[i]), scenes[i], motions[i], skeleton, gains ? &*gains : nullptr);
    });

    std::string csv = EvalCsvHeader() + "\n";
    for (const EvalReport& r : reports) {
      csv += EvalCsvRow(r) + "\n";
      if (!r.has_energy) log << "eval: " << r.motion_id << ": no torques and no actions with gains (no-energy)\n";
    }
    bool any_success = false;
    if (!reports.empty()) {
      SuccessRates rates = Aggregate(reports);
      csv += "summary," + Num(rates.kinematic) + ",,,,,," + Num(rates.energy_averaged) + "\n";
      any_success = rates.energy_averaged > 0.0;
    }
    WriteFile(fs::path(config.output) / "report.csv", csv);
    return (reports.empty() || any_success) ? kExitOk : kExitFailures;
  });
}

int RunElevation(const PipelineConfig& config, std::ostream& log) {
  return Guard(log, "elevation", [&] {
    if (!config.task) throw ConfigError("elevation needs a task to pick the camera rig");
    const CameraRig rig = CameraRigForTask(*config.task);
    const double cell = config.cell_size.value_or(*config.task == TaskId::kTouchPoints ? kTargetCellSize
                                                                                        : kDefaultCellSize);
    if (!fs::is_directory(config.input)) throw IoError("depth input '" + config.input + "' is not a directory");
    std::vector<std::string> raws;
    for (const auto& entry : fs::directory_iterator(config.input)) {
      if (entry.is_regular_file() && entry.path().extension() == ".f32") raws.push_back(entry.path().string());
    }
    std::sort(raws.begin(), raws.end());
    std::vector<DepthImage> images;
    for (const std::string& raw : raws) images.push_back(LoadDepthImage(raw));
    EnsureOutputDir(config.output);

    const std::vector<Vec3> points = RigPointCloud(images, rig);
    ElevationMap map = RasterizeElevation(points, cell);
    SaveElevation(map, (fs::path(config.output) / "elevation").string());
    log << "elevation: " << points.size() << " points, " << map.populated_cells() << " populated cells\n";

    if (*config.task == TaskId::kTouchPoints && config.scene) {
      TaskScene scene = LoadScene(*config.scene);
      const auto& t = *scene.targets;
      ElevationMap targets = TargetPointMap(t, kTargetCellSize);
      SaveElevation(targets, (fs::path(config.output) / "targets").string());
    }
    return kExitOk;
  });
}

int RunScoreRewards(const PipelineConfig& config, std::ostream& log) {
  return Guard(log, "score-rewards", [&] {
    if (!config.task) throw ConfigError("score-rewards needs a task");
    const TaskId task = *config.task;
    const Skeleton skeleton = ResolveSkeleton(config.humanoid_skeleton);
    const std::vector<std::string> corpus = ListCorpus(config.input);
    EnsureOutputDir(config.output);
    std::optional<PdGains> gains;
    if (config.pd_gains) gains = LoadPdGains(*config.pd_gains);
    RewardConfig rcfg;
    rcfg.variant = config.variant;

    std::vector<std::string> refs;
    for (const std::string& path : corpus) refs.push_back(ReferenceFor(config, path));
    std::vector<std::string> outputs(corpus.size());
    std::vector<std::string> errors(corpus.size());
    ParallelFor(corpus.size(), WorkerCount(config, corpus.size()), [&](size_t i) {
      try {
        MotionSequence motion = LoadMotion(corpus[i], skeleton);
        MotionSequence reference = LoadMotion(refs[i], skeleton);
        if (reference.num_frames() < motion.num_frames()) {
          throw DimensionError("reference is shorter than the motion");
        }
        TrackStateBuilder builder(skeleton, motion, reference, task);
        const Eigen::MatrixXd angles = JointAngleMatrix(motion, skeleton);
        const int dof = static_cast<int>(angles.cols());
        std::string csv = RewardCsvHeader() + "\n";
        for (int f = 0; f < motion.num_frames(); ++f) {
          TrackState state = builder.State(f, f);
          Eigen::VectorXd action = motion.actions ? (*motion.actions)[f] : Eigen::VectorXd(angles.row(f).transpose());
          Eigen::VectorXd torques = Eigen::VectorXd::Zero(dof);
          if (motion.torques) {
            torques = (*motion.torques)[f];
          } else if (motion.actions && gains) {
            torques = gains->kp.cwiseProduct(action - state.current.joint_angles) -
                      gains->kd.cwiseProduct(state.current.joint_velocities);
          }
          csv += RewardCsvRow(f, RewardTracking(task, state, action, torques, rcfg)) + "\n";
        }
        outputs[i] = std::move(csv);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    });
    int failed = 0;
    for (size_t i = 0; i < corpus.size(); ++i) {
      if (!errors[i].empty()) {
        log << "score-rewards: " << Stem(corpus[i]) << ": " << errors[i] << "\n";
        ++failed;
        continue;
      }
      WriteFile(fs::path(config.output) / (Stem(corpus[i]) + ".rewards.csv"), outputs[i]);
    }
    return failed > 0 ? kExitFailures : kExitOk;
  });
}

int RunReport(const PipelineConfig& config, std::ostream& log) {
  return Guard(log, "report", [&] {
    std::vector<std::string> files;
    if (!config.input.empty()) files.push_back(config.input);
    files.insert(files.end(), config.inputs.begin(), config.inputs.end());
    if (files.empty()) throw ConfigError("report needs at least one eval CSV");
    if (config.output.empty()) throw ConfigError("report needs an output file");

    std::string out = "report,motions,kinematic,success_avg\n";
    double total_k = 0.0;
    double total_s = 0.0;
    size_t total_n = 0;
    for (const std::string& path : files) {
      std::stringstream in(ReadFile(path));
      std::string line;
      if (!std::getline(in, line) || line != EvalCsvHeader()) {
        throw ParseError("'" + path + "' is not an eval report");
      }
      size_t n = 0;
      double k = 0.0;
      double s = 0.0;
      while (std::getline(in, line)) {
        if (line.empty() || line.rfind("summary,", 0) == 0) continue;
        std::vector<std::string> cells = SplitCsv(line);
        if (cells.size() != 8) throw ParseError("'" + path + "': malformed row '" + line + "'");
        try {
          k += std::stod(cells[1]);
          s += std::stod(cells[7]);
        } catch (const std::exception&) {
          throw ParseError("'" + path + "': malformed row '" + line + "'");
        }
        ++n;
      }
      out += Stem(path) + "," + std::to_string(n) + "," + (n ? Num(k / n) : "") + "," + (n ? Num(s / n) : "") + "\n";
      total_k += k;
      total_s += s;
      total_n += n;
    }
    out += "overall," + std::to_string(total_n) + "," + (total_n ? Num(total_k / total_n) : "") + "," +
           (total_n ? Num(total_s / total_n) : "") + "\n";
    fs::path dest(config.output);
    if (dest.has_parent_path()) fs::create_directories(dest.parent_path());
    WriteFile(dest, out);
    log << out;
    return kExitOk;
  });
}

}  // namespace mimic
