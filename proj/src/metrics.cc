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

#include "mimic/metrics.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "mimic/errors.h"

namespace mimic {
namespace {

// Number of frames inside the time limit.
int EvaluatedFrames(const MotionSequence& motion, double time_limit) {
  int limit = static_cast<int>(std::floor(time_limit * motion.fps + 1e-9)) + 1;
  return std::min(motion.num_frames(), limit);
}

// First run of `window` consecutive frames for which `ok` holds.
KinematicResult FindWindow(int frames, int window, double fps, const std::function<bool(int)>& ok) {
  int run = 0;
  for (int f = 0; f < frames; ++f) {
    run = ok(f) ? run + 1 : 0;
    if (run >= window) return {true, (f - window + 1) / fps};
  }
  return {false, std::nullopt};
}

bool InBand(double z, double base, double band) { return z >= base && z <= base + band; }

Landmark Resolve(const Skeleton& skeleton, const std::string& name) {
  try {
    return skeleton.ResolveLandmark(name);
  } catch (const LookupError& e) {
    throw SchemaError(std::string("kinematic metric: ") + e.what());
  }
}

double MeanAbs(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().mean() : 0.0; }

}  // namespace

int WindowFrames(double seconds, double fps) {
  return std::max(1, static_cast<int>(std::ceil(seconds * fps - 1e-9)));
}

KinematicResult KinematicSuccess(const TaskScene& scene, const MotionSequence& motion,
                                 const Skeleton& skeleton, const MetricLandmarks& names) {
  ValidateScene(scene);
  ValidateMotion(motion, skeleton);
  const int frames = EvaluatedFrames(motion, scene.time_limit());

  std::vector<std::vector<RigidTransform>> fk(frames);
  for (int f = 0; f < frames; ++f) fk[f] = ForwardKinematics(skeleton, motion.frames[f]);
  auto point = [&](int f, const Landmark& l) { return LandmarkPosition(fk[f], l); };
  auto inside = [&](const Vec3& p) { return InsideConvexPolygon(scene.footprint, p.head<2>()); };

  switch (scene.task) {
    case TaskId::kSitChair:
    case TaskId::kSitSofa: {
      const double h = *scene.seat_height;
      return FindWindow(frames, WindowFrames(kHoldSeconds, motion.fps), motion.fps, [&](int f) {
        const Vec3& pelvis = fk[f][0].position;
        return inside(pelvis) && InBand(pelvis.z(), h, kSitHeightBand);
      });
    }
    case TaskId::kLieBed: {
      const double h = *scene.seat_height;
      const Landmark la = Resolve(skeleton, names.left_ankle);
      const Landmark ra = Resolve(skeleton, names.right_ankle);
      return FindWindow(frames, WindowFrames(kHoldSeconds, motion.fps), motion.fps, [&](int f) {
        for (const Vec3& p : {fk[f][0].position, point(f, la), point(f, ra)}) {
          if (!inside(p) || !InBand(p.z(), h, kLieHeightBand)) return false;
        }
        return true;
      });
    }
    case TaskId::kLieSofa: {
      const double h = *scene.seat_height;
      const double half_sofa = 0.5 * *scene.sofa_height;
      const Landmark la = Resolve(skeleton, names.left_ankle);
      const Landmark ra = Resolve(skeleton, names.right_ankle);
      return FindWindow(frames, WindowFrames(kHoldSeconds, motion.fps), motion.fps, [&](int f) {
        const Vec3& pelvis = fk[f][0].position;
        return inside(pelvis) && InBand(pelvis.z(), h, kLieHeightBand) &&
               point(f, la).z() >= half_sofa && point(f, ra).z() >= half_sofa;
      });
    }
    case TaskId::kTouchPoints: {
      const auto& targets = *scene.targets;
      const Landmark lw = Resolve(skeleton, names.left_wrist);
      const Landmark rw = Resolve(skeleton, names.right_wrist);
      return FindWindow(frames, WindowFrames(kTouchHoldSeconds, motion.fps), motion.fps, [&](int f) {
        return (point(f, lw) - targets[0]).norm() <= kWristTolerance &&
               (point(f, rw) - targets[1]).norm() <= kWristTolerance;
      });
    }
    case TaskId::kLiftBox: {
      if (!motion.object) throw SchemaError("task L needs the motion's object channel");
      const Landmark lw = Resolve(skeleton, names.left_wrist);
      const Landmark rw = Resolve(skeleton, names.right_wrist);
      const int last = frames - 1;
      OrientedBox box = *scene.box;
      box.pose = (*motion.object)[last];
      double lifted = (*motion.object)[last].position.z() - (*motion.object)[0].position.z();
      bool pass = lifted >= scene.lift_height &&
                  box.DistanceToSurface(point(last, lw)) <= kWristTolerance &&
                  box.DistanceToSurface(point(last, rw)) <= kWristTolerance;
      if (!pass) return {false, std::nullopt};
      return {true, last / motion.fps};
    }
  }
  return {};
}

std::vector<double> EnergySeries(std::span<const Eigen::VectorXd> torques,
                                 std::span<const Eigen::VectorXd> velocities) {
  if (torques.size() != velocities.size()) {
    throw DimensionError("energy series: " + std::to_string(torques.size()) + " torque frames vs " +
                         std::to_string(velocities.size()) + " velocity frames");
  }
  std::vector<double> out;
  out.reserve(torques.size());
  for (size_t i = 0; i < torques.size(); ++i) {
    double e = MeanAbs(torques[i]) * MeanAbs(velocities[i]);
    out.push_back(e * e);
  }
  return out;
}

bool PhysicalSuccess(std::span<const double> series, double threshold) {
  if (series.empty()) throw DimensionError("physical metric needs a non-empty energy series");
  if (!(threshold > 0.0)) throw ConfigError("energy threshold must be positive");
  return *std::max_element(series.begin(), series.end()) < threshold;
}

PdGains ParsePdGains(std::string_view json_text) {
  try {
    nlohmann::json doc = nlohmann::json::parse(json_text);
    auto read = [&](const char* key) {
      const auto& arr = doc.at(key);
      Eigen::VectorXd v(arr.size());
      for (size_t i = 0; i < arr.size(); ++i) v[i] = arr[i].get<double>();
      return v;
    };
    PdGains gains{read("kp"), read("kd")};
    if (gains.kp.size() != gains.kd.size()) throw SchemaError("PD gains: kp and kd differ in width");
    return gains;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("PD gains: ") + e.what());
  }
}

PdGains LoadPdGains(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open PD gains file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ParsePdGains(ss.str());
}

std::vector<Eigen::VectorXd> PdTorques(std::span<const Eigen::VectorXd> actions,
                                       std::span<const Eigen::VectorXd> angles,
                                       std::span<const Eigen::VectorXd> velocities,
                                       const PdGains& gains) {
  if (actions.size() != angles.size() || actions.size() != velocities.size()) {
    throw DimensionError("PD torques: frame counts differ");
  }
  std::vector<Eigen::VectorXd> out;
  out.reserve(actions.size());
  for (size_t f = 0; f < actions.size(); ++f) {
    const Eigen::Index n = gains.kp.size();
    if (actions[f].size() != n || angles[f].size() != n || velocities[f].size() != n ||
        gains.kd.size() != n) {
      throw DimensionError("PD torques: width mismatch at frame " + std::to_string(f));
    }
    out.push_back(gains.kp.cwiseProduct(actions[f] - angles[f]) - gains.kd.cwiseProduct(velocities[f]));
  }
  return out;
}

double EvalReport::max_energy() const {
  if (energy_series.empty()) return 0.0;
  return *std::max_element(energy_series.begin(), energy_series.end());
}

double EvalReport::success_average() const {
  double s = 0.0;
  for (bool b : success) s += b ? 1.0 : 0.0;
  return s / success.size();
}

EvalReport Evaluate(const std::string& motion_id, const TaskScene& scene, const MotionSequence& motion,
                    const Skeleton& skeleton, const PdGains* gains, const MetricLandmarks& names) {
  EvalReport report;
  report.motion_id = motion_id;
  KinematicResult k = KinematicSuccess(scene, motion, skeleton, names);
  report.kinematic_pass = k.pass;
  report.window_start = k.window_start;

  KinematicDerivatives d = DeriveKinematics(motion, skeleton);
  const int n = motion.num_frames();
  std::vector<Eigen::VectorXd> velocities(n);
  for (int f = 0; f < n; ++f) velocities[f] = d.joint_velocities.row(f).transpose();

  if (motion.torques) {
    report.energy_series = EnergySeries(*motion.torques, velocities);
  } else if (motion.actions && gains) {
    Eigen::MatrixXd angles = JointAngleMatrix(motion, skeleton);
    std::vector<Eigen::VectorXd> angle_rows(n);
    for (int f = 0; f < n; ++f) angle_rows[f] = angles.row(f).transpose();
    report.energy_series = EnergySeries(PdTorques(*motion.actions, angle_rows, velocities, *gains), velocities);
  }
  report.has_energy = !report.energy_series.empty();
  for (size_t i = 0; i < kEnergyThresholds.size(); ++i) {
    report.physical_pass[i] = report.has_energy && PhysicalSuccess(report.energy_series, kEnergyThresholds[i]);
    report.success[i] = report.kinematic_pass && report.physical_pass[i];
  }
  return report;
}

SuccessRates Aggregate(std::span<const EvalReport> reports) {
  if (reports.empty()) throw DimensionError("cannot aggregate an empty report list");
  SuccessRates rates;
  for (const EvalReport& r : reports) {
    rates.kinematic += r.kinematic_pass ? 1.0 : 0.0;
    rates.energy_averaged += r.success_average();
  }
  rates.kinematic /= reports.size();
  rates.energy_averaged /= reports.size();
  return rates;
}

}  // namespace mimic
