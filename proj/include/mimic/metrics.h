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

#ifndef MIMIC_METRICS_H_
#define MIMIC_METRICS_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mimic/motion.h"
#include "mimic/scene.h"
#include "mimic/skeleton.h"

namespace mimic {

// Kinematic success thresholds.
inline constexpr double kSitHeightBand = 0.27;    // pelvis within [H, H + 0.27]
inline constexpr double kLieHeightBand = 0.4;     // within [H, H + 0.4]
inline constexpr double kHoldSeconds = 0.3;       // sitting and lying tasks
inline constexpr double kTouchHoldSeconds = 1.0;  // touching points
inline constexpr double kWristTolerance = 0.1;    // meters, touch and lift
inline constexpr double kDefaultLiftHeight = 0.2;

// Energy bounds swept by the physical metric.
inline constexpr std::array<double, 4> kEnergyThresholds = {1e6, 2e6, 4e6, 8e6};

// Landmark names used by the kinematic metrics. The pelvis is the root.
struct MetricLandmarks {
  std::string left_ankle = "left_ankle";
  std::string right_ankle = "right_ankle";
  std::string left_wrist = "left_wrist";
  std::string right_wrist = "right_wrist";
};

struct KinematicResult {
  bool pass = false;
  // Start time (seconds) of the first window that satisfied the condition.
  std::optional<double> window_start;
};

// Number of consecutive frames covering `seconds` at `fps`.
int WindowFrames(double seconds, double fps);

// Task-specific kinematic success predicate. Frames after the task's time
// limit are ignored. Throws SchemaError when the scene lacks fields the task
// needs or the skeleton lacks a required landmark.
KinematicResult KinematicSuccess(const TaskScene& scene, const MotionSequence& motion,
                                 const Skeleton& skeleton, const MetricLandmarks& names = {});

// Per-frame (mean |tau| * mean |velocity|)^2.
std::vector<double> EnergySeries(std::span<const Eigen::VectorXd> torques,
                                 std::span<const Eigen::VectorXd> velocities);

// True iff max(series) < threshold. Throws on an empty series.
bool PhysicalSuccess(std::span<const double> series, double threshold);

struct PdGains {
  Eigen::VectorXd kp;
  Eigen::VectorXd kd;
};

// {"kp": [...], "kd": [...]}
PdGains LoadPdGains(const std::string& path);
PdGains ParsePdGains(std::string_view json_text);

// tau = kp * (action - angle) - kd * velocity, per frame and joint.
std::vector<Eigen::VectorXd> PdTorques(std::span<const Eigen::VectorXd> actions,
                                       std::span<const Eigen::VectorXd> angles,
                                       std::span<const Eigen::VectorXd> velocities,
                                       const PdGains& gains);

struct EvalReport {
  std::string motion_id;
  bool kinematic_pass = false;
  std::optional<double> window_start;
  // Empty when the motion had neither torques nor actions with gains.
  std::vector<double> energy_series;
  bool has_energy = false;
  std::array<bool, 4> physical_pass{};
  std::array<bool, 4> success{};

  double max_energy() const;
  // Mean over the four thresholds of success.
  double success_average() const;
};

// Kinematic and physical evaluation of one motion. Torques come from the
// motion when present, otherwise from PD control of the recorded actions
// when `gains` is given; with neither the physical metric fails.
EvalReport Evaluate(const std::string& motion_id, const TaskScene& scene, const MotionSequence& motion,
                    const Skeleton& skeleton, const PdGains* gains = nullptr,
                    const MetricLandmarks& names = {});

struct SuccessRates {
  double kinematic = 0.0;
  double energy_averaged = 0.0;
};

// Throws on an empty list.
SuccessRates Aggregate(std::span<const EvalReport> reports);

}  // namespace mimic

#endif  // MIMIC_METRICS_H_
