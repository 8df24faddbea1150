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

#ifndef MIMIC_REWARDS_H_
#define MIMIC_REWARDS_H_

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mimic/task.h"
#include "mimic/track_state.h"

namespace mimic {

enum class TrackerVariant { kHst, kPhc };

TrackerVariant ParseTrackerVariant(std::string_view name);  // "hst" or "phc"

// Root deviation beyond which an episode is cut.
inline constexpr double kTerminationDistance = 0.5;

struct RewardConfig {
  TrackerVariant variant = TrackerVariant::kHst;
  // Defaults to 100 for the sitting tasks and 10 otherwise.
  std::optional<double> lambda_height;
  // Magnitude of the energy penalty; the term is always non-positive.
  double energy_coefficient = 1e-6;

  double EffectiveHeightWeight(TaskId task) const;
};

struct RewardBreakdown {
  double pos = 0.0;
  double ori = 0.0;
  double root = 0.0;
  // Task-specific terms stay at zero for tasks that do not use them.
  double wrist = 0.0;
  double wrist_to_object = 0.0;
  double object = 0.0;
  double action = 0.0;
  double vel = 0.0;
  double acc = 0.0;
  double energy = 0.0;
  double human = 0.0;
  double reg = 0.0;
  double overall = 0.0;
};

// Tracking reward of one step. `action` is the action just emitted and
// `torques` the applied joint torques. Throws SchemaError when the state lacks
// fields the task needs and DimensionError on width mismatches.
RewardBreakdown RewardTracking(TaskId task, const TrackState& state, const Eigen::VectorXd& action,
                               const Eigen::VectorXd& torques, const RewardConfig& config = {});

// True iff the root is more than 0.5 m from its target or below
// `height_threshold` (world z).
bool EarlyTermination(const TrackState& state, double height_threshold);

// CSV header and row for per-frame reward logs.
std::string RewardCsvHeader();
std::string RewardCsvRow(int frame, const RewardBreakdown& r);

}  // namespace mimic

#endif  // MIMIC_REWARDS_H_
