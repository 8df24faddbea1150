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

#ifndef MIMIC_OBSERVATION_H_
#define MIMIC_OBSERVATION_H_

#include <string>
#include <vector>

#include <Eigen/Core>

#include "mimic/rewards.h"
#include "mimic/task.h"
#include "mimic/track_state.h"

namespace mimic {

// One named run of slots in an observation vector.
struct ObservationSlot {
  std::string name;
  int offset = 0;
  int size = 0;
};

// Slot layout for a variant, task and state size. Order: J, J_dot, t, R, v,
// w, then the same six for the target, then the last action and gravity. The
// PHC variant appends t - t_target and R - R_target. Task T appends the two
// wrist targets; task L appends the object state and its target (position,
// rotation vector, linear and angular velocity each).
std::vector<ObservationSlot> ObservationLayout(TrackerVariant variant, TaskId task, int num_joints,
                                               int num_bodies);
int ObservationSize(TrackerVariant variant, TaskId task, int num_joints, int num_bodies);

// Flattens `state` following ObservationLayout. Rotations become rotation
// vectors. Throws SchemaError when the task's extras are missing.
Eigen::VectorXd BuildObservation(TrackerVariant variant, TaskId task, const TrackState& state);

}  // namespace mimic

#endif  // MIMIC_OBSERVATION_H_
