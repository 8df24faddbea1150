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

#ifndef MIMIC_TRACK_STATE_H_
#define MIMIC_TRACK_STATE_H_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mimic/motion.h"
#include "mimic/rotation.h"
#include "mimic/skeleton.h"
#include "mimic/task.h"

namespace mimic {

// Joint and body-frame quantities of one humanoid configuration. Body
// quantities are expressed in the current humanoid's root frame.
struct BodyState {
  Eigen::VectorXd joint_angles;
  Eigen::VectorXd joint_velocities;
  std::vector<Vec3> positions;
  std::vector<Rotation> orientations;
  std::vector<Vec3> linear_velocities;
  std::vector<Vec3> angular_velocities;
};

// Box state in the current root frame.
struct ObjectState {
  Vec3 position = Vec3::Zero();
  Rotation orientation;
  Vec3 linear_velocity = Vec3::Zero();
  Vec3 angular_velocity = Vec3::Zero();
};

// Everything the rewards and observations read at one control step.
struct TrackState {
  BodyState current;
  BodyState target;
  Eigen::VectorXd joint_accelerations;
  Eigen::VectorXd target_joint_accelerations;
  // Action emitted at the previous step.
  Eigen::VectorXd last_action;
  // Gravity direction in the current root frame.
  Vec3 gravity = -Vec3::UnitZ();
  // World-frame root heights.
  double root_height = 0.0;
  double target_root_height = 0.0;
  // Task T and L: wrist positions (left, right) in the current root frame.
  std::optional<std::array<Vec3, 2>> wrists;
  std::optional<std::array<Vec3, 2>> wrist_targets;
  // Task L.
  std::optional<ObjectState> object;
  std::optional<ObjectState> object_target;

  int num_joints() const { return static_cast<int>(current.joint_angles.size()); }
  int num_bodies() const { return static_cast<int>(current.positions.size()); }

  // Throws DimensionError on inconsistent array sizes and SchemaError when
  // gravity is not a unit vector.
  void Validate() const;
  // Throws SchemaError when a field the task needs is missing.
  void RequireTask(TaskId task) const;

  // A consistent all-zero state: identity orientations, gravity (0, 0, -1).
  static TrackState Zero(int num_joints, int num_bodies);
};

// Builds TrackStates from a humanoid motion and its reference, frame by frame.
// Derivatives and forward kinematics are computed once up front.
class TrackStateBuilder {
 public:
  // Both motions must fit `skeleton`. Wrist landmarks are looked up for the
  // hand tasks, and task L needs the object channel on both motions.
  TrackStateBuilder(const Skeleton& skeleton, const MotionSequence& motion,
                    const MotionSequence& reference, TaskId task);

  // State at `frame` of the motion tracking `target_frame` of the reference.
  // The previous action is the motion's action at frame - 1 (zeros when the
  // motion has no actions or frame is 0).
  TrackState State(int frame, int target_frame) const;

  int num_frames() const { return motion_.num_frames(); }
  int num_reference_frames() const { return reference_.num_frames(); }

 private:
  struct Cache {
    std::vector<std::vector<RigidTransform>> fk;
    KinematicDerivatives derivatives;
    Eigen::MatrixXd angles;
    std::vector<std::array<Vec3, 2>> wrists;  // world
    std::vector<ObjectState> object;          // world
  };
  Cache Precompute(const MotionSequence& motion) const;
  BodyState Express(const Cache& cache, int frame, const RigidTransform& root) const;

  const Skeleton& skeleton_;
  const MotionSequence& motion_;
  const MotionSequence& reference_;
  TaskId task_;
  std::vector<Landmark> wrist_landmarks_;
  Cache motion_cache_;
  Cache reference_cache_;
};

}  // namespace mimic

#endif  // MIMIC_TRACK_STATE_H_
