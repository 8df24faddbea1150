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

#ifndef MIMIC_MOTION_H_
#define MIMIC_MOTION_H_

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mimic/kinematics.h"
#include "mimic/rotation.h"
#include "mimic/skeleton.h"

namespace mimic {

// Nominal control rate of the humanoid.
inline constexpr double kControlFps = 50.0;

// A timed sequence of poses with optional per-frame channels.
struct MotionSequence {
  double fps = kControlFps;
  std::string skeleton_id;
  std::vector<Pose> frames;
  // Joint torques (N*m) and executed actions (rad), one vector per frame.
  std::optional<std::vector<Eigen::VectorXd>> torques;
  std::optional<std::vector<Eigen::VectorXd>> actions;
  // Pose of the manipulated object, one per frame.
  std::optional<std::vector<RigidTransform>> object;

  int num_frames() const { return static_cast<int>(frames.size()); }
  double duration() const { return frames.empty() ? 0.0 : (num_frames() - 1) / fps; }
};

// Structural checks independent of any skeleton: fps > 0, at least one frame,
// consistent joint counts and channel lengths. Throws SchemaError.
void ValidateMotion(const MotionSequence& motion);
// Also checks every frame against `skeleton` and the skeleton id.
void ValidateMotion(const MotionSequence& motion, const Skeleton& skeleton);

// Finite-difference derivatives of a motion.
struct KinematicDerivatives {
  // frames x revolute joints.
  Eigen::MatrixXd joint_velocities;
  Eigen::MatrixXd joint_accelerations;
  // [frame][body]: velocities of each joint frame expressed in that frame's
  // root coordinate system.
  std::vector<std::vector<Vec3>> linear_velocities;
  std::vector<std::vector<Vec3>> angular_velocities;
};

// Central differences at interior frames, one-sided first-order differences
// at the two boundary frames. Accelerations apply the same operator to the
// velocities, so they are exact for quadratics only two or more frames away
// from either end. A single-frame motion yields all-zero derivatives.
KinematicDerivatives DeriveKinematics(const MotionSequence& motion, const Skeleton& skeleton);

// The difference operator used above, applied to each column of `values`
// (rows are frames).
Eigen::MatrixXd TimeDerivative(const Eigen::MatrixXd& values, double fps);
// Adjoint of TimeDerivative, for back-propagating through it.
Eigen::MatrixXd TimeDerivativeTranspose(const Eigen::MatrixXd& grad, double fps);

// Frames x revolute joints matrix of joint angles.
Eigen::MatrixXd JointAngleMatrix(const MotionSequence& motion, const Skeleton& skeleton);

}  // namespace mimic

#endif  // MIMIC_MOTION_H_
