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

#ifndef MIMIC_KINEMATICS_H_
#define MIMIC_KINEMATICS_H_

#include <span>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "mimic/rotation.h"
#include "mimic/skeleton.h"

namespace mimic {

// Scalar angle for revolute joints, full rotation for spherical joints.
using JointValue = std::variant<double, Rotation>;

// One configuration of a skeleton. `joints[k]` holds the value of joint k+1;
// the root is described by root_position and root_orientation.
struct Pose {
  Vec3 root_position = Vec3::Zero();
  Rotation root_orientation;
  std::vector<JointValue> joints;

  // Zero angles and identity rotations, matching the joint kinds of `skeleton`.
  static Pose Zero(const Skeleton& skeleton);
};

// Throws DimensionError when the pose does not fit the skeleton, SchemaError
// when a value's kind does not match its joint, or when an angle is not finite.
void CheckPose(const Skeleton& skeleton, const Pose& pose);

// Revolute joint angles in joint order (one entry per revolute joint).
Eigen::VectorXd RevoluteAngles(const Skeleton& skeleton, const Pose& pose);
void SetRevoluteAngles(const Skeleton& skeleton, const Eigen::VectorXd& angles, Pose& pose);

// Indices of the revolute joints, in joint order.
std::vector<int> RevoluteJointIndices(const Skeleton& skeleton);

// Local rotation contributed by joint i (i >= 1).
Rotation JointRotation(const Skeleton& skeleton, const Pose& pose, int i);

// Global transform of every joint frame. Entry 0 is the root transform.
std::vector<RigidTransform> ForwardKinematics(const Skeleton& skeleton, const Pose& pose);

// World position of a landmark given the frames from ForwardKinematics.
Vec3 LandmarkPosition(std::span<const RigidTransform> frames, const Landmark& landmark);

// Re-expresses world transforms in the frame of `root`.
std::vector<RigidTransform> ToRootFrame(std::span<const RigidTransform> global,
                                        const RigidTransform& root);
Vec3 ToRootFrameDirection(const Vec3& world_direction, const RigidTransform& root);

}  // namespace mimic

#endif  // MIMIC_KINEMATICS_H_
