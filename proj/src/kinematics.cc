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

#include "mimic/kinematics.h"

#include <cmath>
#include <string>

#include "mimic/errors.h"

namespace mimic {

Pose Pose::Zero(const Skeleton& skeleton) {
  Pose pose;
  pose.joints.reserve(skeleton.num_joints() - 1);
  for (int i = 1; i < skeleton.num_joints(); ++i) {
    if (skeleton.joint(i).kind == JointKind::kSpherical) {
      pose.joints.emplace_back(Rotation::Identity());
    } else {
      pose.joints.emplace_back(0.0);
    }
  }
  return pose;
}

void CheckPose(const Skeleton& skeleton, const Pose& pose) {
  if (static_cast<int>(pose.joints.size()) != skeleton.num_joints() - 1) {
    throw DimensionError("pose has " + std::to_string(pose.joints.size()) +
                         " joint values, skeleton '" + skeleton.name() + "' needs " +
                         std::to_string(skeleton.num_joints() - 1));
  }
  if (!pose.root_position.allFinite()) throw SchemaError("root position is not finite");
  for (int i = 1; i < skeleton.num_joints(); ++i) {
    const JointValue& v = pose.joints[i - 1];
    bool spherical = skeleton.joint(i).kind == JointKind::kSpherical;
    if (spherical != std::holds_alternative<Rotation>(v)) {
      throw SchemaError("joint " + std::to_string(i) + " ('" + skeleton.joint(i).name +
                        "') expects a " + (spherical ? "rotation" : "scalar angle"));
    }
    if (!spherical && !std::isfinite(std::get<double>(v))) {
      throw SchemaError("joint " + std::to_string(i) + " angle is not finite");
    }
  }
}

std::vector<int> RevoluteJointIndices(const Skeleton& skeleton) {
  std::vector<int> out;
  for (int i = 1; i < skeleton.num_joints(); ++i) {
    if (skeleton.joint(i).kind == JointKind::kRevolute) out.push_back(i);
  }
  return out;
}

Eigen::VectorXd RevoluteAngles(const Skeleton& skeleton, const Pose& pose) {
  Eigen::VectorXd out(skeleton.num_revolute());
  int k = 0;
  for (int i = 1; i < skeleton.num_joints(); ++i) {
    if (skeleton.joint(i).kind == JointKind::kRevolute) out[k++] = std::get<double>(pose.joints[i - 1]);
  }
  return out;
}

void SetRevoluteAngles(const Skeleton& skeleton, const Eigen::VectorXd& angles, Pose& pose) {
  if (angles.size() != skeleton.num_revolute()) throw DimensionError("revolute angle count mismatch");
  int k = 0;
  for (int i = 1; i < skeleton.num_joints(); ++i) {
    if (skeleton.joint(i).kind == JointKind::kRevolute) pose.joints[i - 1] = angles[k++];
  }
}

Rotation JointRotation(const Skeleton& skeleton, const Pose& pose, int i) {
  const Joint& joint = skeleton.joint(i);
  const JointValue& v = pose.joints[i - 1];
  if (const Rotation* r = std::get_if<Rotation>(&v)) return *r;
  return Rotation::FromAxisAngle(joint.axis, std::get<double>(v));
}

std::vector<RigidTransform> ForwardKinematics(const Skeleton& skeleton, const Pose& pose) {
  CheckPose(skeleton, pose);
  std::vector<RigidTransform> frames(skeleton.num_joints());
  frames[0].position = pose.root_position;
  frames[0].orientation = pose.root_orientation;
  for (int i = 1; i < skeleton.num_joints(); ++i) {
    const Joint& joint = skeleton.joint(i);
    const RigidTransform& parent = frames[joint.parent];
    frames[i].position = parent.position + parent.orientation * joint.offset;
    frames[i].orientation = parent.orientation * JointRotation(skeleton, pose, i);
  }
  return frames;
}

Vec3 LandmarkPosition(std::span<const RigidTransform> frames, const Landmark& landmark) {
  return frames[landmark.joint].TransformPoint(landmark.offset);
}

std::vector<RigidTransform> ToRootFrame(std::span<const RigidTransform> global,
                                        const RigidTransform& root) {
  RigidTransform inv = root.inverse();
  std::vector<RigidTransform> out;
  out.reserve(global.size());
  for (const RigidTransform& t : global) out.push_back(inv * t);
  return out;
}

Vec3 ToRootFrameDirection(const Vec3& world_direction, const RigidTransform& root) {
  return root.orientation.inverse() * world_direction;
}

}  // namespace mimic
