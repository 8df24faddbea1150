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

#include "mimic/track_state.h"

#include <algorithm>
#include <cmath>

#include "mimic/errors.h"

namespace mimic {

void TrackState::Validate() const {
  const Eigen::Index n = current.joint_angles.size();
  const size_t b = current.positions.size();
  auto check_bundle = [&](const BodyState& s, const char* name) {
    if (s.joint_angles.size() != n || s.joint_velocities.size() != n) {
      throw DimensionError(std::string(name) + ": joint arrays disagree in width");
    }
    if (s.positions.size() != b || s.orientations.size() != b || s.linear_velocities.size() != b ||
        s.angular_velocities.size() != b) {
      throw DimensionError(std::string(name) + ": body arrays disagree in length");
    }
  };
  check_bundle(current, "current state");
  check_bundle(target, "target state");
  if (joint_accelerations.size() != n || target_joint_accelerations.size() != n || last_action.size() != n) {
    throw DimensionError("track state: acceleration or action width differs from joint count");
  }
  if (!gravity.allFinite() || std::abs(gravity.norm() - 1.0) > 1e-9) {
    throw SchemaError("track state: gravity must be a unit vector");
  }
}

void TrackState::RequireTask(TaskId task) const {
  if (task == TaskId::kTouchPoints && !(wrists && wrist_targets)) {
    throw SchemaError("task T needs wrist positions and wrist targets");
  }
  if (task == TaskId::kLiftBox && !(wrists && wrist_targets)) {
    throw SchemaError("task L needs wrist positions and wrist targets");
  }
  if (task == TaskId::kLiftBox && !(object && object_target)) {
    throw SchemaError("task L needs the object state and its target");
  }
}

TrackState TrackState::Zero(int num_joints, int num_bodies) {
  BodyState s;
  s.joint_angles = Eigen::VectorXd::Zero(num_joints);
  s.joint_velocities = Eigen::VectorXd::Zero(num_joints);
  s.positions.assign(num_bodies, Vec3::Zero());
  s.orientations.assign(num_bodies, Rotation());
  s.linear_velocities.assign(num_bodies, Vec3::Zero());
  s.angular_velocities.assign(num_bodies, Vec3::Zero());
  TrackState state;
  state.current = s;
  state.target = s;
  state.joint_accelerations = Eigen::VectorXd::Zero(num_joints);
  state.target_joint_accelerations = Eigen::VectorXd::Zero(num_joints);
  state.last_action = Eigen::VectorXd::Zero(num_joints);
  return state;
}

TrackStateBuilder::TrackStateBuilder(const Skeleton& skeleton, const MotionSequence& motion,
                                     const MotionSequence& reference, TaskId task)
    : skeleton_(skeleton), motion_(motion), reference_(reference), task_(task) {
  if (IsHandTask(task)) {
    for (const char* name : {"left_wrist", "right_wrist"}) {
      try {
        wrist_landmarks_.push_back(skeleton.ResolveLandmark(name));
      } catch (const LookupError& e) {
        throw SchemaError(std::string("hand task: ") + e.what());
      }
    }
  }
  if (task == TaskId::kLiftBox && (!motion.object || !reference.object)) {
    throw SchemaError("task L needs the object channel on both the motion and the reference");
  }
  motion_cache_ = Precompute(motion);
  reference_cache_ = Precompute(reference);
}

TrackStateBuilder::Cache TrackStateBuilder::Precompute(const MotionSequence& motion) const {
  Cache cache;
  cache.derivatives = DeriveKinematics(motion, skeleton_);
  cache.angles = JointAngleMatrix(motion, skeleton_);
  const int n = motion.num_frames();
  cache.fk.resize(n);
  for (int f = 0; f < n; ++f) cache.fk[f] = ForwardKinematics(skeleton_, motion.frames[f]);
  if (!wrist_landmarks_.empty()) {
    for (int f = 0; f < n; ++f) {
      cache.wrists.push_back({LandmarkPosition(cache.fk[f], wrist_landmarks_[0]),
                              LandmarkPosition(cache.fk[f], wrist_landmarks_[1])});
    }
  }
  if (task_ == TaskId::kLiftBox) {
    const auto& obj = *motion.object;
    for (int f = 0; f < n; ++f) {
      ObjectState s;
      s.position = obj[f].position;
      s.orientation = obj[f].orientation;
      if (n >= 2) {
        int a = std::max(f - 1, 0);
        int b = std::min(f + 1, n - 1);
        double dt = (b - a) / motion.fps;
        s.linear_velocity = (obj[b].position - obj[a].position) / dt;
        s.angular_velocity =
            obj[a].orientation * (obj[a].orientation.inverse() * obj[b].orientation).rotation_vector() / dt;
      }
      cache.object.push_back(s);
    }
  }
  return cache;
}

BodyState TrackStateBuilder::Express(const Cache& cache, int frame, const RigidTransform& root) const {
  const Rotation to_root = root.orientation.inverse();
  const Rotation own_root = cache.fk[frame][0].orientation;
  BodyState s;
  s.joint_angles = cache.angles.row(frame).transpose();
  s.joint_velocities = cache.derivatives.joint_velocities.row(frame).transpose();
  for (size_t b = 0; b < cache.fk[frame].size(); ++b) {
    const RigidTransform& g = cache.fk[frame][b];
    s.positions.push_back(to_root * (g.position - root.position));
    s.orientations.push_back(to_root * g.orientation);
    // Derivatives are stored in the motion's own root frame at that frame.
    s.linear_velocities.push_back(to_root * (own_root * cache.derivatives.linear_velocities[frame][b]));
    s.angular_velocities.push_back(to_root * (own_root * cache.derivatives.angular_velocities[frame][b]));
  }
  return s;
}

TrackState TrackStateBuilder::State(int frame, int target_frame) const {
  if (frame < 0 || frame >= motion_.num_frames()) throw DimensionError("track state: frame out of range");
  if (target_frame < 0 || target_frame >= reference_.num_frames()) {
    throw DimensionError("track state: target frame out of range");
  }
  const RigidTransform root = motion_cache_.fk[frame][0];
  const Rotation to_root = root.orientation.inverse();

  TrackState state;
  state.current = Express(motion_cache_, frame, root);
  state.target = Express(reference_cache_, target_frame, root);
  state.joint_accelerations = motion_cache_.derivatives.joint_accelerations.row(frame).transpose();
  state.target_joint_accelerations = reference_cache_.derivatives.joint_accelerations.row(target_frame).transpose();
  const Eigen::Index dof = state.current.joint_angles.size();
  if (motion_.actions && frame > 0) {
    state.last_action = (*motion_.actions)[frame - 1];
  } else {
    state.last_action = Eigen::VectorXd::Zero(dof);
  }
  state.gravity = to_root * Vec3(-Vec3::UnitZ());
  state.root_height = root.position.z();
  state.target_root_height = reference_cache_.fk[target_frame][0].position.z();

  auto local_point = [&](const Vec3& world) { return Vec3(to_root * (world - root.position)); };
  if (!wrist_landmarks_.empty()) {
    const auto& w = motion_cache_.wrists[frame];
    const auto& wt = reference_cache_.wrists[target_frame];
    state.wrists = std::array<Vec3, 2>{local_point(w[0]), local_point(w[1])};
    state.wrist_targets = std::array<Vec3, 2>{local_point(wt[0]), local_point(wt[1])};
  }
  if (task_ == TaskId::kLiftBox) {
    auto local_object = [&](const ObjectState& o) {
      ObjectState s;
      s.position = local_point(o.position);
      s.orientation = to_root * o.orientation;
      s.linear_velocity = to_root * o.linear_velocity;
      s.angular_velocity = to_root * o.angular_velocity;
      return s;
    };
    state.object = local_object(motion_cache_.object[frame]);
    state.object_target = local_object(reference_cache_.object[target_frame]);
  }
  return state;
}

}  // namespace mimic
