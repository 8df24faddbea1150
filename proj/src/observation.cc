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

#include "mimic/observation.h"

#include "mimic/errors.h"

namespace mimic {
namespace {

class Writer {
 public:
  explicit Writer(int size) : out_(Eigen::VectorXd::Zero(size)) {}

  void Put(const Eigen::VectorXd& v) {
    out_.segment(pos_, v.size()) = v;
    pos_ += static_cast<int>(v.size());
  }
  void Put(const Vec3& v) {
    out_.segment<3>(pos_) = v;
    pos_ += 3;
  }
  void Put(const std::vector<Vec3>& vs) {
    for (const Vec3& v : vs) Put(v);
  }
  void Put(const std::vector<Rotation>& rs) {
    for (const Rotation& r : rs) Put(r.rotation_vector());
  }
  void Put(const ObjectState& o) {
    Put(o.position);
    Put(o.orientation.rotation_vector());
    Put(o.linear_velocity);
    Put(o.angular_velocity);
  }

  int pos() const { return pos_; }
  Eigen::VectorXd Take() { return std::move(out_); }

 private:
  Eigen::VectorXd out_;
  int pos_ = 0;
};

}  // namespace

std::vector<ObservationSlot> ObservationLayout(TrackerVariant variant, TaskId task, int num_joints,
                                               int num_bodies) {
  std::vector<ObservationSlot> slots;
  int offset = 0;
  auto add = [&](std::string name, int size) {
    slots.push_back({std::move(name), offset, size});
    offset += size;
  };
  const int b3 = 3 * num_bodies;
  for (const char* prefix : {"", "target_"}) {
    const std::string p(prefix);
    add(p + "joint_angles", num_joints);
    add(p + "joint_velocities", num_joints);
    add(p + "positions", b3);
    add(p + "orientations", b3);
    add(p + "linear_velocities", b3);
    add(p + "angular_velocities", b3);
  }
  add("last_action", num_joints);
  add("gravity", 3);
  if (variant == TrackerVariant::kPhc) {
    add("position_error", b3);
    add("orientation_error", b3);
  }
  if (task == TaskId::kTouchPoints) add("wrist_targets", 6);
  if (task == TaskId::kLiftBox) {
    add("object", 12);
    add("object_target", 12);
  }
  return slots;
}

int ObservationSize(TrackerVariant variant, TaskId task, int num_joints, int num_bodies) {
  const auto slots = ObservationLayout(variant, task, num_joints, num_bodies);
  return slots.back().offset + slots.back().size;
}

Eigen::VectorXd BuildObservation(TrackerVariant variant, TaskId task, const TrackState& state) {
  state.Validate();
  if (task == TaskId::kTouchPoints && !state.wrist_targets) {
    throw SchemaError("task T observation needs the wrist targets");
  }
  if (task == TaskId::kLiftBox && !(state.object && state.object_target)) {
    throw SchemaError("task L observation needs the object state and its target");
  }
  const int size = ObservationSize(variant, task, state.num_joints(), state.num_bodies());
  Writer w(size);
  for (const BodyState* s : {&state.current, &state.target}) {
    w.Put(s->joint_angles);
    w.Put(s->joint_velocities);
    w.Put(s->positions);
    w.Put(s->orientations);
    w.Put(s->linear_velocities);
    w.Put(s->angular_velocities);
  }
  w.Put(state.last_action);
  w.Put(state.gravity);
  if (variant == TrackerVariant::kPhc) {
    for (int i = 0; i < state.num_bodies(); ++i) w.Put(Vec3(state.current.positions[i] - state.target.positions[i]));
    for (int i = 0; i < state.num_bodies(); ++i) {
      w.Put(Vec3(state.current.orientations[i].rotation_vector() - state.target.orientations[i].rotation_vector()));
    }
  }
  if (task == TaskId::kTouchPoints) {
    w.Put((*state.wrist_targets)[0]);
    w.Put((*state.wrist_targets)[1]);
  }
  if (task == TaskId::kLiftBox) {
    w.Put(*state.object);
    w.Put(*state.object_target);
  }
  if (w.pos() != size) throw DimensionError("observation writer filled the wrong number of slots");
  return w.Take();
}

}  // namespace mimic
