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

#include <cmath>
#include <string>

#include "mimic/errors.h"
#include "mimic/retarget.h"

namespace mimic {
namespace {

struct FrameKinematics {
  std::vector<Vec3> position;
  std::vector<Rotation> orientation;
};

FrameKinematics ComputeFrame(const Skeleton& skeleton, const Vec3& root_position,
                             const Rotation& root_orientation, const Eigen::Ref<const Eigen::RowVectorXd>& angles,
                             const std::vector<int>& slot_of_joint) {
  const int n = skeleton.num_joints();
  FrameKinematics fk;
  fk.position.resize(n);
  fk.orientation.resize(n);
  fk.position[0] = root_position;
  fk.orientation[0] = root_orientation;
  for (int i = 1; i < n; ++i) {
    const Joint& joint = skeleton.joint(i);
    fk.position[i] = fk.position[joint.parent] + fk.orientation[joint.parent] * joint.offset;
    fk.orientation[i] =
        fk.orientation[joint.parent] * Rotation::FromAxisAngle(joint.axis, angles[slot_of_joint[i]]);
  }
  return fk;
}

}  // namespace

void RetargetConfig::Validate() const {
  auto non_negative = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string(name) + " must be a finite non-negative number");
    }
  };
  non_negative(lambda_pos, "lambda_pos");
  non_negative(lambda_ori, "lambda_ori");
  non_negative(lambda_acc, "lambda_acc");
  if (lambda_hand) {
    non_negative(*lambda_hand, "lambda_hand");
    if (*lambda_hand > 0.0 && !(task && IsHandTask(*task))) {
      throw ConfigError("lambda_hand applies only to tasks T and L" +
                        (task ? std::string(", not ") + std::string(TaskCode(*task)) : std::string()));
    }
  }
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning_rate must be positive");
  }
  if (epochs < 0) throw ConfigError("epochs must be non-negative");
  if (checkpoint_every <= 0) throw ConfigError("checkpoint_every must be positive");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0) || !(epsilon > 0.0)) {
    throw ConfigError("Adam parameters out of range");
  }
}

double RetargetConfig::EffectiveHandWeight() const {
  if (!task || !IsHandTask(*task)) return 0.0;
  return lambda_hand.value_or(1.0);
}

ReferenceTargets MakeReferenceTargets(const MotionSequence& human_motion, const Skeleton& human,
                                      const JointMapping& mapping) {
  ValidateMotion(human_motion, human);
  std::vector<Landmark> hands;
  for (const auto& [a, b] : mapping.hand_pairs) hands.push_back(human.ResolveLandmark(a));
  ReferenceTargets targets;
  targets.fps = human_motion.fps;
  for (const Pose& pose : human_motion.frames) {
    std::vector<RigidTransform> frames = ForwardKinematics(human, pose);
    std::vector<Vec3> hand_positions;
    for (const Landmark& l : hands) hand_positions.push_back(LandmarkPosition(frames, l));
    targets.joints.push_back(std::move(frames));
    targets.hands.push_back(std::move(hand_positions));
  }
  return targets;
}

RetargetState RetargetState::FromMotion(const MotionSequence& motion, const Skeleton& humanoid) {
  ValidateMotion(motion, humanoid);
  RetargetState s;
  const int n = motion.num_frames();
  s.root_position.resize(n, 3);
  s.root_orientation.resize(n);
  s.angles = JointAngleMatrix(motion, humanoid);
  for (int f = 0; f < n; ++f) {
    s.root_position.row(f) = motion.frames[f].root_position.transpose();
    s.root_orientation[f] = motion.frames[f].root_orientation;
  }
  return s;
}

MotionSequence RetargetState::ToMotion(const Skeleton& humanoid, double fps) const {
  MotionSequence m;
  m.fps = fps;
  m.skeleton_id = humanoid.name();
  for (int f = 0; f < num_frames(); ++f) {
    Pose pose = Pose::Zero(humanoid);
    pose.root_position = root_position.row(f).transpose();
    pose.root_orientation = root_orientation[f];
    SetRevoluteAngles(humanoid, angles.row(f).transpose(), pose);
    m.frames.push_back(std::move(pose));
  }
  return m;
}

RetargetObjective::RetargetObjective(const Skeleton& humanoid, const JointMapping& mapping,
                                     ReferenceTargets targets, const RetargetConfig& config)
    : humanoid_(humanoid), mapping_(mapping), targets_(std::move(targets)) {
  config.Validate();
  if (!humanoid_.is_all_revolute()) {
    throw SchemaError("optimization target '" + humanoid_.name() + "' must be all-revolute");
  }
  for (const JointPair& p : mapping_.pairs) {
    if (p.humanoid < 0 || p.humanoid >= humanoid_.num_joints()) {
      throw SchemaError("mapping humanoid index " + std::to_string(p.humanoid) + " out of range");
    }
  }
  for (const auto& frame : targets_.joints) {
    for (const JointPair& p : mapping_.pairs) {
      if (p.human < 0 || p.human >= static_cast<int>(frame.size())) {
        throw SchemaError("mapping human index " + std::to_string(p.human) + " out of range");
      }
    }
  }
  for (const auto& [a, b] : mapping_.hand_pairs) humanoid_hands_.push_back(humanoid_.ResolveLandmark(b));
  revolute_ = RevoluteJointIndices(humanoid_);
  slot_of_joint_.assign(humanoid_.num_joints(), -1);
  for (size_t k = 0; k < revolute_.size(); ++k) slot_of_joint_[revolute_[k]] = static_cast<int>(k);
  w_pos_ = config.lambda_pos;
  w_hand_ = config.EffectiveHandWeight();
  w_ori_ = config.lambda_ori;
  w_acc_ = config.lambda_acc;
}

LossBreakdown RetargetObjective::Evaluate(const RetargetState& state) const {
  return EvaluateWithGradient(state, nullptr);
}

LossBreakdown RetargetObjective::EvaluateWithGradient(const RetargetState& state,
                                                      RetargetGradient* gradient) const {
  const int frames = state.num_frames();
  if (frames != targets_.num_frames()) {
    throw DimensionError("candidate has " + std::to_string(frames) + " frames, reference has " +
                         std::to_string(targets_.num_frames()));
  }
  if (state.angles.cols() != static_cast<Eigen::Index>(revolute_.size())) {
    throw DimensionError("candidate joint count does not match the humanoid");
  }
  const int bodies = humanoid_.num_joints();
  const int num_pairs = static_cast<int>(mapping_.pairs.size());
  const int num_hands = static_cast<int>(humanoid_hands_.size());
  const int num_dof = static_cast<int>(revolute_.size());

  // Per-term normalizers; empty sets contribute zero.
  const double pos_scale = num_pairs > 0 ? 1.0 / (frames * num_pairs) : 0.0;
  const double hand_scale = num_hands > 0 ? 1.0 / (frames * num_hands) : 0.0;
  const double acc_scale = num_dof > 0 ? 1.0 / (frames * num_dof) : 0.0;

  LossBreakdown loss;
  if (gradient) {
    gradient->root_position = Eigen::MatrixXd::Zero(frames, 3);
    gradient->root_orientation = Eigen::MatrixXd::Zero(frames, 3);
    gradient->angles = Eigen::MatrixXd::Zero(frames, num_dof);
  }

  std::vector<Vec3> force(bodies), moment(bodies), torque(bodies);
  for (int f = 0; f < frames; ++f) {
    FrameKinematics fk = ComputeFrame(humanoid_, state.root_position.row(f).transpose(),
                                      state.root_orientation[f], state.angles.row(f), slot_of_joint_);
    const std::vector<RigidTransform>& ref = targets_.joints[f];
    std::fill(force.begin(), force.end(), Vec3::Zero());
    std::fill(moment.begin(), moment.end(), Vec3::Zero());
    std::fill(torque.begin(), torque.end(), Vec3::Zero());

    auto add_point_gradient = [&](int body, const Vec3& point, const Vec3& g) {
      force[body] += g;
      moment[body] += point.cross(g);
    };

    for (const JointPair& p : mapping_.pairs) {
      Vec3 diff = fk.position[p.humanoid] - ref[p.human].position;
      loss.pos += diff.squaredNorm() * pos_scale;
      if (gradient && w_pos_ != 0.0) {
        add_point_gradient(p.humanoid, fk.position[p.humanoid], 2.0 * w_pos_ * pos_scale * diff);
      }
      Rotation err = fk.orientation[p.humanoid] * ref[p.human].orientation.inverse();
      Vec3 log = err.rotation_vector();
      double theta = log.norm();
      loss.ori += theta * pos_scale;
      if (gradient && w_ori_ != 0.0 && theta > 1e-12) {
        torque[p.humanoid] += (w_ori_ * pos_scale / theta) * log;
      }
    }
    for (int h = 0; h < num_hands; ++h) {
      const Landmark& l = humanoid_hands_[h];
      Vec3 point = fk.position[l.joint] + fk.orientation[l.joint] * l.offset;
      Vec3 diff = point - targets_.hands[f][h];
      loss.hand += diff.squaredNorm() * hand_scale;
      if (gradient && w_hand_ != 0.0) {
        add_point_gradient(l.joint, point, 2.0 * w_hand_ * hand_scale * diff);
      }
    }

    if (!gradient) continue;
    // Accumulate subtree sums from the leaves up; parents precede children.
    for (int i = bodies - 1; i > 0; --i) {
      const int parent = humanoid_.joint(i).parent;
      const int slot = slot_of_joint_[i];
      Vec3 axis = fk.orientation[i] * humanoid_.joint(i).axis;
      Vec3 lever = moment[i] - fk.position[i].cross(force[i]) + torque[i];
      gradient->angles(f, slot) += axis.dot(lever);
      force[parent] += force[i];
      moment[parent] += moment[i];
      torque[parent] += torque[i];
    }
    gradient->root_position.row(f) = force[0].transpose();
    gradient->root_orientation.row(f) =
        (moment[0] - fk.position[0].cross(force[0]) + torque[0]).transpose();
  }

  if (frames >= 2 && num_dof > 0) {
    Eigen::MatrixXd acc =
        TimeDerivative(TimeDerivative(state.angles, targets_.fps), targets_.fps);
    loss.acc = acc.cwiseAbs().sum() * acc_scale;
    if (gradient && w_acc_ != 0.0) {
      Eigen::MatrixXd sign = acc.unaryExpr([](double v) { return double((v > 0) - (v < 0)); });
      gradient->angles += w_acc_ * acc_scale *
                          TimeDerivativeTranspose(TimeDerivativeTranspose(sign, targets_.fps), targets_.fps);
    }
  }

  loss.total = w_pos_ * loss.pos + w_hand_ * loss.hand + w_ori_ * loss.ori + w_acc_ * loss.acc;
  return loss;
}

double RetargetObjective::MeanJointPositionError(const RetargetState& state) const {
  const int frames = state.num_frames();
  if (frames != targets_.num_frames()) throw DimensionError("frame count mismatch");
  if (mapping_.pairs.empty()) return 0.0;
  double sum = 0.0;
  for (int f = 0; f < frames; ++f) {
    FrameKinematics fk = ComputeFrame(humanoid_, state.root_position.row(f).transpose(),
                                      state.root_orientation[f], state.angles.row(f), slot_of_joint_);
    for (const JointPair& p : mapping_.pairs) {
      sum += (fk.position[p.humanoid] - targets_.joints[f][p.human].position).norm();
    }
  }
  return sum / (frames * static_cast<double>(mapping_.pairs.size()));
}

LossBreakdown RetargetLoss(const MotionSequence& candidate, const Skeleton& humanoid,
                           const ReferenceTargets& targets, const JointMapping& mapping,
                           const RetargetConfig& config) {
  RetargetObjective objective(humanoid, mapping, targets, config);
  return objective.Evaluate(RetargetState::FromMotion(candidate, humanoid));
}

}  // namespace mimic
