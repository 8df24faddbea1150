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

#ifndef MIMIC_RETARGET_H_
#define MIMIC_RETARGET_H_

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "mimic/mapping.h"
#include "mimic/motion.h"
#include "mimic/skeleton.h"
#include "mimic/task.h"

namespace mimic {

// ---------------------------------------------------------------------------
// Copy-rotation

// Transplants joint rotations from a human motion onto a humanoid.
//
// The humanoid root takes the human root position and orientation. For each
// mapping group the human joint's local rotation is decomposed onto the
// group's revolute axes in tree order and the residual is discarded. Groups
// containing the humanoid root are fully absorbed by the root; their other
// joints stay at zero. Unmapped humanoid joints stay at zero. Each angle is
// taken modulo 2*pi inside the joint limits when possible, and otherwise
// nearest the previous frame's angle.
//
// Throws DegeneracyError when a group has parallel axes.
MotionSequence CopyRotation(const MotionSequence& human_motion, const Skeleton& human,
                            const Skeleton& humanoid, const JointMapping& mapping);

// Angles (theta_1..theta_k) such that R(axis_1, theta_1) * ... * R(axis_k,
// theta_k) best matches `rotation`, for k in 1..3. Orthogonal axis sets use
// an Euler decomposition that drops the residual about the missing axis;
// other non-parallel sets fall back to a Gauss-Newton fit.
std::vector<double> DecomposeOntoAxes(const Rotation& rotation, std::span<const Vec3> axes);

// ---------------------------------------------------------------------------
// Skeleton shape alignment

// Rescales mapped human bones to the lengths of the corresponding humanoid
// segments measured in the humanoid's zero pose. A human bone (joint a and its
// parent p) is mapped when both a and p are mapped; its target is the rest
// distance from the last humanoid joint of p's group to the first humanoid
// joint of a's group. Hand pairs extend this to the wrist bones. Bone
// directions, unmapped bones and joint kinds are untouched.
//
// Throws DegeneracyError for a zero-length source bone with a nonzero target.
Skeleton AlignSkeletonShape(const Skeleton& human, const Skeleton& humanoid,
                            const JointMapping& mapping);

// ---------------------------------------------------------------------------
// Optimization

struct RetargetConfig {
  double lambda_pos = 1.0;
  // Unset means 1.0 for the hand tasks and 0 otherwise. Setting a positive
  // value for any other task is a configuration error.
  std::optional<double> lambda_hand;
  double lambda_ori = 0.1;
  double lambda_acc = 0.05;
  double learning_rate = 0.02;
  int epochs = 3000;
  std::optional<TaskId> task;
  // Best-so-far loss is recorded every this many epochs.
  int checkpoint_every = 100;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  // Throws ConfigError on invalid values.
  void Validate() const;
  double EffectiveHandWeight() const;
};

// World-frame targets taken from the human motion, per frame.
struct ReferenceTargets {
  double fps = kControlFps;
  // [frame][human joint]
  std::vector<std::vector<RigidTransform>> joints;
  // [frame][hand pair]
  std::vector<std::vector<Vec3>> hands;

  int num_frames() const { return static_cast<int>(joints.size()); }
};

ReferenceTargets MakeReferenceTargets(const MotionSequence& human_motion, const Skeleton& human,
                                      const JointMapping& mapping);

struct LossBreakdown {
  double total = 0.0;
  double pos = 0.0;
  double hand = 0.0;
  double ori = 0.0;
  double acc = 0.0;
};

// Optimization variables for an all-revolute humanoid.
struct RetargetState {
  Eigen::MatrixXd root_position;       // frames x 3
  std::vector<Rotation> root_orientation;
  Eigen::MatrixXd angles;              // frames x revolute joints

  static RetargetState FromMotion(const MotionSequence& motion, const Skeleton& humanoid);
  MotionSequence ToMotion(const Skeleton& humanoid, double fps) const;
  int num_frames() const { return static_cast<int>(root_position.rows()); }
};

// Gradient of the loss. The root orientation entry is the derivative with
// respect to a world-frame rotation vector phi applied as exp(phi) * R.
struct RetargetGradient {
  Eigen::MatrixXd root_position;
  Eigen::MatrixXd root_orientation;  // frames x 3
  Eigen::MatrixXd angles;
};

// The retargeting objective for fixed skeleton, mapping, targets and weights.
//
//   L = lambda_pos * L_pos + lambda_hand * L_hand + lambda_ori * L_ori + lambda_acc * L_acc
//
// L_pos: mean over frames and mapping pairs of squared position error.
// L_hand: the same over hand pairs.
// L_ori: mean over frames and pairs of the geodesic angle between global
//        orientations.
// L_acc: mean over frames and joints of |second time derivative of angles|.
class RetargetObjective {
 public:
  // Throws SchemaError / ConfigError on inconsistent inputs.
  RetargetObjective(const Skeleton& humanoid, const JointMapping& mapping, ReferenceTargets targets,
                    const RetargetConfig& config);

  LossBreakdown Evaluate(const RetargetState& state) const;
  LossBreakdown EvaluateWithGradient(const RetargetState& state, RetargetGradient* gradient) const;

  // Mean distance between mapped joint positions and their targets (meters).
  double MeanJointPositionError(const RetargetState& state) const;

  const Skeleton& humanoid() const { return humanoid_; }
  const ReferenceTargets& targets() const { return targets_; }

 private:
  Skeleton humanoid_;
  JointMapping mapping_;
  ReferenceTargets targets_;
  std::vector<Landmark> human_hands_;
  std::vector<Landmark> humanoid_hands_;
  std::vector<int> revolute_;      // joint index of each revolute slot
  std::vector<int> slot_of_joint_;  // inverse of revolute_, -1 for others
  double w_pos_, w_hand_, w_ori_, w_acc_;
};

// Convenience wrapper around RetargetObjective::Evaluate for a motion.
LossBreakdown RetargetLoss(const MotionSequence& candidate, const Skeleton& humanoid,
                           const ReferenceTargets& targets, const JointMapping& mapping,
                           const RetargetConfig& config);

struct Checkpoint {
  int epoch = 0;
  double best_loss = 0.0;
};

struct RetargetResult {
  MotionSequence motion;
  LossBreakdown loss;
  double mean_position_error = 0.0;
  int best_epoch = 0;
  // Best-so-far loss at regular epochs; non-increasing.
  std::vector<Checkpoint> checkpoints;
};

// Runs Adam over root positions, root orientations and joint angles of all
// frames jointly and returns the best iterate. Starts from `initial`, or from
// CopyRotation when none is given. Joint limits in the skeleton are enforced
// by clamping after every step.
//
// Throws ConfigError for invalid configs and Error when the initial loss is
// not finite.
RetargetResult RetargetOptimize(const MotionSequence& human_motion, const Skeleton& human,
                                const Skeleton& humanoid, const JointMapping& mapping,
                                const RetargetConfig& config,
                                const MotionSequence* initial = nullptr);

// Shape alignment followed by optimization against the rescaled human.
RetargetResult RetargetAlignOptimize(const MotionSequence& human_motion, const Skeleton& human,
                                     const Skeleton& humanoid, const JointMapping& mapping,
                                     const RetargetConfig& config);

}  // namespace mimic

#endif  // MIMIC_RETARGET_H_
