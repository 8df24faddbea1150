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

#include <algorithm>
#include <cmath>

#include "mimic/errors.h"
#include "mimic/retarget.h"

namespace mimic {
namespace {

// Adam moment estimates for one block of parameters.
struct AdamMoments {
  Eigen::MatrixXd m;
  Eigen::MatrixXd v;

  explicit AdamMoments(Eigen::Index rows, Eigen::Index cols)
      : m(Eigen::MatrixXd::Zero(rows, cols)), v(Eigen::MatrixXd::Zero(rows, cols)) {}

  Eigen::MatrixXd Step(const Eigen::MatrixXd& grad, const RetargetConfig& c, int t) {
    m = c.beta1 * m + (1.0 - c.beta1) * grad;
    v = c.beta2 * v + (1.0 - c.beta2) * grad.cwiseProduct(grad);
    const double bc1 = 1.0 - std::pow(c.beta1, t);
    const double bc2 = 1.0 - std::pow(c.beta2, t);
    return -c.learning_rate * (m / bc1).cwiseQuotient(((v / bc2).cwiseSqrt().array() + c.epsilon).matrix());
  }
};

void ClampToLimits(const Skeleton& humanoid, Eigen::MatrixXd& angles) {
  std::vector<int> revolute = RevoluteJointIndices(humanoid);
  for (size_t k = 0; k < revolute.size(); ++k) {
    const auto& limits = humanoid.joint(revolute[k]).limits;
    if (!limits) continue;
    angles.col(k) = angles.col(k).cwiseMax(limits->lower).cwiseMin(limits->upper);
  }
}

}  // namespace

RetargetResult RetargetOptimize(const MotionSequence& human_motion, const Skeleton& human,
                                const Skeleton& humanoid, const JointMapping& mapping,
                                const RetargetConfig& config, const MotionSequence* initial) {
  config.Validate();
  ValidateMapping(mapping, human, humanoid);
  RetargetObjective objective(humanoid, mapping, MakeReferenceTargets(human_motion, human, mapping),
                              config);

  MotionSequence init =
      initial ? *initial : CopyRotation(human_motion, human, humanoid, mapping);
  if (init.num_frames() != human_motion.num_frames()) {
    throw DimensionError("initial motion frame count differs from the human motion");
  }
  RetargetState state = RetargetState::FromMotion(init, humanoid);

  RetargetGradient grad;
  LossBreakdown current = objective.EvaluateWithGradient(state, &grad);
  if (!std::isfinite(current.total)) {
    throw Error("retargeting loss is not finite at initialization");
  }

  RetargetState best = state;
  LossBreakdown best_loss = current;
  int best_epoch = 0;
  std::vector<Checkpoint> checkpoints = {{0, best_loss.total}};

  const int frames = state.num_frames();
  AdamMoments root_pos(frames, 3), root_rot(frames, 3), angles(frames, state.angles.cols());

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    state.root_position += root_pos.Step(grad.root_position, config, epoch);
    Eigen::MatrixXd dphi = root_rot.Step(grad.root_orientation, config, epoch);
    for (int f = 0; f < frames; ++f) {
      state.root_orientation[f] =
          Rotation::FromRotationVector(dphi.row(f).transpose()) * state.root_orientation[f];
    }
    state.angles += angles.Step(grad.angles, config, epoch);
    ClampToLimits(humanoid, state.angles);

    current = objective.EvaluateWithGradient(state, &grad);
    if (std::isfinite(current.total) && current.total < best_loss.total) {
      best = state;
      best_loss = current;
      best_epoch = epoch;
    }
    if (epoch % config.checkpoint_every == 0 || epoch == config.epochs) {
      checkpoints.push_back({epoch, best_loss.total});
    }
  }

  RetargetResult result;
  result.motion = best.ToMotion(humanoid, human_motion.fps);
  result.loss = best_loss;
  result.mean_position_error = objective.MeanJointPositionError(best);
  result.best_epoch = best_epoch;
  result.checkpoints = std::move(checkpoints);
  return result;
}

RetargetResult RetargetAlignOptimize(const MotionSequence& human_motion, const Skeleton& human,
                                     const Skeleton& humanoid, const JointMapping& mapping,
                                     const RetargetConfig& config) {
  Skeleton aligned = AlignSkeletonShape(human, humanoid, mapping);
  MotionSequence rescaled = human_motion;
  rescaled.skeleton_id = aligned.name();
  return RetargetOptimize(rescaled, aligned, humanoid, mapping, config);
}

}  // namespace mimic
