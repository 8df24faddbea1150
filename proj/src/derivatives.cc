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

#include <vector>

#include "mimic/errors.h"
#include "mimic/motion.h"

namespace mimic {

Eigen::MatrixXd TimeDerivative(const Eigen::MatrixXd& values, double fps) {
  const Eigen::Index n = values.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, values.cols());
  if (n < 2) return out;
  out.row(0) = (values.row(1) - values.row(0)) * fps;
  out.row(n - 1) = (values.row(n - 1) - values.row(n - 2)) * fps;
  for (Eigen::Index k = 1; k + 1 < n; ++k) {
    out.row(k) = (values.row(k + 1) - values.row(k - 1)) * (0.5 * fps);
  }
  return out;
}

Eigen::MatrixXd TimeDerivativeTranspose(const Eigen::MatrixXd& grad, double fps) {
  const Eigen::Index n = grad.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, grad.cols());
  if (n < 2) return out;
  out.row(1) += grad.row(0) * fps;
  out.row(0) -= grad.row(0) * fps;
  out.row(n - 1) += grad.row(n - 1) * fps;
  out.row(n - 2) -= grad.row(n - 1) * fps;
  for (Eigen::Index k = 1; k + 1 < n; ++k) {
    out.row(k + 1) += grad.row(k) * (0.5 * fps);
    out.row(k - 1) -= grad.row(k) * (0.5 * fps);
  }
  return out;
}

KinematicDerivatives DeriveKinematics(const MotionSequence& motion, const Skeleton& skeleton) {
  ValidateMotion(motion, skeleton);
  const int n = motion.num_frames();
  const int bodies = skeleton.num_joints();
  const double fps = motion.fps;

  KinematicDerivatives out;
  Eigen::MatrixXd angles = JointAngleMatrix(motion, skeleton);
  out.joint_velocities = TimeDerivative(angles, fps);
  out.joint_accelerations = TimeDerivative(out.joint_velocities, fps);

  std::vector<std::vector<RigidTransform>> frames(n);
  for (int f = 0; f < n; ++f) frames[f] = ForwardKinematics(skeleton, motion.frames[f]);

  out.linear_velocities.assign(n, std::vector<Vec3>(bodies, Vec3::Zero()));
  out.angular_velocities.assign(n, std::vector<Vec3>(bodies, Vec3::Zero()));
  if (n < 2) return out;

  // Body-frame angular velocity between consecutive frames.
  auto forward_omega = [&](int f, int b) {
    const Rotation& a = frames[f][b].orientation;
    const Rotation& c = frames[f + 1][b].orientation;
    return Vec3((a.inverse() * c).rotation_vector() * fps);
  };

  for (int f = 0; f < n; ++f) {
    const Rotation root_inv = frames[f][0].orientation.inverse();
    for (int b = 0; b < bodies; ++b) {
      Vec3 v;
      Vec3 w_body;
      if (f == 0) {
        v = (frames[1][b].position - frames[0][b].position) * fps;
        w_body = forward_omega(0, b);
      } else if (f == n - 1) {
        v = (frames[f][b].position - frames[f - 1][b].position) * fps;
        w_body = forward_omega(f - 1, b);
      } else {
        v = (frames[f + 1][b].position - frames[f - 1][b].position) * (0.5 * fps);
        w_body = 0.5 * (forward_omega(f - 1, b) + forward_omega(f, b));
      }
      out.linear_velocities[f][b] = root_inv * v;
      out.angular_velocities[f][b] = root_inv * (frames[f][b].orientation * w_body);
    }
  }
  return out;
}

}  // namespace mimic
