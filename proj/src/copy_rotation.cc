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
#include <numbers>
#include <optional>
#include <string>

#include "mimic/errors.h"
#include "mimic/retarget.h"

namespace mimic {
namespace {

constexpr double kParallelTolerance = 1e-9;
constexpr double kOrthogonalTolerance = 1e-9;

double WrapAngle(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return a;
}

// The 2*pi-equivalent of `a` to store for `joint`: inside the joint limits
// when one is, and otherwise closest to `previous` (the angle in the frame
// before, when there is one).
double ChooseBranch(double a, const Joint& joint, const std::optional<double>& previous) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double best = a;
  int best_rank = 3;
  double best_gap = 0.0;
  for (int k = -2; k <= 2; ++k) {
    const double c = a + k * kTwoPi;
    const bool inside = !joint.limits || (c >= joint.limits->lower && c <= joint.limits->upper);
    const int rank = inside ? 0 : 1;
    const double gap = previous ? std::abs(c - *previous) : std::abs(static_cast<double>(k));
    if (rank < best_rank || (rank == best_rank && gap < best_gap)) {
      best = c;
      best_rank = rank;
      best_gap = gap;
    }
  }
  return best;
}

Rotation Compose(std::span<const Vec3> axes, const std::vector<double>& angles) {
  Rotation r;
  for (size_t i = 0; i < axes.size(); ++i) r = r * Rotation::FromAxisAngle(axes[i], angles[i]);
  return r;
}

// Twist angle of `rotation` about `axis`.
double TwistAngle(const Rotation& rotation, const Vec3& axis) {
  const Quat& q = rotation.quaternion();
  return WrapAngle(2.0 * std::atan2(q.vec().dot(axis), q.w()));
}

// M = Rx(a) * Ry(b) * Rz(c) in a frame whose x, y, z are the decomposition axes.
Eigen::Vector3d EulerXyz(const Mat3& m) {
  double sb = std::clamp(m(0, 2), -1.0, 1.0);
  double b = std::asin(sb);
  double a, c;
  if (std::abs(sb) < 1.0 - 1e-12) {
    a = std::atan2(-m(1, 2), m(2, 2));
    c = std::atan2(-m(0, 1), m(0, 0));
  } else {
    a = std::atan2(m(2, 1), m(1, 1));
    c = 0.0;
  }
  return {a, b, c};
}

std::vector<double> GaussNewtonFit(const Rotation& target, std::span<const Vec3> axes,
                                   std::vector<double> theta) {
  const size_t k = axes.size();
  for (int iter = 0; iter < 100; ++iter) {
    Vec3 r = (Compose(axes, theta).inverse() * target).rotation_vector();
    if (r.norm() < 1e-14) break;
    Eigen::MatrixXd jac(3, k);
    const double h = 1e-7;
    for (size_t i = 0; i < k; ++i) {
      std::vector<double> tp = theta;
      tp[i] += h;
      Vec3 rp = (Compose(axes, tp).inverse() * target).rotation_vector();
      jac.col(i) = (rp - r) / h;
    }
    Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-r);
    double prev = r.norm();
    double scale = 1.0;
    std::vector<double> next = theta;
    for (int ls = 0; ls < 20; ++ls) {
      for (size_t i = 0; i < k; ++i) next[i] = theta[i] + scale * step[i];
      if ((Compose(axes, next).inverse() * target).rotation_vector().norm() < prev) break;
      scale *= 0.5;
    }
    theta = next;
    if (step.norm() * scale < 1e-15) break;
  }
  for (double& t : theta) t = WrapAngle(t);
  return theta;
}

}  // namespace

std::vector<double> DecomposeOntoAxes(const Rotation& rotation, std::span<const Vec3> axes_in) {
  if (axes_in.empty() || axes_in.size() > 3) {
    throw DegeneracyError("decomposition needs between one and three axes");
  }
  std::vector<Vec3> axes;
  for (const Vec3& a : axes_in) axes.push_back(a.normalized());
  for (size_t i = 0; i + 1 < axes.size(); ++i) {
    if (axes[i].cross(axes[i + 1]).norm() < kParallelTolerance) {
      throw DegeneracyError("consecutive decomposition axes are parallel");
    }
  }
  if (axes.size() == 1) return {TwistAngle(rotation, axes[0])};

  const Vec3& u1 = axes[0];
  const Vec3& u2 = axes[1];
  bool orthogonal = std::abs(u1.dot(u2)) < kOrthogonalTolerance;
  Vec3 w = u1.cross(u2);
  double third_sign = 1.0;
  if (axes.size() == 3) {
    double d = axes[2].dot(w);
    orthogonal = orthogonal && std::abs(std::abs(d) - 1.0) < kOrthogonalTolerance;
    third_sign = d < 0 ? -1.0 : 1.0;
  }
  if (orthogonal) {
    Mat3 basis;
    basis << u1, u2, w;
    Eigen::Vector3d e = EulerXyz(basis.transpose() * rotation.matrix() * basis);
    if (axes.size() == 2) return {e[0], e[1]};
    return {e[0], e[1], third_sign * e[2]};
  }
  std::vector<double> seed(axes.size(), 0.0);
  seed[0] = TwistAngle(rotation, u1);
  return GaussNewtonFit(rotation, axes, seed);
}

MotionSequence CopyRotation(const MotionSequence& human_motion, const Skeleton& human,
                            const Skeleton& humanoid, const JointMapping& mapping) {
  ValidateMotion(human_motion, human);
  ValidateMapping(mapping, human, humanoid);
  if (!humanoid.is_all_revolute()) {
    throw SchemaError("copy-rotation target '" + humanoid.name() + "' must be all-revolute");
  }

  struct Plan {
    int human;
    std::vector<int> joints;
    std::vector<Vec3> axes;
  };
  std::vector<Plan> plans;
  for (const MappingGroup& g : mapping.Groups()) {
    if (g.humanoid.front() == 0) continue;  // root absorbs the whole rotation
    for (size_t i = 1; i < g.humanoid.size(); ++i) {
      if (humanoid.joint(g.humanoid[i]).parent != g.humanoid[i - 1]) {
        throw SchemaError("mapping group for human joint " + std::to_string(g.human) +
                          " is not a parent-child chain on the humanoid");
      }
    }
    Plan plan{g.human, g.humanoid, {}};
    for (int j : g.humanoid) plan.axes.push_back(humanoid.joint(j).axis);
    // Validate axes once up front so a degenerate group fails before any work.
    DecomposeOntoAxes(Rotation::Identity(), plan.axes);
    plans.push_back(std::move(plan));
  }

  MotionSequence out;
  out.fps = human_motion.fps;
  out.skeleton_id = humanoid.name();
  out.frames.reserve(human_motion.frames.size());
  for (const Pose& hp : human_motion.frames) {
    const Pose* prev = out.frames.empty() ? nullptr : &out.frames.back();
    Pose pose = Pose::Zero(humanoid);
    pose.root_position = hp.root_position;
    pose.root_orientation = hp.root_orientation;
    for (const Plan& plan : plans) {
      Rotation local = plan.human == 0 ? hp.root_orientation : JointRotation(human, hp, plan.human);
      std::vector<double> angles = DecomposeOntoAxes(local, plan.axes);
      for (size_t i = 0; i < plan.joints.size(); ++i) {
        const int j = plan.joints[i];
        std::optional<double> before;
        if (prev) before = std::get<double>(prev->joints[j - 1]);
        pose.joints[j - 1] = ChooseBranch(angles[i], humanoid.joint(j), before);
      }
    }
    out.frames.push_back(std::move(pose));
  }
  return out;
}

}  // namespace mimic
