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

#include "mimic/rotation.h"

#include <algorithm>
#include <cmath>

namespace mimic {
namespace {

constexpr double kUnitTolerance = 1e-12;

Quat Normalized(const Quat& q) {
  double n2 = q.squaredNorm();
  if (std::abs(n2 - 1.0) <= kUnitTolerance) return q;
  return Quat(q.coeffs() / std::sqrt(n2));
}

}  // namespace

Rotation Rotation::FromQuaternion(const Quat& q) { return Rotation(Normalized(q)); }

Rotation Rotation::FromWxyz(double w, double x, double y, double z) {
  return FromQuaternion(Quat(w, x, y, z));
}

Rotation Rotation::FromMatrix(const Mat3& m) { return FromQuaternion(Quat(m)); }

Rotation Rotation::FromAxisAngle(const Vec3& axis, double angle) {
  Vec3 u = axis.normalized();
  double half = 0.5 * angle;
  double s = std::sin(half);
  return FromQuaternion(Quat(std::cos(half), s * u.x(), s * u.y(), s * u.z()));
}

Rotation Rotation::FromRotationVector(const Vec3& rotvec) {
  double theta = rotvec.norm();
  double half = 0.5 * theta;
  // sin(half) / theta, with its Taylor expansion near zero.
  double k = theta < 1e-8 ? 0.5 - theta * theta / 48.0 : std::sin(half) / theta;
  return FromQuaternion(Quat(std::cos(half), k * rotvec.x(), k * rotvec.y(), k * rotvec.z()));
}

Vec3 Rotation::rotation_vector() const {
  Quat q = q_;
  if (q.w() < 0) q.coeffs() = -q.coeffs();
  Vec3 v = q.vec();
  double s = v.norm();
  if (s < 1e-12) return 2.0 * v;  // first-order around identity
  double theta = 2.0 * std::atan2(s, q.w());
  return (theta / s) * v;
}

double Rotation::angle() const {
  return 2.0 * std::atan2(q_.vec().norm(), std::abs(q_.w()));
}

Rotation Rotation::inverse() const { return Rotation(q_.conjugate()); }

Rotation Rotation::operator*(const Rotation& other) const {
  return Rotation(Normalized(q_ * other.q_));
}

double GeodesicDistance(const Rotation& a, const Rotation& b) {
  return (a.inverse() * b).angle();
}

double GeodesicDistanceTrace(const Rotation& a, const Rotation& b) {
  Mat3 rel = a.matrix().transpose() * b.matrix();
  double c = std::clamp((rel.trace() - 1.0) / 2.0, -1.0, 1.0);
  return std::acos(c);
}

Mat3 Hat(const Vec3& v) {
  Mat3 m;
  m << 0, -v.z(), v.y(),
       v.z(), 0, -v.x(),
       -v.y(), v.x(), 0;
  return m;
}

RigidTransform RigidTransform::inverse() const {
  RigidTransform inv;
  inv.orientation = orientation.inverse();
  inv.position = -(inv.orientation * position);
  return inv;
}

RigidTransform RigidTransform::operator*(const RigidTransform& other) const {
  RigidTransform out;
  out.orientation = orientation * other.orientation;
  out.position = orientation * other.position + position;
  return out;
}

Eigen::Matrix4d RigidTransform::homogeneous() const {
  Eigen::Matrix4d h = Eigen::Matrix4d::Identity();
  h.topLeftCorner<3, 3>() = orientation.matrix();
  h.topRightCorner<3, 1>() = position;
  return h;
}

}  // namespace mimic
