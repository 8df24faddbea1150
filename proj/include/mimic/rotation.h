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

#ifndef MIMIC_ROTATION_H_
#define MIMIC_ROTATION_H_

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace mimic {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Quat = Eigen::Quaterniond;

// A 3D rotation stored as a unit quaternion.
//
// Every constructor normalizes its input, so the quaternion norm stays within
// 1e-12 of one. Inputs already that close to unit length are kept bit-for-bit,
// which lets serialized rotations round-trip exactly.
class Rotation {
 public:
  Rotation() : q_(Quat::Identity()) {}

  static Rotation Identity() { return Rotation(); }
  static Rotation FromQuaternion(const Quat& q);
  // Quaternion given as (w, x, y, z).
  static Rotation FromWxyz(double w, double x, double y, double z);
  static Rotation FromMatrix(const Mat3& m);
  // Rotation of `angle` radians about `axis`; the axis is normalized.
  static Rotation FromAxisAngle(const Vec3& axis, double angle);
  // Exponential map: direction is the axis, norm is the angle.
  static Rotation FromRotationVector(const Vec3& rotvec);

  const Quat& quaternion() const { return q_; }
  Mat3 matrix() const { return q_.toRotationMatrix(); }
  // Logarithm map with angle in [0, pi].
  Vec3 rotation_vector() const;
  // Rotation angle in [0, pi].
  double angle() const;

  Rotation inverse() const;
  Vec3 operator*(const Vec3& v) const { return q_ * v; }
  Rotation operator*(const Rotation& other) const;

 private:
  explicit Rotation(const Quat& q) : q_(q) {}
  Quat q_;
};

// Angle of the relative rotation a^T b, in [0, pi].
//
// Mathematically equal to acos(clamp((trace(a^T b) - 1) / 2, -1, 1)) but
// evaluated through atan2 on the relative quaternion, which keeps full
// precision for nearly identical rotations.
double GeodesicDistance(const Rotation& a, const Rotation& b);

// Reference evaluation of the trace formula. Loses precision near zero.
double GeodesicDistanceTrace(const Rotation& a, const Rotation& b);

// Skew-symmetric cross-product matrix.
Mat3 Hat(const Vec3& v);

// A rigid transform: x_parent = orientation * x_local + position.
struct RigidTransform {
  Vec3 position = Vec3::Zero();
  Rotation orientation;

  RigidTransform inverse() const;
  RigidTransform operator*(const RigidTransform& other) const;
  Vec3 TransformPoint(const Vec3& p) const { return orientation * p + position; }
  Vec3 TransformDirection(const Vec3& d) const { return orientation * d; }
  Eigen::Matrix4d homogeneous() const;
};

}  // namespace mimic

#endif  // MIMIC_ROTATION_H_
