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

#ifndef MIMIC_SKELETON_H_
#define MIMIC_SKELETON_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mimic/rotation.h"

namespace mimic {

enum class JointKind { kRoot, kRevolute, kSpherical };

std::string_view JointKindName(JointKind kind);

struct JointLimits {
  double lower = 0.0;
  double upper = 0.0;
};

struct Joint {
  std::string name;
  int parent = -1;
  // Translation from the parent frame to this joint, in the parent frame.
  Vec3 offset = Vec3::Zero();
  JointKind kind = JointKind::kRevolute;
  // Unit axis in the local frame; only meaningful for revolute joints.
  Vec3 axis = Vec3::UnitZ();
  std::optional<JointLimits> limits;
};

// A named point rigidly attached to a joint frame (hands, wrists, feet).
// Sites are not joints and carry no degrees of freedom.
struct Site {
  std::string name;
  int parent = 0;
  Vec3 offset = Vec3::Zero();
};

// A point on the skeleton addressed by name: either a joint origin or a site.
struct Landmark {
  int joint = 0;
  Vec3 offset = Vec3::Zero();
};

// Topologically sorted kinematic tree. Joint 0 is the free root.
//
// Shipped skeletons share one rest convention: z up, x forward, y left, and
// every body frame aligned with the world when all joint values are zero.
class Skeleton {
 public:
  Skeleton() = default;
  // Validates the tree and throws SchemaError on any violation.
  Skeleton(std::string name, std::vector<Joint> joints, std::vector<Site> sites = {});

  const std::string& name() const { return name_; }
  const std::vector<Joint>& joints() const { return joints_; }
  const std::vector<Site>& sites() const { return sites_; }
  const Joint& joint(int i) const { return joints_[i]; }
  int num_joints() const { return static_cast<int>(joints_.size()); }
  int num_revolute() const { return num_revolute_; }
  int num_spherical() const { return num_spherical_; }
  bool is_all_revolute() const { return num_spherical_ == 0; }

  std::optional<int> FindJoint(std::string_view name) const;
  int JointIndex(std::string_view name) const;  // throws LookupError
  // Resolves a joint or site name.
  Landmark ResolveLandmark(std::string_view name) const;  // throws LookupError
  bool HasLandmark(std::string_view name) const;

  // True when `ancestor` lies on the path from `joint` to the root
  // (a joint is its own ancestor).
  bool IsAncestor(int ancestor, int joint) const;

  // Returns a copy with joint `i` offset replaced.
  Skeleton WithOffset(int i, const Vec3& offset) const;

 private:
  std::string name_;
  std::vector<Joint> joints_;
  std::vector<Site> sites_;
  int num_revolute_ = 0;
  int num_spherical_ = 0;
};

// Built-in skeleton descriptions: "h1", "unihsi", "roam", "smpl".
//
// Link offsets are approximations of the public robot and body models;
// callers needing exact geometry should load a skeleton file instead.
Skeleton BuiltinSkeleton(std::string_view name);
std::vector<std::string> BuiltinSkeletonNames();

// Loads a built-in skeleton by name or a skeleton JSON file by path.
Skeleton ResolveSkeleton(const std::string& name_or_path);

Skeleton LoadSkeleton(const std::string& path);
Skeleton ParseSkeleton(std::string_view json_text);
std::string SerializeSkeleton(const Skeleton& skeleton);
void SaveSkeleton(const Skeleton& skeleton, const std::string& path);

}  // namespace mimic

#endif  // MIMIC_SKELETON_H_
