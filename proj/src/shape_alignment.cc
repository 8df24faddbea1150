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
#include <map>
#include <string>

#include "mimic/errors.h"
#include "mimic/kinematics.h"
#include "mimic/retarget.h"

namespace mimic {
namespace {

constexpr double kZeroLength = 1e-12;

}  // namespace

Skeleton AlignSkeletonShape(const Skeleton& human, const Skeleton& humanoid,
                            const JointMapping& mapping) {
  ValidateMapping(mapping, human, humanoid);
  const std::vector<RigidTransform> rest = ForwardKinematics(humanoid, Pose::Zero(humanoid));

  std::map<int, MappingGroup> groups;
  for (const MappingGroup& g : mapping.Groups()) groups[g.human] = g;

  // Target length per human joint whose bone (joint to parent) is mapped.
  std::map<int, double> targets;
  for (const auto& [a, group] : groups) {
    if (a == 0) continue;
    int p = human.joint(a).parent;
    auto parent_group = groups.find(p);
    if (parent_group == groups.end()) continue;
    Vec3 from = rest[parent_group->second.humanoid.back()].position;
    Vec3 to = rest[group.humanoid.front()].position;
    targets[a] = (to - from).norm();
  }
  for (const auto& [human_name, humanoid_name] : mapping.hand_pairs) {
    auto a = human.FindJoint(human_name);
    if (!a || *a == 0) continue;
    auto parent_group = groups.find(human.joint(*a).parent);
    if (parent_group == groups.end()) continue;
    Vec3 from = rest[parent_group->second.humanoid.back()].position;
    Vec3 to = LandmarkPosition(rest, humanoid.ResolveLandmark(humanoid_name));
    targets[*a] = (to - from).norm();
  }

  Skeleton out = human;
  for (const auto& [a, target] : targets) {
    const Vec3& offset = human.joint(a).offset;
    double length = offset.norm();
    // Already at length (up to rounding): leave the offset bit-identical so
    // that aligning twice changes nothing.
    if (std::abs(length - target) <= 1e-12 * std::max(1.0, target)) continue;
    if (length < kZeroLength) {
      if (target < kZeroLength) continue;
      throw DegeneracyError("human bone ending at joint " + std::to_string(a) + " ('" +
                            human.joint(a).name + "') has zero length but target " +
                            std::to_string(target));
    }
    out = out.WithOffset(a, offset * (target / length));
  }
  return out;
}

}  // namespace mimic
