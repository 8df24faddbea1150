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

#ifndef MIMIC_SCENE_H_
#define MIMIC_SCENE_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mimic/rotation.h"
#include "mimic/task.h"

namespace mimic {

// Oriented box: pose of the center and half side lengths.
struct OrientedBox {
  RigidTransform pose;
  Vec3 half_extents = Vec3::Zero();

  // Euclidean distance from `point` to the box surface, 0 inside the box.
  double DistanceToSurface(const Vec3& point) const;
};

// Geometry of one evaluation episode, in world coordinates.
struct TaskScene {
  TaskId task = TaskId::kSitChair;
  // Object footprint in the bird's-eye view, counter-clockwise or clockwise.
  std::vector<Vec2> footprint;
  std::optional<double> seat_height;
  std::optional<double> sofa_height;
  std::optional<std::array<Vec3, 2>> targets;  // left, right wrist targets
  std::optional<OrientedBox> box;
  double lift_height = 0.2;

  double time_limit() const { return TaskTimeLimit(task); }
};

// Throws SchemaError when a field required by the task is missing, or when
// the footprint is not a non-degenerate convex polygon.
void ValidateScene(const TaskScene& scene);

// {"task": "SC", "footprint": [[x, y], ...], "seat_height": H,
//  "sofa_height": h, "targets": [[x, y, z], [x, y, z]],
//  "box": {"pos": [...], "quat": [w, x, y, z], "half_extents": [...]},
//  "lift_height": 0.2}
TaskScene ParseScene(std::string_view json_text);
TaskScene LoadScene(const std::string& path);
std::string SerializeScene(const TaskScene& scene);

// Point-in-convex-polygon test; points on the boundary count as inside.
bool InsideConvexPolygon(std::span<const Vec2> polygon, const Vec2& point);

}  // namespace mimic

#endif  // MIMIC_SCENE_H_
