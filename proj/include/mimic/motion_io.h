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

#ifndef MIMIC_MOTION_IO_H_
#define MIMIC_MOTION_IO_H_

#include <string>
#include <string_view>

#include "mimic/motion.h"

namespace mimic {

// Motion files are JSON documents:
//
//   {"fps": 50, "skeleton_id": "h1",
//    "frames": [{"root_pos": [x, y, z], "root_quat": [w, x, y, z],
//                "joints": [angle | [w, x, y, z], ...]}, ...],
//    "torques": [[...], ...], "actions": [[...], ...],
//    "object": [{"pos": [x, y, z], "quat": [w, x, y, z]}, ...]}
//
// Quaternions within 1e-6 of unit norm are renormalized on load; anything
// further off is rejected. Serialization writes shortest round-trip decimal
// forms, so save-then-load reproduces every finite value exactly.
MotionSequence ParseMotion(std::string_view json_text);
std::string SerializeMotion(const MotionSequence& motion);

MotionSequence LoadMotion(const std::string& path);
// Loads and validates against `skeleton`.
MotionSequence LoadMotion(const std::string& path, const Skeleton& skeleton);
void SaveMotion(const MotionSequence& motion, const std::string& path);

}  // namespace mimic

#endif  // MIMIC_MOTION_IO_H_
