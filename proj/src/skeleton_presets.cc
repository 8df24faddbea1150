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

#include <string>
#include <vector>

#include "mimic/errors.h"
#include "mimic/skeleton.h"

namespace mimic {
namespace {

Joint Root(const std::string& name) {
  Joint j;
  j.name = name;
  j.parent = -1;
  j.kind = JointKind::kRoot;
  return j;
}

Joint Revolute(const std::string& name, int parent, Vec3 offset, Vec3 axis, double lo, double hi) {
  Joint j;
  j.name = name;
  j.parent = parent;
  j.offset = offset;
  j.kind = JointKind::kRevolute;
  j.axis = axis;
  j.limits = JointLimits{lo, hi};
  return j;
}

Joint Ball(const std::string& name, int parent, Vec3 offset) {
  Joint j;
  j.name = name;
  j.parent = parent;
  j.offset = offset;
  j.kind = JointKind::kSpherical;
  return j;
}

// Unitree H1: pelvis plus 19 revolute joints, indexed as in the published
// joint mapping tables. Offsets follow the public URDF to ~1 mm; wrists are
// sites at the end of the forearm since the model has no hand links.
Skeleton MakeH1() {
  const Vec3 x = Vec3::UnitX(), y = Vec3::UnitY(), z = Vec3::UnitZ();
  std::vector<Joint> j;
  j.push_back(Root("pelvis"));                                                                    // 0
  j.push_back(Revolute("left_hip_yaw", 0, {0.0, 0.0875, -0.1742}, z, -0.43, 0.43));               // 1
  j.push_back(Revolute("left_hip_roll", 1, {0.039468, 0.0, 0.0}, x, -0.43, 0.43));                // 2
  j.push_back(Revolute("left_hip_pitch", 2, {0.0, 0.11536, 0.0}, y, -1.57, 1.57));                // 3
  j.push_back(Revolute("left_knee", 3, {0.0, 0.0, -0.4}, y, -0.26, 2.05));                        // 4
  j.push_back(Revolute("left_ankle", 4, {0.0, 0.0, -0.4}, y, -0.87, 0.52));                       // 5
  j.push_back(Revolute("right_hip_yaw", 0, {0.0, -0.0875, -0.1742}, z, -0.43, 0.43));             // 6
  j.push_back(Revolute("right_hip_roll", 6, {-0.039468, 0.0, 0.0}, x, -0.43, 0.43));              // 7
  j.push_back(Revolute("right_hip_pitch", 7, {0.0, -0.11536, 0.0}, y, -1.57, 1.57));              // 8
  j.push_back(Revolute("right_knee", 8, {0.0, 0.0, -0.4}, y, -0.26, 2.05));                       // 9
  j.push_back(Revolute("right_ankle", 9, {0.0, 0.0, -0.4}, y, -0.87, 0.52));                      // 10
  j.push_back(Revolute("torso", 0, {0.0, 0.0, 0.0}, z, -2.35, 2.35));                             // 11
  j.push_back(Revolute("left_shoulder_pitch", 11, {0.0055, 0.15535, 0.42999}, y, -2.87, 2.87));   // 12
  j.push_back(Revolute("left_shoulder_roll", 12, {-0.0055, 0.0565, -0.0165}, x, -0.34, 3.11));    // 13
  j.push_back(Revolute("left_shoulder_yaw", 13, {0.0, 0.0, -0.1343}, z, -1.3, 4.45));             // 14
  j.push_back(Revolute("left_elbow", 14, {0.0185, 0.0, -0.198}, y, -1.25, 2.61));                 // 15
  j.push_back(Revolute("right_shoulder_pitch", 11, {0.0055, -0.15535, 0.42999}, y, -2.87, 2.87)); // 16
  j.push_back(Revolute("right_shoulder_roll", 16, {-0.0055, -0.0565, -0.0165}, x, -3.11, 0.34));  // 17
  j.push_back(Revolute("right_shoulder_yaw", 17, {0.0, 0.0, -0.1343}, z, -4.45, 1.3));            // 18
  j.push_back(Revolute("right_elbow", 18, {0.0185, 0.0, -0.198}, y, -1.25, 2.61));                // 19
  std::vector<Site> sites = {
      {"left_wrist", 15, {0.0, 0.0, -0.25}},
      {"right_wrist", 19, {0.0, 0.0, -0.25}},
  };
  return Skeleton("h1", std::move(j), std::move(sites));
}

// 15-body character used by the sitting and bed interaction generator.
Skeleton MakeUniHsi() {
  std::vector<Joint> j;
  j.push_back(Root("pelvis"));                               // 0
  j.push_back(Ball("torso", 0, {0.0, 0.0, 0.236}));          // 1
  j.push_back(Ball("head", 1, {0.0, 0.0, 0.224}));           // 2
  j.push_back(Ball("right_shoulder", 1, {-0.024, -0.18, 0.243}));  // 3
  j.push_back(Ball("right_elbow", 3, {0.0, 0.0, -0.274}));   // 4
  j.push_back(Ball("right_wrist", 4, {0.0, 0.0, -0.258}));   // 5
  j.push_back(Ball("left_shoulder", 1, {-0.024, 0.18, 0.243}));    // 6
  j.push_back(Ball("left_elbow", 6, {0.0, 0.0, -0.274}));    // 7
  j.push_back(Ball("left_wrist", 7, {0.0, 0.0, -0.258}));    // 8
  j.push_back(Ball("right_hip", 0, {0.0, -0.0845, 0.0}));    // 9
  j.push_back(Ball("right_knee", 9, {0.0, 0.0, -0.421}));    // 10
  j.push_back(Ball("right_ankle", 10, {0.0, 0.0, -0.409}));  // 11
  j.push_back(Ball("left_hip", 0, {0.0, 0.0845, 0.0}));      // 12
  j.push_back(Ball("left_knee", 12, {0.0, 0.0, -0.421}));    // 13
  j.push_back(Ball("left_ankle", 13, {0.0, 0.0, -0.409}));   // 14
  return Skeleton("unihsi", std::move(j));
}

// 27-joint character of the sofa interaction generator.
Skeleton MakeRoam() {
  std::vector<Joint> j;
  j.push_back(Root("pelvis"));                                  // 0
  j.push_back(Ball("spine", 0, {0.0, 0.0, 0.10}));              // 1
  j.push_back(Ball("spine1", 1, {0.0, 0.0, 0.12}));             // 2
  j.push_back(Ball("spine2", 2, {0.0, 0.0, 0.14}));             // 3
  j.push_back(Ball("neck", 3, {0.0, 0.0, 0.15}));               // 4
  j.push_back(Ball("head", 4, {0.0, 0.0, 0.10}));               // 5
  j.push_back(Ball("head_end", 5, {0.0, 0.0, 0.18}));           // 6
  j.push_back(Ball("left_eye", 5, {0.08, 0.03, 0.06}));         // 7
  j.push_back(Ball("right_eye", 5, {0.08, -0.03, 0.06}));       // 8
  j.push_back(Ball("left_collar", 3, {0.0, 0.06, 0.10}));       // 9
  j.push_back(Ball("left_shoulder", 9, {0.0, 0.12, 0.0}));      // 10
  j.push_back(Ball("left_elbow", 10, {0.0, 0.0, -0.27}));       // 11
  j.push_back(Ball("left_wrist", 11, {0.0, 0.0, -0.26}));       // 12
  j.push_back(Ball("right_collar", 3, {0.0, -0.06, 0.10}));     // 13
  j.push_back(Ball("right_shoulder", 13, {0.0, -0.12, 0.0}));   // 14
  j.push_back(Ball("right_elbow", 14, {0.0, 0.0, -0.27}));      // 15
  j.push_back(Ball("right_wrist", 15, {0.0, 0.0, -0.26}));      // 16
  j.push_back(Ball("left_hip", 0, {0.0, 0.09, -0.06}));         // 17
  j.push_back(Ball("left_knee", 17, {0.0, 0.0, -0.42}));        // 18
  j.push_back(Ball("left_ankle", 18, {0.0, 0.0, -0.41}));       // 19
  j.push_back(Ball("left_toe", 19, {0.14, 0.0, -0.05}));        // 20
  j.push_back(Ball("left_toe_end", 20, {0.05, 0.0, 0.0}));      // 21
  j.push_back(Ball("right_hip", 0, {0.0, -0.09, -0.06}));       // 22
  j.push_back(Ball("right_knee", 22, {0.0, 0.0, -0.42}));       // 23
  j.push_back(Ball("right_ankle", 23, {0.0, 0.0, -0.41}));      // 24
  j.push_back(Ball("right_toe", 24, {0.14, 0.0, -0.05}));       // 25
  j.push_back(Ball("right_toe_end", 25, {0.05, 0.0, 0.0}));     // 26
  return Skeleton("roam", std::move(j));
}

// SMPL body joints (first 22), as used by the motion capture corpus.
// Offsets are the neutral template converted to z-up/x-forward with the arms
// hanging down.
Skeleton MakeSmpl() {
  std::vector<Joint> j;
  j.push_back(Root("pelvis"));                                          // 0
  j.push_back(Ball("left_hip", 0, {-0.0042, 0.0695, -0.0914}));         // 1
  j.push_back(Ball("right_hip", 0, {-0.0043, -0.0678, -0.0905}));       // 2
  j.push_back(Ball("spine1", 0, {-0.0267, -0.0025, 0.1089}));           // 3
  j.push_back(Ball("left_knee", 1, {-0.0045, 0.0343, -0.3752}));        // 4
  j.push_back(Ball("right_knee", 2, {-0.0089, -0.0383, -0.3826}));      // 5
  j.push_back(Ball("spine2", 3, {0.0011, 0.0055, 0.1352}));             // 6
  j.push_back(Ball("left_ankle", 4, {-0.0437, -0.0136, -0.3980}));      // 7
  j.push_back(Ball("right_ankle", 5, {-0.0385, 0.0158, -0.4057}));      // 8
  j.push_back(Ball("spine3", 6, {0.0254, 0.0015, 0.0529}));             // 9
  j.push_back(Ball("left_foot", 7, {0.1193, 0.0264, -0.0558}));         // 10
  j.push_back(Ball("right_foot", 8, {0.1233, -0.0254, -0.0481}));       // 11
  j.push_back(Ball("neck", 9, {-0.0429, -0.0028, 0.2139}));             // 12
  j.push_back(Ball("left_collar", 9, {-0.0341, 0.0788, 0.1217}));       // 13
  j.push_back(Ball("right_collar", 9, {-0.0386, -0.0818, 0.1188}));     // 14
  j.push_back(Ball("head", 12, {0.0513, 0.0050, 0.0650}));              // 15
  j.push_back(Ball("left_shoulder", 13, {-0.0089, 0.0910, 0.0305}));    // 16
  j.push_back(Ball("right_shoulder", 14, {-0.0091, -0.0960, 0.0326}));  // 17
  j.push_back(Ball("left_elbow", 16, {-0.0274, 0.0, -0.2596}));         // 18
  j.push_back(Ball("right_elbow", 17, {-0.0251, 0.0, -0.2553}));        // 19
  j.push_back(Ball("left_wrist", 18, {-0.0066, 0.0, -0.2497}));         // 20
  j.push_back(Ball("right_wrist", 19, {-0.0056, 0.0, -0.2558}));        // 21
  return Skeleton("smpl", std::move(j));
}

}  // namespace

std::vector<std::string> BuiltinSkeletonNames() { return {"h1", "unihsi", "roam", "smpl"}; }

Skeleton BuiltinSkeleton(std::string_view name) {
  if (name == "h1") return MakeH1();
  if (name == "unihsi") return MakeUniHsi();
  if (name == "roam") return MakeRoam();
  if (name == "smpl") return MakeSmpl();
  throw LookupError("unknown built-in skeleton '" + std::string(name) +
                    "' (available: h1, unihsi, roam, smpl)");
}

}  // namespace mimic
