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

#ifndef MIMIC_MAPPING_H_
#define MIMIC_MAPPING_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mimic/skeleton.h"

namespace mimic {

struct JointPair {
  int human = 0;
  int humanoid = 0;
  bool operator==(const JointPair&) const = default;
};

// One human joint driving a run of humanoid joints, in humanoid tree order.
struct MappingGroup {
  int human = 0;
  std::vector<int> humanoid;
};

// Human-to-humanoid joint correspondence.
struct JointMapping {
  std::string human_skeleton;
  std::string humanoid_skeleton;
  std::vector<JointPair> pairs;
  // Wrist landmarks (joint or site names) compared by the hand loss term.
  std::vector<std::pair<std::string, std::string>> hand_pairs;

  // Pairs grouped by human joint, in order of first appearance.
  std::vector<MappingGroup> Groups() const;
  bool MapsHumanJoint(int human) const;
};

// Throws SchemaError if a humanoid joint is mapped twice or an index is out
// of range for the given skeletons.
void ValidateMapping(const JointMapping& mapping, const Skeleton& human, const Skeleton& humanoid);

std::vector<std::string> MappingPresetNames();

// Preset name ("unihsi", "roam", "core4d") or a mapping JSON file path.
// Throws LookupError listing the presets when neither matches.
JointMapping LoadMapping(const std::string& preset_or_path);

// {"human_skeleton": ..., "humanoid_skeleton": ..., "pairs": [[a, b], ...],
//  "hand_pairs": [["left_wrist", "left_wrist"], ...]}
JointMapping ParseMapping(std::string_view json_text);
std::string SerializeMapping(const JointMapping& mapping);

// Maps every joint of `skeleton` onto itself. Used for self-retargeting.
JointMapping IdentityMapping(const Skeleton& skeleton);

}  // namespace mimic

#endif  // MIMIC_MAPPING_H_
