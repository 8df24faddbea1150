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

#include "mimic/mapping.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mimic/errors.h"

namespace mimic {
namespace {

using nlohmann::json;

const std::vector<std::pair<std::string, std::string>> kWristPairs = {
    {"left_wrist", "left_wrist"}, {"right_wrist", "right_wrist"}};

// H1 side of every table: pelvis, torso, hip yaw + roll, knee, ankle per leg,
// then one shoulder joint and the elbow per arm.
JointMapping UniHsiPreset() {
  return {"unihsi", "h1",
          {{0, 0}, {0, 11},
           {12, 1}, {12, 2}, {13, 4}, {14, 5},
           {9, 6}, {9, 7}, {10, 9}, {11, 10},
           {6, 13}, {7, 15},
           {3, 17}, {4, 19}},
          kWristPairs};
}

JointMapping RoamPreset() {
  return {"roam", "h1",
          {{0, 0}, {0, 11},
           {17, 1}, {17, 2}, {18, 4}, {19, 5},
           {22, 6}, {22, 7}, {23, 9}, {24, 10},
           {10, 12}, {11, 15},
           {14, 16}, {15, 19}},
          kWristPairs};
}

JointMapping Core4dPreset() {
  return {"smpl", "h1",
          {{0, 0}, {0, 11},
           {1, 1}, {1, 2}, {4, 4}, {7, 5},
           {2, 6}, {2, 7}, {5, 9}, {8, 10},
           {16, 12}, {18, 15},
           {17, 16}, {19, 19}},
          kWristPairs};
}

}  // namespace

std::vector<MappingGroup> JointMapping::Groups() const {
  std::vector<MappingGroup> groups;
  for (const JointPair& p : pairs) {
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const MappingGroup& g) { return g.human == p.human; });
    if (it == groups.end()) {
      groups.push_back({p.human, {p.humanoid}});
    } else {
      it->humanoid.push_back(p.humanoid);
    }
  }
  for (MappingGroup& g : groups) std::sort(g.humanoid.begin(), g.humanoid.end());
  return groups;
}

bool JointMapping::MapsHumanJoint(int human) const {
  return std::any_of(pairs.begin(), pairs.end(), [&](const JointPair& p) { return p.human == human; });
}

void ValidateMapping(const JointMapping& mapping, const Skeleton& human, const Skeleton& humanoid) {
  std::set<int> seen;
  for (const JointPair& p : mapping.pairs) {
    if (p.human < 0 || p.human >= human.num_joints()) {
      throw SchemaError("mapping: human joint " + std::to_string(p.human) + " is out of range for '" +
                        human.name() + "'");
    }
    if (p.humanoid < 0 || p.humanoid >= humanoid.num_joints()) {
      throw SchemaError("mapping: humanoid joint " + std::to_string(p.humanoid) +
                        " is out of range for '" + humanoid.name() + "'");
    }
    if (!seen.insert(p.humanoid).second) {
      throw SchemaError("mapping: humanoid joint " + std::to_string(p.humanoid) + " is mapped twice");
    }
  }
  for (const auto& [a, b] : mapping.hand_pairs) {
    if (!human.HasLandmark(a)) throw SchemaError("mapping: human has no landmark '" + a + "'");
    if (!humanoid.HasLandmark(b)) throw SchemaError("mapping: humanoid has no landmark '" + b + "'");
  }
}

std::vector<std::string> MappingPresetNames() { return {"unihsi", "roam", "core4d"}; }

JointMapping LoadMapping(const std::string& preset_or_path) {
  if (preset_or_path == "unihsi") return UniHsiPreset();
  if (preset_or_path == "roam") return RoamPreset();
  if (preset_or_path == "core4d") return Core4dPreset();
  if (std::filesystem::is_regular_file(preset_or_path)) {
    std::ifstream in(preset_or_path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ParseMapping(ss.str());
  }
  throw LookupError("unknown mapping '" + preset_or_path +
                    "'; available presets: unihsi, roam, core4d (or a mapping file path)");
}

JointMapping ParseMapping(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("mapping: ") + e.what());
  }
  try {
    JointMapping m;
    m.human_skeleton = doc.at("human_skeleton").get<std::string>();
    m.humanoid_skeleton = doc.at("humanoid_skeleton").get<std::string>();
    for (const json& p : doc.at("pairs")) {
      if (!p.is_array() || p.size() != 2) throw SchemaError("mapping: each pair must be [a, b]");
      m.pairs.push_back({p[0].get<int>(), p[1].get<int>()});
    }
    if (doc.contains("hand_pairs")) {
      for (const json& p : doc["hand_pairs"]) {
        m.hand_pairs.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("mapping: ") + e.what());
  }
}

std::string SerializeMapping(const JointMapping& mapping) {
  json doc;
  doc["human_skeleton"] = mapping.human_skeleton;
  doc["humanoid_skeleton"] = mapping.humanoid_skeleton;
  json pairs = json::array();
  for (const JointPair& p : mapping.pairs) pairs.push_back({p.human, p.humanoid});
  doc["pairs"] = std::move(pairs);
  json hands = json::array();
  for (const auto& [a, b] : mapping.hand_pairs) hands.push_back({a, b});
  doc["hand_pairs"] = std::move(hands);
  return doc.dump(2) + "\n";
}

JointMapping IdentityMapping(const Skeleton& skeleton) {
  JointMapping m;
  m.human_skeleton = skeleton.name();
  m.humanoid_skeleton = skeleton.name();
  for (int i = 0; i < skeleton.num_joints(); ++i) m.pairs.push_back({i, i});
  for (const char* wrist : {"left_wrist", "right_wrist"}) {
    if (skeleton.HasLandmark(wrist)) m.hand_pairs.emplace_back(wrist, wrist);
  }
  return m;
}

}  // namespace mimic
