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

#include "mimic/skeleton.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mimic/errors.h"

namespace mimic {
namespace {

using nlohmann::json;

Vec3 ReadVec3(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) {
    throw SchemaError(what + " must be an array of 3 numbers");
  }
  Vec3 v;
  for (int k = 0; k < 3; ++k) {
    if (!j[k].is_number()) throw SchemaError(what + " must be numeric");
    v[k] = j[k].get<double>();
  }
  return v;
}

JointKind ParseKind(const std::string& s) {
  if (s == "root") return JointKind::kRoot;
  if (s == "revolute") return JointKind::kRevolute;
  if (s == "spherical") return JointKind::kSpherical;
  throw SchemaError("unknown joint kind '" + s + "'");
}

}  // namespace

Skeleton SkeletonFromJson(const json& doc);

std::string_view JointKindName(JointKind kind) {
  switch (kind) {
    case JointKind::kRoot:
      return "root";
    case JointKind::kRevolute:
      return "revolute";
    case JointKind::kSpherical:
      return "spherical";
  }
  return "unknown";
}

Skeleton::Skeleton(std::string name, std::vector<Joint> joints, std::vector<Site> sites)
    : name_(std::move(name)), joints_(std::move(joints)), sites_(std::move(sites)) {
  if (joints_.empty()) throw SchemaError("skeleton '" + name_ + "' has no joints");
  for (int i = 0; i < num_joints(); ++i) {
    Joint& j = joints_[i];
    const std::string where = "skeleton '" + name_ + "' joint " + std::to_string(i) + " ('" + j.name + "')";
    if (i == 0) {
      if (j.parent != -1 || j.kind != JointKind::kRoot) {
        throw SchemaError(where + ": joint 0 must be the root with parent -1");
      }
    } else {
      if (j.kind == JointKind::kRoot) throw SchemaError(where + ": only joint 0 may be a root");
      if (j.parent < 0 || j.parent >= i) {
        throw SchemaError(where + ": parent index must be in [0, " + std::to_string(i) + ")");
      }
    }
    if (!j.offset.allFinite()) throw SchemaError(where + ": offset is not finite");
    if (j.kind == JointKind::kRevolute) {
      double n = j.axis.norm();
      if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-6) {
        throw SchemaError(where + ": revolute axis must be a unit vector");
      }
      j.axis /= n;
      ++num_revolute_;
      if (j.limits && j.limits->lower > j.limits->upper) {
        throw SchemaError(where + ": lower limit exceeds upper limit");
      }
    } else if (j.kind == JointKind::kSpherical) {
      ++num_spherical_;
    }
    for (int k = 0; k < i; ++k) {
      if (joints_[k].name == j.name) throw SchemaError(where + ": duplicate joint name");
    }
  }
  for (const Site& s : sites_) {
    if (s.parent < 0 || s.parent >= num_joints()) {
      throw SchemaError("site '" + s.name + "' has an invalid parent");
    }
    if (!s.offset.allFinite()) throw SchemaError("site '" + s.name + "' offset is not finite");
    if (FindJoint(s.name)) throw SchemaError("site '" + s.name + "' shadows a joint name");
  }
}

std::optional<int> Skeleton::FindJoint(std::string_view name) const {
  for (int i = 0; i < num_joints(); ++i) {
    if (joints_[i].name == name) return i;
  }
  return std::nullopt;
}

int Skeleton::JointIndex(std::string_view name) const {
  if (auto i = FindJoint(name)) return *i;
  throw LookupError("skeleton '" + name_ + "' has no joint '" + std::string(name) + "'");
}

bool Skeleton::HasLandmark(std::string_view name) const {
  if (FindJoint(name)) return true;
  for (const Site& s : sites_) {
    if (s.name == name) return true;
  }
  return false;
}

Landmark Skeleton::ResolveLandmark(std::string_view name) const {
  if (auto i = FindJoint(name)) return {*i, Vec3::Zero()};
  for (const Site& s : sites_) {
    if (s.name == name) return {s.parent, s.offset};
  }
  throw LookupError("skeleton '" + name_ + "' has no joint or site '" + std::string(name) + "'");
}

bool Skeleton::IsAncestor(int ancestor, int joint) const {
  for (int j = joint; j >= 0; j = joints_[j].parent) {
    if (j == ancestor) return true;
  }
  return false;
}

Skeleton Skeleton::WithOffset(int i, const Vec3& offset) const {
  Skeleton copy = *this;
  copy.joints_.at(i).offset = offset;
  return copy;
}

Skeleton ParseSkeleton(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("skeleton: ") + e.what());
  }
  try {
    return SkeletonFromJson(doc);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("skeleton: ") + e.what());
  }
}

Skeleton SkeletonFromJson(const json& doc) {
  if (!doc.is_object() || !doc.contains("joints") || !doc["joints"].is_array()) {
    throw SchemaError("skeleton: expected an object with a 'joints' array");
  }
  std::string name = doc.value("name", std::string());
  std::vector<Joint> joints;
  for (size_t i = 0; i < doc["joints"].size(); ++i) {
    const json& jj = doc["joints"][i];
    const std::string where = "skeleton joint " + std::to_string(i);
    if (!jj.is_object()) throw SchemaError(where + ": expected an object");
    Joint j;
    j.name = jj.value("name", std::string());
    j.parent = jj.contains("parent") && !jj["parent"].is_null() ? jj["parent"].get<int>() : -1;
    j.offset = jj.contains("offset") ? ReadVec3(jj["offset"], where + " offset") : Vec3::Zero();
    j.kind = ParseKind(jj.value("kind", std::string("revolute")));
    if (jj.contains("axis")) j.axis = ReadVec3(jj["axis"], where + " axis");
    if (jj.contains("limits")) {
      const json& l = jj["limits"];
      if (!l.is_array() || l.size() != 2) throw SchemaError(where + ": limits must be [lower, upper]");
      j.limits = JointLimits{l[0].get<double>(), l[1].get<double>()};
    }
    joints.push_back(std::move(j));
  }
  std::vector<Site> sites;
  if (doc.contains("sites")) {
    for (const json& sj : doc["sites"]) {
      Site s;
      s.name = sj.at("name").get<std::string>();
      s.parent = sj.at("parent").get<int>();
      s.offset = ReadVec3(sj.at("offset"), "site " + s.name + " offset");
      sites.push_back(std::move(s));
    }
  }
  return Skeleton(std::move(name), std::move(joints), std::move(sites));
}

Skeleton LoadSkeleton(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open skeleton file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseSkeleton(ss.str());
}

std::string SerializeSkeleton(const Skeleton& skeleton) {
  json doc;
  doc["name"] = skeleton.name();
  json joints = json::array();
  for (const Joint& j : skeleton.joints()) {
    json jj;
    jj["name"] = j.name;
    jj["parent"] = j.parent;
    jj["offset"] = {j.offset.x(), j.offset.y(), j.offset.z()};
    jj["kind"] = std::string(JointKindName(j.kind));
    if (j.kind == JointKind::kRevolute) jj["axis"] = {j.axis.x(), j.axis.y(), j.axis.z()};
    if (j.limits) jj["limits"] = {j.limits->lower, j.limits->upper};
    joints.push_back(std::move(jj));
  }
  doc["joints"] = std::move(joints);
  if (!skeleton.sites().empty()) {
    json sites = json::array();
    for (const Site& s : skeleton.sites()) {
      sites.push_back({{"name", s.name}, {"parent", s.parent}, {"offset", {s.offset.x(), s.offset.y(), s.offset.z()}}});
    }
    doc["sites"] = std::move(sites);
  }
  return doc.dump(2) + "\n";
}

void SaveSkeleton(const Skeleton& skeleton, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write skeleton file '" + path + "'");
  out << SerializeSkeleton(skeleton);
}

Skeleton ResolveSkeleton(const std::string& name_or_path) {
  for (const std::string& n : BuiltinSkeletonNames()) {
    if (n == name_or_path) return BuiltinSkeleton(n);
  }
  if (std::filesystem::exists(name_or_path)) return LoadSkeleton(name_or_path);
  throw LookupError("'" + name_or_path + "' is neither a built-in skeleton nor a file");
}

}  // namespace mimic
