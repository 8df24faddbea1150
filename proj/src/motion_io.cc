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

#include "mimic/motion_io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mimic/errors.h"

namespace mimic {
namespace {

using nlohmann::json;

constexpr double kQuatNormTolerance = 1e-6;

double Number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  return j.get<double>();
}

Vec3 ReadVec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw ParseError(where + ": expected 3 numbers");
  return {Number(j[0], where), Number(j[1], where), Number(j[2], where)};
}

Rotation ReadQuat(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) throw ParseError(where + ": expected [w, x, y, z]");
  Quat q(Number(j[0], where), Number(j[1], where), Number(j[2], where), Number(j[3], where));
  double norm = q.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kQuatNormTolerance) {
    throw ParseError(where + ": quaternion norm " + std::to_string(norm) + " is not unit");
  }
  return Rotation::FromQuaternion(q);
}

Eigen::VectorXd ReadVector(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  Eigen::VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[i] = Number(j[i], where);
  return v;
}

std::vector<Eigen::VectorXd> ReadVectorChannel(const json& j, const std::string& name) {
  if (!j.is_array()) throw ParseError("'" + name + "' must be an array");
  std::vector<Eigen::VectorXd> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    out.push_back(ReadVector(j[i], name + " frame " + std::to_string(i)));
  }
  return out;
}

json Vec3Json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json QuatJson(const Rotation& r) {
  const Quat& q = r.quaternion();
  return json::array({q.w(), q.x(), q.y(), q.z()});
}

json VectorJson(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open motion file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

MotionSequence ParseMotion(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("motion: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("motion: expected a JSON object");
  if (!doc.contains("frames") || !doc["frames"].is_array()) {
    throw ParseError("motion: missing 'frames' array");
  }

  MotionSequence motion;
  motion.fps = doc.contains("fps") ? Number(doc["fps"], "fps") : kControlFps;
  if (doc.contains("skeleton_id")) {
    if (!doc["skeleton_id"].is_string()) throw ParseError("skeleton_id must be a string");
    motion.skeleton_id = doc["skeleton_id"].get<std::string>();
  }

  const json& frames = doc["frames"];
  motion.frames.reserve(frames.size());
  for (size_t i = 0; i < frames.size(); ++i) {
    const std::string where = "frame " + std::to_string(i);
    const json& fj = frames[i];
    if (!fj.is_object()) throw ParseError(where + ": expected an object");
    Pose pose;
    pose.root_position = fj.contains("root_pos") ? ReadVec3(fj["root_pos"], where + " root_pos")
                                                 : Vec3::Zero();
    if (fj.contains("root_quat")) pose.root_orientation = ReadQuat(fj["root_quat"], where + " root_quat");
    if (fj.contains("joints")) {
      const json& jj = fj["joints"];
      if (!jj.is_array()) throw ParseError(where + ": 'joints' must be an array");
      pose.joints.reserve(jj.size());
      for (size_t k = 0; k < jj.size(); ++k) {
        const std::string jwhere = where + " joint " + std::to_string(k + 1);
        if (jj[k].is_array()) {
          pose.joints.emplace_back(ReadQuat(jj[k], jwhere));
        } else {
          pose.joints.emplace_back(Number(jj[k], jwhere));
        }
      }
    }
    motion.frames.push_back(std::move(pose));
  }

  if (doc.contains("torques")) motion.torques = ReadVectorChannel(doc["torques"], "torques");
  if (doc.contains("actions")) motion.actions = ReadVectorChannel(doc["actions"], "actions");
  if (doc.contains("object")) {
    const json& oj = doc["object"];
    if (!oj.is_array()) throw ParseError("'object' must be an array");
    std::vector<RigidTransform> object;
    for (size_t i = 0; i < oj.size(); ++i) {
      const std::string where = "object frame " + std::to_string(i);
      if (!oj[i].is_object()) throw ParseError(where + ": expected an object");
      RigidTransform t;
      t.position = ReadVec3(oj[i].value("pos", json::array({0, 0, 0})), where + " pos");
      if (oj[i].contains("quat")) t.orientation = ReadQuat(oj[i]["quat"], where + " quat");
      object.push_back(t);
    }
    motion.object = std::move(object);
  }
  ValidateMotion(motion);
  return motion;
}

std::string SerializeMotion(const MotionSequence& motion) {
  ValidateMotion(motion);
  json doc;
  doc["fps"] = motion.fps;
  doc["skeleton_id"] = motion.skeleton_id;
  json frames = json::array();
  for (const Pose& pose : motion.frames) {
    json joints = json::array();
    for (const JointValue& v : pose.joints) {
      if (const Rotation* r = std::get_if<Rotation>(&v)) {
        joints.push_back(QuatJson(*r));
      } else {
        joints.push_back(std::get<double>(v));
      }
    }
    frames.push_back({{"root_pos", Vec3Json(pose.root_position)},
                      {"root_quat", QuatJson(pose.root_orientation)},
                      {"joints", std::move(joints)}});
  }
  doc["frames"] = std::move(frames);
  auto vector_channel = [](const std::vector<Eigen::VectorXd>& channel) {
    json out = json::array();
    for (const Eigen::VectorXd& v : channel) out.push_back(VectorJson(v));
    return out;
  };
  if (motion.torques) doc["torques"] = vector_channel(*motion.torques);
  if (motion.actions) doc["actions"] = vector_channel(*motion.actions);
  if (motion.object) {
    json object = json::array();
    for (const RigidTransform& t : *motion.object) {
      object.push_back({{"pos", Vec3Json(t.position)}, {"quat", QuatJson(t.orientation)}});
    }
    doc["object"] = std::move(object);
  }
  return doc.dump(1) + "\n";
}

MotionSequence LoadMotion(const std::string& path) {
  try {
    return ParseMotion(ReadFile(path));
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

MotionSequence LoadMotion(const std::string& path, const Skeleton& skeleton) {
  MotionSequence motion = LoadMotion(path);
  try {
    ValidateMotion(motion, skeleton);
  } catch (const Error& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return motion;
}

void SaveMotion(const MotionSequence& motion, const std::string& path) {
  std::string text = SerializeMotion(motion);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write motion file '" + path + "'");
  out << text;
  if (!out) throw IoError("failed writing motion file '" + path + "'");
}

}  // namespace mimic
