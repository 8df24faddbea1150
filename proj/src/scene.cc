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

#include "mimic/scene.h"

#include <cmath>
#include <fstream>
#include <span>
#include <sstream>

#include "json.hpp"
#include "mimic/errors.h"

namespace mimic {
namespace {

using nlohmann::json;

double Cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

Vec3 ReadVec3(const json& j) {
  if (!j.is_array() || j.size() != 3) throw SchemaError("scene: expected [x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json Vec3Json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

}  // namespace

std::string_view TaskCode(TaskId task) {
  switch (task) {
    case TaskId::kSitChair:
      return "SC";
    case TaskId::kSitSofa:
      return "SS";
    case TaskId::kLieBed:
      return "LB";
    case TaskId::kLieSofa:
      return "LS";
    case TaskId::kTouchPoints:
      return "T";
    case TaskId::kLiftBox:
      return "L";
  }
  return "?";
}

TaskId ParseTaskCode(std::string_view code) {
  for (TaskId t : kAllTasks) {
    if (TaskCode(t) == code) return t;
  }
  throw LookupError("unknown task '" + std::string(code) + "' (expected SC, SS, LB, LS, T or L)");
}

double OrientedBox::DistanceToSurface(const Vec3& point) const {
  Vec3 local = pose.inverse().TransformPoint(point);
  Vec3 outside = (local.cwiseAbs() - half_extents).cwiseMax(0.0);
  return outside.norm();
}

bool InsideConvexPolygon(std::span<const Vec2> polygon, const Vec2& point) {
  const size_t n = polygon.size();
  if (n < 3) return false;
  bool has_pos = false;
  bool has_neg = false;
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = polygon[i];
    const Vec2& b = polygon[(i + 1) % n];
    double c = Cross2(b - a, point - a);
    if (c > 0) has_pos = true;
    if (c < 0) has_neg = true;
    if (has_pos && has_neg) return false;
  }
  return true;
}

void ValidateScene(const TaskScene& scene) {
  const std::string task(TaskCode(scene.task));
  auto require = [&](bool ok, const char* field) {
    if (!ok) throw SchemaError("scene for task " + task + " requires '" + field + "'");
  };
  bool needs_footprint = !IsHandTask(scene.task);
  if (needs_footprint || !scene.footprint.empty()) {
    require(scene.footprint.size() >= 3, "footprint");
    const size_t n = scene.footprint.size();
    double area = 0.0;
    int sign = 0;
    for (size_t i = 0; i < n; ++i) {
      const Vec2& a = scene.footprint[i];
      const Vec2& b = scene.footprint[(i + 1) % n];
      const Vec2& c = scene.footprint[(i + 2) % n];
      if (!a.allFinite()) throw SchemaError("scene footprint has non-finite vertices");
      area += Cross2(a, b);
      double turn = Cross2(b - a, c - b);
      int s = (turn > 1e-15) - (turn < -1e-15);
      if (s != 0) {
        if (sign != 0 && s != sign) throw SchemaError("scene footprint is not convex");
        sign = s;
      }
    }
    if (std::abs(area) < 1e-12) throw SchemaError("scene footprint is degenerate");
  }
  switch (scene.task) {
    case TaskId::kSitChair:
    case TaskId::kSitSofa:
    case TaskId::kLieBed:
      require(scene.seat_height.has_value(), "seat_height");
      break;
    case TaskId::kLieSofa:
      require(scene.seat_height.has_value(), "seat_height");
      require(scene.sofa_height.has_value(), "sofa_height");
      break;
    case TaskId::kTouchPoints:
      require(scene.targets.has_value(), "targets");
      break;
    case TaskId::kLiftBox:
      require(scene.box.has_value(), "box");
      break;
  }
  if (scene.seat_height && !(*scene.seat_height >= 0.0)) throw SchemaError("seat_height must be >= 0");
  if (scene.sofa_height && !(*scene.sofa_height >= 0.0)) throw SchemaError("sofa_height must be >= 0");
}

TaskScene ParseScene(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scene: ") + e.what());
  }
  TaskScene scene;
  try {
    scene.task = ParseTaskCode(doc.at("task").get<std::string>());
    if (doc.contains("footprint")) {
      for (const json& p : doc["footprint"]) {
        if (!p.is_array() || p.size() != 2) throw SchemaError("scene: footprint vertices are [x, y]");
        scene.footprint.emplace_back(p[0].get<double>(), p[1].get<double>());
      }
    }
    if (doc.contains("seat_height")) scene.seat_height = doc["seat_height"].get<double>();
    if (doc.contains("sofa_height")) scene.sofa_height = doc["sofa_height"].get<double>();
    if (doc.contains("targets")) {
      const json& t = doc["targets"];
      if (!t.is_array() || t.size() != 2) throw SchemaError("scene: 'targets' needs two points");
      scene.targets = std::array<Vec3, 2>{ReadVec3(t[0]), ReadVec3(t[1])};
    }
    if (doc.contains("box")) {
      const json& b = doc["box"];
      OrientedBox box;
      box.pose.position = ReadVec3(b.at("pos"));
      if (b.contains("quat")) {
        const json& q = b["quat"];
        box.pose.orientation = Rotation::FromWxyz(q.at(0).get<double>(), q.at(1).get<double>(),
                                                  q.at(2).get<double>(), q.at(3).get<double>());
      }
      box.half_extents = ReadVec3(b.at("half_extents"));
      scene.box = box;
    }
    if (doc.contains("lift_height")) scene.lift_height = doc["lift_height"].get<double>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("scene: ") + e.what());
  }
  ValidateScene(scene);
  return scene;
}

TaskScene LoadScene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scene file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseScene(ss.str());
}

std::string SerializeScene(const TaskScene& scene) {
  json doc;
  doc["task"] = std::string(TaskCode(scene.task));
  json fp = json::array();
  for (const Vec2& p : scene.footprint) fp.push_back({p.x(), p.y()});
  doc["footprint"] = std::move(fp);
  if (scene.seat_height) doc["seat_height"] = *scene.seat_height;
  if (scene.sofa_height) doc["sofa_height"] = *scene.sofa_height;
  if (scene.targets) doc["targets"] = {Vec3Json((*scene.targets)[0]), Vec3Json((*scene.targets)[1])};
  if (scene.box) {
    const Quat& q = scene.box->pose.orientation.quaternion();
    doc["box"] = {{"pos", Vec3Json(scene.box->pose.position)},
                  {"quat", {q.w(), q.x(), q.y(), q.z()}},
                  {"half_extents", Vec3Json(scene.box->half_extents)}};
  }
  doc["lift_height"] = scene.lift_height;
  return doc.dump(2) + "\n";
}

}  // namespace mimic
