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

#include "mimic/camera.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <future>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "mimic/errors.h"

namespace mimic {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

static_assert(std::endian::native == std::endian::little, "depth files are little-endian");

Camera MakeCamera(std::string id, double yaw_deg, double pitch_deg, const Vec3& position) {
  Camera cam;
  cam.id = std::move(id);
  cam.mount.position = position;
  cam.mount.orientation = Rotation::FromAxisAngle(Vec3::UnitZ(), yaw_deg * kDeg) *
                          Rotation::FromAxisAngle(Vec3::UnitY(), pitch_deg * kDeg);
  return cam;
}

}  // namespace

double Camera::focal_length() const {
  return 0.5 * width / std::tan(0.5 * horizontal_fov_deg * kDeg);
}

double Camera::vertical_fov_deg() const {
  return 2.0 * std::atan(0.5 * height / focal_length()) / kDeg;
}

void Camera::Validate() const {
  if (width <= 0 || height <= 0) throw ConfigError("camera '" + id + "' has a non-positive resolution");
  if (!(horizontal_fov_deg > 0.0 && horizontal_fov_deg < 180.0)) {
    throw ConfigError("camera '" + id + "' FOV must lie in (0, 180) degrees");
  }
}

Vec3 Camera::BackProject(double u, double v, double depth) const {
  const double f = focal_length();
  return {depth, -(u + 0.5 - 0.5 * width) * depth / f, -(v + 0.5 - 0.5 * height) * depth / f};
}

Vec2 Camera::Project(const Vec3& p) const {
  const double f = focal_length();
  return {0.5 * width - f * p.y() / p.x() - 0.5, 0.5 * height - f * p.z() / p.x() - 0.5};
}

const Camera& CameraRig::Find(const std::string& id) const {
  for (const Camera& c : cameras) {
    if (c.id == id) return c;
  }
  throw LookupError("camera rig has no camera '" + id + "'");
}

CameraRig PelvisCameraRig() {
  constexpr double kPitch = 35.0;
  constexpr double kRadius = 0.1;
  CameraRig rig;
  for (auto [name, yaw] : {std::pair{"right_front", -45.0}, {"left_front", 45.0},
                           {"left_back", 135.0}, {"right_back", -135.0}}) {
    Vec3 pos(kRadius * std::cos(yaw * kDeg), kRadius * std::sin(yaw * kDeg), 0.0);
    rig.cameras.push_back(MakeCamera(name, yaw, kPitch, pos));
  }
  return rig;
}

CameraRig HeadCameraRig() {
  CameraRig rig;
  rig.cameras.push_back(MakeCamera("head", 0.0, 55.0, Vec3(0.0, 0.0, 0.55)));
  return rig;
}

CameraRig CameraRigForTask(TaskId task) {
  return IsHandTask(task) ? HeadCameraRig() : PelvisCameraRig();
}

DepthImage LoadDepthImage(const std::string& raw_path, const std::optional<std::string>& sidecar_path) {
  std::string meta_path = sidecar_path.value_or(std::filesystem::path(raw_path).replace_extension(".json").string());
  std::ifstream meta(meta_path);
  if (!meta) throw IoError("cannot open depth sidecar '" + meta_path + "'");
  DepthImage image;
  try {
    nlohmann::json doc = nlohmann::json::parse(meta);
    image.width = doc.at("width").get<int>();
    image.height = doc.at("height").get<int>();
    image.camera_id = doc.at("camera_id").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("depth sidecar '" + meta_path + "': " + e.what());
  }
  if (image.width <= 0 || image.height <= 0) throw SchemaError("depth sidecar has a non-positive size");

  std::ifstream raw(raw_path, std::ios::binary);
  if (!raw) throw IoError("cannot open depth file '" + raw_path + "'");
  const size_t count = static_cast<size_t>(image.width) * image.height;
  image.depth.resize(count);
  raw.read(reinterpret_cast<char*>(image.depth.data()), static_cast<std::streamsize>(count * sizeof(float)));
  if (raw.gcount() != static_cast<std::streamsize>(count * sizeof(float)) || raw.peek() != EOF) {
    throw DimensionError("depth file '" + raw_path + "' does not hold " + std::to_string(image.width) + "x" +
                         std::to_string(image.height) + " float32 values");
  }
  return image;
}

void SaveDepthImage(const DepthImage& image, const std::string& raw_path) {
  std::ofstream raw(raw_path, std::ios::binary);
  if (!raw) throw IoError("cannot write depth file '" + raw_path + "'");
  raw.write(reinterpret_cast<const char*>(image.depth.data()),
            static_cast<std::streamsize>(image.depth.size() * sizeof(float)));
  std::ofstream meta(std::filesystem::path(raw_path).replace_extension(".json"));
  nlohmann::json doc = {{"width", image.width}, {"height", image.height}, {"camera_id", image.camera_id}};
  meta << doc.dump() << "\n";
}

std::vector<Vec3> DepthToPoints(const DepthImage& image, const Camera& camera,
                                const RigidTransform& root_from_pelvis) {
  camera.Validate();
  if (image.width != camera.width || image.height != camera.height) {
    throw DimensionError("depth image is " + std::to_string(image.width) + "x" + std::to_string(image.height) +
                         " but camera '" + camera.id + "' is " + std::to_string(camera.width) + "x" +
                         std::to_string(camera.height));
  }
  if (image.depth.size() != static_cast<size_t>(image.width) * image.height) {
    throw DimensionError("depth buffer size does not match its resolution");
  }
  const RigidTransform root_from_camera = root_from_pelvis * camera.mount;
  std::vector<Vec3> points;
  for (int v = 0; v < image.height; ++v) {
    for (int u = 0; u < image.width; ++u) {
      const double d = image.at(v, u);
      if (!std::isfinite(d) || d <= 0.0 || d > kMaxPointDepth) continue;
      points.push_back(root_from_camera.TransformPoint(camera.BackProject(u, v, d)));
    }
  }
  return points;
}

std::vector<Vec3> RigPointCloud(std::span<const DepthImage> images, const CameraRig& rig,
                                const RigidTransform& root_from_pelvis) {
  std::vector<std::future<std::vector<Vec3>>> jobs;
  for (const Camera& cam : rig.cameras) {
    const DepthImage* match = nullptr;
    for (const DepthImage& img : images) {
      if (img.camera_id == cam.id) match = &img;
    }
    if (!match) throw LookupError("no depth image for camera '" + cam.id + "'");
    jobs.push_back(std::async(std::launch::async, [match, &cam, &root_from_pelvis] {
      return DepthToPoints(*match, cam, root_from_pelvis);
    }));
  }
  std::vector<Vec3> all;
  for (auto& job : jobs) {
    std::vector<Vec3> part = job.get();
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

}  // namespace mimic
