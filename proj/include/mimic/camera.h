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

#ifndef MIMIC_CAMERA_H_
#define MIMIC_CAMERA_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mimic/rotation.h"
#include "mimic/task.h"

namespace mimic {

// Depth pixels farther than this are dropped when building point clouds.
inline constexpr double kMaxPointDepth = 6.0;

// Pinhole camera. The camera frame looks along +x with +y to the left and +z
// up, like the root frame. Pixel (u, v) is column u, row v; its center sits at
// (u + 0.5, v + 0.5) and the principal point at (width / 2, height / 2). The
// focal length is the same on both axes and is set by the horizontal FOV.
struct Camera {
  std::string id;
  int width = 480;
  int height = 360;
  double horizontal_fov_deg = 120.0;
  // Camera pose in the pelvis frame.
  RigidTransform mount;

  double focal_length() const;
  double vertical_fov_deg() const;
  // Throws ConfigError on a bad resolution or FOV outside (0, 180).
  void Validate() const;

  // Point in the camera frame seen at pixel (u, v) with depth `depth` along
  // the optical axis.
  Vec3 BackProject(double u, double v, double depth) const;
  // Continuous pixel coordinates (u, v) of a camera-frame point with x > 0,
  // using the same convention, so BackProject of an integer pixel projects
  // back to that pixel.
  Vec2 Project(const Vec3& point_camera) const;
};

struct CameraRig {
  std::vector<Camera> cameras;
  const Camera& Find(const std::string& id) const;
};

// Four pelvis cameras (right_front, left_front, left_back, right_back) pitched
// 35 degrees down.
CameraRig PelvisCameraRig();
// One camera 0.55 m above the pelvis looking forward, pitched 55 degrees down.
CameraRig HeadCameraRig();
// The preset used for a task: the head camera for T and L, else the pelvis rig.
CameraRig CameraRigForTask(TaskId task);

// Row-major depth image in meters.
struct DepthImage {
  std::string camera_id;
  int width = 0;
  int height = 0;
  std::vector<float> depth;

  float at(int row, int col) const { return depth[static_cast<size_t>(row) * width + col]; }
};

// Reads a raw little-endian float32 file plus the JSON sidecar
// {"width": W, "height": H, "camera_id": "..."} at `sidecar_path`
// (defaults to the raw path with its extension replaced by ".json").
DepthImage LoadDepthImage(const std::string& raw_path,
                          const std::optional<std::string>& sidecar_path = std::nullopt);
void SaveDepthImage(const DepthImage& image, const std::string& raw_path);

// Back-projects every pixel with 0 < depth <= kMaxPointDepth and returns the
// points in the root frame: root_from_pelvis * camera.mount * p_camera.
// Throws DimensionError when the image resolution differs from the camera's.
std::vector<Vec3> DepthToPoints(const DepthImage& image, const Camera& camera,
                                const RigidTransform& root_from_pelvis = {});

// Converts one image per rig camera, in parallel, and concatenates the point
// sets in rig order. Images are matched to cameras by id.
std::vector<Vec3> RigPointCloud(std::span<const DepthImage> images, const CameraRig& rig,
                                const RigidTransform& root_from_pelvis = {});

}  // namespace mimic

#endif  // MIMIC_CAMERA_H_
