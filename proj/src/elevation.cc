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

#include "mimic/elevation.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "mimic/errors.h"

namespace mimic {
namespace {

constexpr int kHalf = kElevationGridSize / 2;

// Largest k with k * s <= value. The floor of the quotient can be off by one
// when the division rounds across an integer, so it is checked against the
// product, which is what defines the cell bounds.
long CellIndex(double value, double s) {
  double k = std::floor(value / s);
  if (k * s > value) k -= 1.0;
  else if ((k + 1.0) * s <= value) k += 1.0;
  return static_cast<long>(k);
}

}  // namespace

ElevationMap::ElevationMap(double cell_size)
    : cell_size_(cell_size),
      cells_(static_cast<size_t>(kSize) * kSize, std::numeric_limits<double>::quiet_NaN()) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) throw ConfigError("cell size must be positive");
}

int ElevationMap::populated_cells() const {
  return static_cast<int>(std::count_if(cells_.begin(), cells_.end(), [](double h) { return !std::isnan(h); }));
}

std::optional<std::array<int, 2>> ElevationMap::CellOf(double x, double y) const {
  if (!std::isfinite(x) || !std::isfinite(y)) return std::nullopt;
  // Points far outside could overflow the index conversion.
  const double reach = (kHalf + 2) * cell_size_;
  if (std::abs(x) > reach || std::abs(y) > reach) return std::nullopt;
  long row = CellIndex(-x, cell_size_) + kHalf;
  long col = CellIndex(y, cell_size_) + kHalf;
  if (row < 0 || row >= kSize || col < 0 || col >= kSize) return std::nullopt;
  return std::array<int, 2>{static_cast<int>(row), static_cast<int>(col)};
}

void ElevationMap::Raise(int row, int col, double z) {
  double& h = at(row, col);
  if (std::isnan(h) || z > h) h = z;
}

bool ElevationMap::BitwiseEqual(const ElevationMap& other) const {
  if (std::bit_cast<uint64_t>(cell_size_) != std::bit_cast<uint64_t>(other.cell_size_)) return false;
  for (size_t i = 0; i < cells_.size(); ++i) {
    const bool a = std::isnan(cells_[i]);
    const bool b = std::isnan(other.cells_[i]);
    if (a != b) return false;
    if (!a && std::bit_cast<uint64_t>(cells_[i]) != std::bit_cast<uint64_t>(other.cells_[i])) return false;
  }
  return true;
}

ElevationMap RasterizeElevation(std::span<const Vec3> points, double cell_size) {
  ElevationMap map(cell_size);
  for (const Vec3& p : points) {
    if (!p.allFinite()) continue;
    if (auto cell = map.CellOf(p.x(), p.y())) map.Raise((*cell)[0], (*cell)[1], p.z());
  }
  return map;
}

ElevationMap TargetPointMap(std::span<const Vec3> targets, double cell_size) {
  if (targets.empty() || targets.size() > 2) throw DimensionError("target point map takes one or two targets");
  return RasterizeElevation(targets, cell_size);
}

uint8_t ElevationGray(double height) {
  if (std::isnan(height)) return 0;
  double h = std::clamp(height, -1.0, 2.0);
  return static_cast<uint8_t>(std::lround(1.0 + (h + 1.0) / 3.0 * 254.0));
}

std::string ElevationToPgm(const ElevationMap& map) {
  std::string out = "P5\n" + std::to_string(ElevationMap::kSize) + " " + std::to_string(ElevationMap::kSize) +
                    "\n255\n";
  for (double h : map.cells()) out.push_back(static_cast<char>(ElevationGray(h)));
  return out;
}

std::string ElevationToFloat32(const ElevationMap& map) {
  static_assert(std::endian::native == std::endian::little, "float sidecar is little-endian");
  std::string out(map.cells().size() * sizeof(float), '\0');
  for (size_t i = 0; i < map.cells().size(); ++i) {
    float v = static_cast<float>(map.cells()[i]);
    std::memcpy(out.data() + i * sizeof(float), &v, sizeof(float));
  }
  return out;
}

void SaveElevation(const ElevationMap& map, const std::string& stem) {
  for (auto [ext, data] : {std::pair{".pgm", ElevationToPgm(map)}, {".f32", ElevationToFloat32(map)}}) {
    std::ofstream out(stem + ext, std::ios::binary);
    if (!out) throw IoError("cannot write '" + stem + ext + "'");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
  }
}

}  // namespace mimic
