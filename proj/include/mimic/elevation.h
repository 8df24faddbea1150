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

#ifndef MIMIC_ELEVATION_H_
#define MIMIC_ELEVATION_H_

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mimic/rotation.h"

namespace mimic {

inline constexpr int kElevationGridSize = 128;
inline constexpr double kDefaultCellSize = 0.04;
inline constexpr double kTargetCellSize = 0.01;

// Top-down height grid around the root. Row index grows along root -x (the
// humanoid faces toward row 0), column index along root +y, and cell
// (64, 64) holds the origin. Empty cells hold NaN.
class ElevationMap {
 public:
  static constexpr int kSize = kElevationGridSize;

  explicit ElevationMap(double cell_size = kDefaultCellSize);

  double cell_size() const { return cell_size_; }
  double at(int row, int col) const { return cells_[Offset(row, col)]; }
  double& at(int row, int col) { return cells_[Offset(row, col)]; }
  bool has_data(int row, int col) const { return !std::isnan(at(row, col)); }
  int populated_cells() const;
  const std::vector<double>& cells() const { return cells_; }

  // Cell containing the root-frame point (x, y), or nullopt outside the grid.
  // Cell (r, c) covers -x in [(r - 64) s, (r - 63) s) and y in
  // [(c - 64) s, (c - 63) s) with s the cell size.
  std::optional<std::array<int, 2>> CellOf(double x, double y) const;

  // Keeps the larger of the stored height and `z`.
  void Raise(int row, int col, double z);

  // True when both maps have the same cell size and identical cells, with
  // empty cells comparing equal.
  bool BitwiseEqual(const ElevationMap& other) const;

 private:
  static size_t Offset(int row, int col) { return static_cast<size_t>(row) * kSize + col; }

  double cell_size_;
  std::vector<double> cells_;
};

// Per-cell maximum z of the points. Non-finite points and points outside the
// grid are skipped.
ElevationMap RasterizeElevation(std::span<const Vec3> points, double cell_size = kDefaultCellSize);

// Map that is empty except for the cells holding the targets (one or two),
// each set to its target's height (the larger one when both land in one
// cell). Targets outside the grid leave no mark.
ElevationMap TargetPointMap(std::span<const Vec3> targets, double cell_size = kTargetCellSize);

// 8-bit grayscale value of a cell: 0 for empty cells, otherwise the height
// clamped to [-1, 2] m and mapped linearly onto [1, 255].
uint8_t ElevationGray(double height);

// Binary PGM (P5) image of the map.
std::string ElevationToPgm(const ElevationMap& map);
// Raw little-endian float32 cell values, row-major, NaN for empty cells.
std::string ElevationToFloat32(const ElevationMap& map);
// Writes `<stem>.pgm` and `<stem>.f32`.
void SaveElevation(const ElevationMap& map, const std::string& stem);

}  // namespace mimic

#endif  // MIMIC_ELEVATION_H_
