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

#include "mimic/rewards.h"

#include <charconv>
#include <cmath>

#include "mimic/errors.h"

namespace mimic {
namespace {

double L1(const Vec3& v) { return v.cwiseAbs().sum(); }

void RequireWidth(const Eigen::VectorXd& v, Eigen::Index n, const char* name) {
  if (v.size() != n) {
    throw DimensionError(std::string(name) + " has " + std::to_string(v.size()) + " entries, expected " +
                         std::to_string(n));
  }
}

std::string Num(double v) {
  if (v == 0.0) v = 0.0;  // no "-0" in CSVs
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

TrackerVariant ParseTrackerVariant(std::string_view name) {
  if (name == "hst") return TrackerVariant::kHst;
  if (name == "phc") return TrackerVariant::kPhc;
  throw LookupError("unknown tracker variant '" + std::string(name) + "' (expected hst or phc)");
}

double RewardConfig::EffectiveHeightWeight(TaskId task) const {
  if (lambda_height) return *lambda_height;
  return (task == TaskId::kSitChair || task == TaskId::kSitSofa) ? 100.0 : 10.0;
}

RewardBreakdown RewardTracking(TaskId task, const TrackState& state, const Eigen::VectorXd& action,
                               const Eigen::VectorXd& torques, const RewardConfig& config) {
  state.Validate();
  state.RequireTask(task);
  const Eigen::Index n = state.num_joints();
  RequireWidth(action, n, "action");
  RequireWidth(torques, n, "torques");

  RewardBreakdown r;
  const BodyState& cur = state.current;
  const BodyState& tgt = state.target;
  double sq = 0.0;
  for (int i = 0; i < state.num_bodies(); ++i) {
    sq += (cur.positions[i] - tgt.positions[i]).squaredNorm();
    r.ori += std::exp(-GeodesicDistance(cur.orientations[i], tgt.orientations[i]));
  }
  r.pos = std::exp(-5.0 * sq);
  const double dh = state.root_height - state.target_root_height;
  r.root = 5.0 * std::exp(-10.0 * L1(cur.positions[0] - tgt.positions[0])) -
           config.EffectiveHeightWeight(task) * dh * dh;
  r.human = r.pos + r.ori + r.root;

  if (config.variant == TrackerVariant::kHst) {
    r.action = -1e-3 * (action - state.last_action).squaredNorm();
    r.vel = -2e-3 * (cur.joint_velocities - tgt.joint_velocities).squaredNorm();
    r.acc = -5e-7 * (state.joint_accelerations - state.target_joint_accelerations).squaredNorm();
    r.energy = -std::abs(config.energy_coefficient) * torques.cwiseProduct(cur.joint_velocities).squaredNorm();
    r.reg = r.action + r.vel + r.acc + r.energy;
  }

  switch (task) {
    case TaskId::kTouchPoints: {
      const auto& w = *state.wrists;
      const auto& wt = *state.wrist_targets;
      r.wrist = std::exp(-10.0 * L1(w[0] - wt[0])) + std::exp(-10.0 * L1(w[1] - wt[1]));
      r.overall = r.human * r.wrist + r.reg;
      break;
    }
    case TaskId::kLiftBox: {
      const auto& w = *state.wrists;
      const auto& wt = *state.wrist_targets;
      const Vec3& o = state.object->position;
      const Vec3& ot = state.object_target->position;
      r.wrist_to_object = std::exp(-10.0 * L1((w[0] - o) - (wt[0] - ot))) +
                          std::exp(-10.0 * L1((w[1] - o) - (wt[1] - ot)));
      r.object = std::exp(-10.0 * L1(o - ot));
      r.overall = r.human * r.wrist_to_object * r.object + r.reg;
      break;
    }
    default:
      r.overall = r.human + r.reg;
  }
  return r;
}

bool EarlyTermination(const TrackState& state, double height_threshold) {
  const double dist = (state.current.positions.at(0) - state.target.positions.at(0)).norm();
  return dist > kTerminationDistance || state.root_height < height_threshold;
}

std::string RewardCsvHeader() {
  return "frame,r_pos,r_ori,r_root,r_wrist,r_w2o,r_object,r_action,r_vel,r_acc,r_energy,r_overall";
}

std::string RewardCsvRow(int frame, const RewardBreakdown& r) {
  std::string row = std::to_string(frame);
  for (double v : {r.pos, r.ori, r.root, r.wrist, r.wrist_to_object, r.object, r.action, r.vel, r.acc, r.energy,
                   r.overall}) {
    row += ',';
    row += Num(v);
  }
  return row;
}

}  // namespace mimic
