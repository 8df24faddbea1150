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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "mimic/camera.h"
#include "mimic/elevation.h"
#include "mimic/mapping.h"
#include "mimic/metrics.h"
#include "mimic/observation.h"
#include "mimic/pipeline.h"
#include "mimic/retarget.h"
#include "mimic/rewards.h"
#include "mimic/track_state.h"
#include "../pipeline_fixture.h"
#include "../retarget_oracles.h"
#include "../test_util.h"

namespace mimic {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects named boolean checks and remembers the first few failures.
class Checks {
 public:
  void Expect(bool cond, const std::string& name) {
    ++total_;
    if (cond) return;
    ++failed_;
    if (failed_ <= 5) failures_ += (failures_.empty() ? "" : "; ") + name;
  }
  int total() const { return total_; }
  int failed() const { return failed_; }
  Outcome Finish(const std::string& extra = "") const {
    std::ostringstream s;
    s << (total_ - failed_) << "/" << total_ << " checks";
    if (!extra.empty()) s << ", " << extra;
    if (failed_) s << "; failed: " << failures_;
    return {failed_ == 0, s.str()};
  }

 private:
  int total_ = 0;
  int failed_ = 0;
  std::string failures_;
};

// ---------------------------------------------------------------------------
// 1. Metric thresholds

// Pelvis root with rigidly attached ankles and wrists. Offsets are dyadic so
// the landmark heights below are exact.
Skeleton Probe() {
  std::vector<Joint> j(5);
  j[0].name = "pelvis";
  j[0].kind = JointKind::kRoot;
  const char* names[] = {"left_ankle", "right_ankle", "left_wrist", "right_wrist"};
  const Vec3 offsets[] = {{0, 0.125, -0.0625}, {0, -0.125, -0.0625}, {0.25, 0.25, 0.25}, {0.25, -0.25, 0.25}};
  for (int i = 0; i < 4; ++i) {
    j[i + 1].name = names[i];
    j[i + 1].parent = 0;
    j[i + 1].kind = JointKind::kSpherical;
    j[i + 1].offset = offsets[i];
  }
  return Skeleton("probe", j);
}

MotionSequence Track(const std::vector<Vec3>& pelvis) {
  static const Skeleton probe = Probe();
  MotionSequence m;
  m.fps = 50.0;
  m.skeleton_id = "probe";
  for (const Vec3& p : pelvis) {
    Pose pose = Pose::Zero(probe);
    pose.root_position = p;
    m.frames.push_back(pose);
  }
  return m;
}

std::vector<Vec3> Hold(const Vec3& p, int frames) { return std::vector<Vec3>(frames, p); }

std::vector<Vec3> Concat(std::vector<Vec3> a, const std::vector<Vec3>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

bool Passes(const TaskScene& scene, const MotionSequence& m) {
  static const Skeleton probe = Probe();
  return KinematicSuccess(scene, m, probe).pass;
}

TaskScene Scene(TaskId task, double seat) {
  TaskScene s = testing::SquareScene(task, 1.0);
  s.seat_height = seat;
  return s;
}

double Below(double x) { return std::nextafter(x, -1e300); }
double Above(double x) { return std::nextafter(x, 1e300); }

Outcome MetricThresholds() {
  Checks c;
  const double h = 0.5;
  const Vec3 far(0, 0, 3.0);

  // Sitting band [H, H + 0.27].
  TaskScene sc = Scene(TaskId::kSitChair, h);
  const double sit_top = h + kSitHeightBand;
  c.Expect(kSitHeightBand == 0.27, "sit band is 0.27");
  c.Expect(Passes(sc, Track(Hold({0, 0, h}, 15))), "SC pelvis at H passes");
  c.Expect(!Passes(sc, Track(Hold({0, 0, Below(h)}, 15))), "SC pelvis below H fails");
  c.Expect(Passes(sc, Track(Hold({0, 0, sit_top}, 15))), "SC pelvis at H+0.27 passes");
  c.Expect(!Passes(sc, Track(Hold({0, 0, Above(sit_top)}, 15))), "SC pelvis above H+0.27 fails");
  TaskScene ss = Scene(TaskId::kSitSofa, h);
  c.Expect(Passes(ss, Track(Hold({0, 0, sit_top}, 15))), "SS pelvis at H+0.27 passes");
  c.Expect(!Passes(ss, Track(Hold({0, 0, Above(sit_top)}, 15))), "SS pelvis above H+0.27 fails");
  c.Expect(!Passes(sc, Track(Hold({0, 0, h + 0.30}, 50))), "SC pelvis at H+0.30 fails");

  // 0.3 s hold at 50 fps is 15 frames.
  c.Expect(kHoldSeconds == 0.3, "hold is 0.3 s");
  const Vec3 seated(0, 0, h + 0.1);
  c.Expect(Passes(sc, Track(Concat(Concat(Hold(far, 5), Hold(seated, 15)), Hold(far, 5)))), "15-frame hold passes");
  c.Expect(!Passes(sc, Track(Concat(Concat(Hold(far, 5), Hold(seated, 14)), Hold(far, 5)))), "14-frame hold fails");

  // Lying on a bed: pelvis and both ankles within [H, H + 0.4]. Ankles hang
  // 0.0625 below the pelvis.
  TaskScene lb = Scene(TaskId::kLieBed, h);
  const double lie_top = h + kLieHeightBand;
  c.Expect(kLieHeightBand == 0.4, "lie band is 0.4");
  c.Expect(Passes(lb, Track(Hold({0, 0, lie_top}, 15))), "LB pelvis at H+0.4 passes");
  c.Expect(!Passes(lb, Track(Hold({0, 0, Above(lie_top)}, 15))), "LB pelvis above H+0.4 fails");
  c.Expect(Passes(lb, Track(Hold({0, 0, h + 0.0625}, 15))), "LB ankles at H pass");
  c.Expect(!Passes(lb, Track(Hold({0, 0, Below(h + 0.0625)}, 15))), "LB ankles below H fail");

  // Lying on a sofa: ankles at or above half the sofa height.
  TaskScene ls = Scene(TaskId::kLieSofa, 0.25);
  ls.sofa_height = 1.0;
  c.Expect(Passes(ls, Track(Hold({0, 0, 0.5625}, 15))), "LS ankles at half sofa pass");
  c.Expect(!Passes(ls, Track(Hold({0, 0, Below(0.5625)}, 15))), "LS ankles below half sofa fail");
  c.Expect(Passes(ls, Track(Hold({0, 0, 0.25 + kLieHeightBand}, 15))), "LS pelvis at H+0.4 passes");
  c.Expect(!Passes(ls, Track(Hold({0, 0, Above(0.25 + kLieHeightBand)}, 15))), "LS pelvis above H+0.4 fails");

  // Touching: wrists within 0.1 m for 1 s. With the pelvis at z = -0.25 the
  // wrists sit at z = 0, so a target at z = d is exactly d away.
  c.Expect(kWristTolerance == 0.1 && kTouchHoldSeconds == 1.0, "touch constants");
  const Vec3 low(0, 0, -0.25);
  auto touch = [&](double dz) {
    TaskScene s = testing::SquareScene(TaskId::kTouchPoints, 1.0);
    s.targets = std::array<Vec3, 2>{Vec3(0.25, 0.25, dz), Vec3(0.25, -0.25, dz)};
    return s;
  };
  c.Expect(Passes(touch(0.1), Track(Hold(low, 50))), "T wrists 0.1 m away pass");
  c.Expect(!Passes(touch(Above(0.1)), Track(Hold(low, 50))), "T wrists beyond 0.1 m fail");
  const Vec3 away(0, 0, 1.0);
  c.Expect(Passes(touch(0.0), Track(Concat(Concat(Hold(away, 5), Hold(low, 50)), Hold(away, 5)))),
           "T 50-frame hold passes");
  c.Expect(!Passes(touch(0.0), Track(Concat(Concat(Hold(away, 5), Hold(low, 49)), Hold(away, 5)))),
           "T 49-frame hold fails");

  // Lifting: box up at least 0.2 m and both wrists within 0.1 m of its
  // surface in the last frame. The wrists are 0.25 from the box center along
  // y; a half-extent of 0.15 leaves exactly 0.1.
  c.Expect(kDefaultLiftHeight == 0.2, "lift height is 0.2");
  auto lift = [&](double top, double half_y) {
    TaskScene s = testing::SquareScene(TaskId::kLiftBox, 1.0);
    s.box = OrientedBox{RigidTransform{}, Vec3(0.1, half_y, 0.1)};
    MotionSequence m = Track(Hold({0, 0, top - 0.25}, 10));
    m.object.emplace();
    for (int f = 0; f < 10; ++f) m.object->push_back({Vec3(0.25, 0, f == 9 ? top : 0.0), Rotation()});
    return std::make_pair(s, m);
  };
  {
    auto [s, m] = lift(0.2, 0.15);
    c.Expect(Passes(s, m), "L lift of 0.2 m with wrists 0.1 m away passes");
    auto [s2, m2] = lift(Below(0.2), 0.15);
    c.Expect(!Passes(s2, m2), "L lift below 0.2 m fails");
    auto [s3, m3] = lift(0.2, Below(0.15));
    c.Expect(!Passes(s3, m3), "L wrists beyond 0.1 m of the box fail");
  }

  // Energy bound: strict <, swept over {1e6, 2e6, 4e6, 8e6}.
  c.Expect(kEnergyThresholds == std::array<double, 4>{1e6, 2e6, 4e6, 8e6}, "energy threshold set");
  for (double t : kEnergyThresholds) {
    std::vector<double> at = {0.0, t};
    std::vector<double> under = {0.0, Below(t)};
    c.Expect(!PhysicalSuccess(at, t), "energy equal to bound fails");
    c.Expect(PhysicalSuccess(under, t), "energy just under bound passes");
  }
  {
    std::vector<double> mid = {3e6};
    std::array<bool, 4> got{};
    for (int i = 0; i < 4; ++i) got[i] = PhysicalSuccess(mid, kEnergyThresholds[i]);
    c.Expect(got == std::array<bool, 4>{false, false, true, true}, "3e6 passes only the two upper bounds");
  }

  // Time limits: 20 s for sitting (frames 0..1000 at 50 fps), 10 s for touch.
  c.Expect(Passes(sc, Track(Concat(Hold(far, 986), Hold(seated, 30)))), "SC window ending at 20 s passes");
  c.Expect(!Passes(sc, Track(Concat(Hold(far, 987), Hold(seated, 30)))), "SC window past 20 s fails");
  c.Expect(Passes(touch(0.0), Track(Concat(Hold(away, 451), Hold(low, 60)))), "T window ending at 10 s passes");
  c.Expect(!Passes(touch(0.0), Track(Concat(Hold(away, 452), Hold(low, 60)))), "T window past 10 s fails");

  return c.Finish();
}

// ---------------------------------------------------------------------------
// 2. Forward kinematics against homogeneous matrices

Outcome ForwardKinematicsOracle() {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> depth(1, 8);
  std::uniform_int_distribution<int> extra(0, 6);
  std::uniform_real_distribution<double> share(0.0, 1.0);
  double max_pos = 0.0;
  double max_rot = 0.0;
  int deepest = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = depth(rng);
    deepest = std::max(deepest, d);
    Skeleton s = testing::RandomSkeleton(rng, d, extra(rng), share(rng));
    Pose pose = testing::RandomPose(s, rng);
    std::vector<RigidTransform> fk = ForwardKinematics(s, pose);
    std::vector<Eigen::Matrix4d> oracle = testing::OracleForwardKinematics(s, pose);
    for (int i = 0; i < s.num_joints(); ++i) {
      max_pos = std::max(max_pos, (fk[i].position - oracle[i].topRightCorner<3, 1>()).norm());
      max_rot = std::max(max_rot, (fk[i].orientation.matrix() - oracle[i].topLeftCorner<3, 3>()).cwiseAbs().maxCoeff());
    }
  }
  std::ostringstream s;
  s << "1000 chains up to depth " << deepest << ", max position error " << max_pos << ", max rotation error "
    << max_rot;
  return {max_pos <= 1e-9 && max_rot <= 1e-9, s.str()};
}

// ---------------------------------------------------------------------------
// 3. Gradient check

Outcome GradientCheck() {
  std::mt19937 rng(3030);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    testing::GradientInstance inst = testing::RandomGradientInstance(rng);
    RetargetObjective objective(inst.humanoid, inst.mapping, inst.targets, inst.config);
    RetargetGradient analytic;
    objective.EvaluateWithGradient(inst.state, &analytic);
    RetargetGradient numeric = testing::FiniteDifferenceGradient(objective, inst.state, 1e-5);
    worst = std::max(worst, testing::GradientRelativeError(analytic, numeric));
  }
  std::ostringstream s;
  s << "50 instances, max relative error " << worst;
  return {worst < 1e-4, s.str()};
}

// ---------------------------------------------------------------------------
// 4. Retarget self-consistency

Outcome RetargetSelfConsistency() {
  const Skeleton h1 = BuiltinSkeleton("h1");
  const JointMapping identity = IdentityMapping(h1);
  std::mt19937 rng(4040);
  std::uniform_int_distribution<int> frames(10, 50);
  std::normal_distribution<double> noise(0.0, 0.05);
  Checks c;
  double worst_loss = 0.0;
  double worst_error = 0.0;
  int worst_epoch = 0;
  int perturbed_ok = 0;
  for (int i = 0; i < 20; ++i) {
    MotionSequence truth = testing::LinearMotion(h1, frames(rng), rng);
    RetargetConfig config;
    RetargetResult r = RetargetOptimize(truth, h1, h1, identity, config);
    worst_loss = std::max(worst_loss, r.loss.total);
    worst_error = std::max(worst_error, r.mean_position_error);
    worst_epoch = std::max(worst_epoch, r.best_epoch);
    c.Expect(r.loss.total < 1e-4 && r.mean_position_error < 0.01 && r.best_epoch <= 3000,
             "reference " + std::to_string(i));

    // Diagnostic only: the same problem from a perturbed start.
    MotionSequence start = truth;
    for (Pose& p : start.frames) {
      Eigen::VectorXd a = RevoluteAngles(h1, p);
      for (Eigen::Index k = 0; k < a.size(); ++k) a[k] += noise(rng);
      SetRevoluteAngles(h1, a, p);
      p.root_position += Vec3(noise(rng), noise(rng), noise(rng));
    }
    RetargetResult rp = RetargetOptimize(truth, h1, h1, identity, config, &start);
    if (rp.loss.total < 1e-4 && rp.mean_position_error < 0.01) ++perturbed_ok;
  }
  std::ostringstream s;
  s << "max loss " << worst_loss << ", max mean position error " << worst_error << " m, latest best epoch "
    << worst_epoch << "; from perturbed starts " << perturbed_ok << "/20 also reach both bounds";
  return c.Finish(s.str());
}

// ---------------------------------------------------------------------------
// 5. Shape alignment

bool SameBits(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

bool SameMotion(const MotionSequence& a, const MotionSequence& b, const Skeleton& s) {
  if (a.num_frames() != b.num_frames()) return false;
  for (int f = 0; f < a.num_frames(); ++f) {
    Eigen::VectorXd x = RevoluteAngles(s, a.frames[f]);
    Eigen::VectorXd y = RevoluteAngles(s, b.frames[f]);
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      if (!SameBits(x[k], y[k])) return false;
    }
    const Quat& p = a.frames[f].root_orientation.quaternion();
    const Quat& q = b.frames[f].root_orientation.quaternion();
    if (std::memcmp(p.coeffs().data(), q.coeffs().data(), 4 * sizeof(double)) != 0) return false;
  }
  return true;
}

Outcome ShapeAlignment() {
  Checks c;
  const Skeleton h1 = BuiltinSkeleton("h1");
  // Humanoid rest positions from the matrix oracle.
  std::vector<Eigen::Matrix4d> rest = testing::OracleForwardKinematics(h1, Pose::Zero(h1));
  auto rest_at = [&](int i) -> Vec3 { return rest[i].topRightCorner<3, 1>(); };
  double worst = 0.0;
  int bones = 0;
  std::mt19937 rng(5050);
  for (const std::string& preset : MappingPresetNames()) {
    JointMapping mapping = LoadMapping(preset);
    Skeleton human = BuiltinSkeleton(mapping.human_skeleton);
    Skeleton aligned = AlignSkeletonShape(human, h1, mapping);

    // Bone lengths: every human joint whose own and parent joints are mapped.
    for (const MappingGroup& g : mapping.Groups()) {
      if (g.human == 0) continue;
      const int parent = human.joint(g.human).parent;
      auto pg = std::find_if(mapping.pairs.begin(), mapping.pairs.end(),
                             [&](const JointPair& p) { return p.human == parent; });
      if (pg == mapping.pairs.end()) continue;
      int last = -1;
      for (const JointPair& p : mapping.pairs) {
        if (p.human == parent) last = std::max(last, p.humanoid);
      }
      const double target = (rest_at(g.humanoid.front()) - rest_at(last)).norm();
      const double err = std::abs(aligned.joint(g.human).offset.norm() - target);
      worst = std::max(worst, err);
      ++bones;
      c.Expect(err <= 1e-9, preset + " bone " + human.joint(g.human).name);
    }
    // Directions, kinds and axes are untouched.
    for (int j = 0; j < human.num_joints(); ++j) {
      const Joint& a = human.joint(j);
      const Joint& b = aligned.joint(j);
      bool same = a.kind == b.kind && a.parent == b.parent && a.axis == b.axis;
      if (a.offset.norm() > 0) same = same && (a.offset.normalized() - b.offset.normalized()).norm() < 1e-12;
      c.Expect(same, preset + " joint " + a.name + " keeps its direction");
    }

    // Angles: a random motion yields bit-identical copy-rotation output and
    // global orientations on both skeletons.
    MotionSequence motion;
    motion.skeleton_id = human.name();
    for (int f = 0; f < 8; ++f) motion.frames.push_back(testing::RandomPose(human, rng));
    c.Expect(SameMotion(CopyRotation(motion, human, h1, mapping), CopyRotation(motion, aligned, h1, mapping), h1),
             preset + " copy-rotation angles");
    bool orientations = true;
    for (const Pose& p : motion.frames) {
      auto a = ForwardKinematics(human, p);
      auto b = ForwardKinematics(aligned, p);
      for (size_t i = 0; i < a.size(); ++i) {
        orientations = orientations && std::memcmp(a[i].orientation.quaternion().coeffs().data(),
                                                   b[i].orientation.quaternion().coeffs().data(),
                                                   4 * sizeof(double)) == 0;
      }
    }
    c.Expect(orientations, preset + " global orientations");

    // Idempotence.
    Skeleton twice = AlignSkeletonShape(aligned, h1, mapping);
    bool idempotent = true;
    for (int j = 0; j < aligned.num_joints(); ++j) {
      idempotent = idempotent && std::memcmp(aligned.joint(j).offset.data(), twice.joint(j).offset.data(),
                                             3 * sizeof(double)) == 0;
    }
    c.Expect(idempotent, preset + " idempotent");
  }
  std::ostringstream s;
  s << bones << " mapped bones, max length error " << worst;
  return c.Finish(s.str());
}

// ---------------------------------------------------------------------------
// 6. Elevation rasterization

// Tests each point against every row and column interval directly. The two
// axes are independent, so a row scan and a column scan cover all cells.
std::vector<double> BruteForceElevation(const std::vector<Vec3>& points, double s) {
  std::vector<double> cells(128 * 128, std::nan(""));
  for (const Vec3& p : points) {
    if (!std::isfinite(p.x()) || !std::isfinite(p.y()) || !std::isfinite(p.z())) continue;
    int row = -1;
    int col = -1;
    for (int r = 0; r < 128; ++r) {
      if ((r - 64) * s <= -p.x() && -p.x() < (r - 63) * s) row = r;
    }
    for (int k = 0; k < 128; ++k) {
      if ((k - 64) * s <= p.y() && p.y() < (k - 63) * s) col = k;
    }
    if (row < 0 || col < 0) continue;
    double& h = cells[row * 128 + col];
    if (std::isnan(h) || p.z() > h) h = p.z();
  }
  return cells;
}

bool SameCells(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::isnan(a[i]) != std::isnan(b[i])) return false;
    if (!std::isnan(a[i]) && !SameBits(a[i], b[i])) return false;
  }
  return true;
}

Outcome ElevationRasterization() {
  Checks c;
  std::mt19937 rng(6060);
  std::uniform_int_distribution<int> count(1, 100000);
  std::normal_distribution<double> z(0.3, 0.6);
  size_t total = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double s = trial % 3 == 0 ? kDefaultCellSize : (trial % 3 == 1 ? kTargetCellSize : 0.03);
    std::uniform_real_distribution<double> xy(-70 * s, 70 * s);
    const int n = trial < 2 ? 100000 : count(rng);
    std::vector<Vec3> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
      if (i % 10 == 0) {
        // On a cell boundary.
        const int k = static_cast<int>(xy(rng) / s);
        pts.push_back({k * s, -k * s, z(rng)});
      } else {
        pts.push_back({xy(rng), xy(rng), z(rng)});
      }
    }
    total += pts.size();
    c.Expect(SameCells(RasterizeElevation(pts, s).cells(), BruteForceElevation(pts, s)),
             "cloud " + std::to_string(trial));
  }

  // Depth filter: nothing past 6 m survives; exactly 6 m does.
  const Camera cam = PelvisCameraRig().cameras[0];
  DepthImage img{cam.id, cam.width, cam.height, std::vector<float>(cam.width * cam.height, 7.0f)};
  c.Expect(kMaxPointDepth == 6.0, "depth cutoff is 6 m");
  c.Expect(DepthToPoints(img, cam).empty(), "all-7 m image gives no points");
  std::fill(img.depth.begin(), img.depth.end(), 6.0f);
  c.Expect(DepthToPoints(img, cam).size() == img.depth.size(), "6 m pixels are kept");
  std::fill(img.depth.begin(), img.depth.end(), std::nextafter(6.0f, 7.0f));
  c.Expect(DepthToPoints(img, cam).empty(), "pixels just past 6 m are dropped");

  // Max rule: the highest point in a cell wins regardless of order.
  std::vector<Vec3> stack = {{0.01, 0.01, 0.3}, {0.02, 0.03, 0.9}, {0.015, 0.005, -0.2}};
  for (int perm = 0; perm < 3; ++perm) {
    std::rotate(stack.begin(), stack.begin() + 1, stack.end());
    ElevationMap m = RasterizeElevation(stack, kDefaultCellSize);
    c.Expect(m.populated_cells() == 1 && m.at(63, 64) == 0.9, "max rule");
  }
  std::ostringstream s;
  s << total << " points over 100 clouds";
  return c.Finish(s.str());
}

// ---------------------------------------------------------------------------
// 7. Reward golden values

TrackState PerfectState(TaskId task, std::mt19937& rng) {
  TrackState s = TrackState::Zero(19, 20);
  for (int i = 0; i < 20; ++i) {
    s.current.positions[i] = i == 0 ? Vec3::Zero() : testing::RandomUnit(rng);
    s.current.orientations[i] = testing::RandomRotation(rng);
  }
  s.target = s.current;
  s.root_height = s.target_root_height = 0.95;
  if (IsHandTask(task)) {
    s.wrists = std::array<Vec3, 2>{Vec3(0.3, 0.2, 0.1), Vec3(0.3, -0.2, 0.1)};
    s.wrist_targets = s.wrists;
  }
  if (task == TaskId::kLiftBox) {
    s.object = ObjectState{Vec3(0.4, 0, 0), testing::RandomRotation(rng), Vec3::Zero(), Vec3::Zero()};
    s.object_target = s.object;
  }
  return s;
}

Outcome RewardGoldenValues() {
  Checks c;
  std::mt19937 rng(7070);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(19);
  RewardBreakdown touch = RewardTracking(TaskId::kTouchPoints, PerfectState(TaskId::kTouchPoints, rng), zero, zero);
  RewardBreakdown lift = RewardTracking(TaskId::kLiftBox, PerfectState(TaskId::kLiftBox, rng), zero, zero);
  c.Expect(lift.pos == 1.0, "r_pos = 1");
  c.Expect(lift.ori == 20.0, "r_ori = 20");
  c.Expect(lift.root == 5.0, "r_root = 5");
  c.Expect(touch.wrist == 2.0, "r_wrist = 2");
  c.Expect(lift.wrist_to_object == 2.0, "r_w2o = 2");
  c.Expect(lift.object == 1.0, "r_object = 1");
  c.Expect(touch.overall == 52.0 && lift.overall == 52.0, "perfect overall = 52");
  for (TaskId task : kAllTasks) {
    if (IsHandTask(task)) continue;
    RewardBreakdown r = RewardTracking(task, PerfectState(task, rng), zero, zero);
    c.Expect(r.pos == 1.0 && r.ori == 20.0 && r.root == 5.0 && r.overall == 26.0,
             std::string(TaskCode(task)) + " perfect overall = 26");
  }

  // Each human and task term decreases as a random perturbation grows.
  const double scales[] = {0.0, 0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 0.8, 1.2};
  for (int trial = 0; trial < 20; ++trial) {
    const TrackState base = PerfectState(TaskId::kLiftBox, rng);
    std::vector<Vec3> dp(20);
    std::vector<Vec3> dr(20);
    for (int i = 0; i < 20; ++i) {
      dp[i] = testing::RandomUnit(rng) * 0.3;
      dr[i] = testing::RandomUnit(rng) * 0.25;
    }
    const Vec3 dw0 = testing::RandomUnit(rng), dw1 = testing::RandomUnit(rng), dobj = testing::RandomUnit(rng);
    RewardBreakdown prev;
    for (int k = 0; k < 10; ++k) {
      const double e = scales[k];
      TrackState s = base;
      for (int i = 0; i < 20; ++i) {
        s.current.positions[i] += e * dp[i];
        s.current.orientations[i] = Rotation::FromRotationVector(e * dr[i]) * s.current.orientations[i];
      }
      (*s.wrists)[0] += e * dw0;
      (*s.wrists)[1] += e * dw1;
      s.object->position += e * dobj;
      RewardBreakdown r = RewardTracking(TaskId::kLiftBox, s, zero, zero);
      if (k > 0) {
        c.Expect(r.pos < prev.pos && r.ori < prev.ori && r.root < prev.root && r.object < prev.object &&
                     r.wrist_to_object <= prev.wrist_to_object && r.overall < prev.overall,
                 "monotone at scale " + std::to_string(e));
      }
      prev = r;
    }
  }
  return c.Finish("10 perturbation scales");
}

// ---------------------------------------------------------------------------
// 8. Observation layout

Outcome ObservationLayoutCheck() {
  Checks c;
  const int hst = ObservationSize(TrackerVariant::kHst, TaskId::kSitChair, 19, 20);
  const int phc = ObservationSize(TrackerVariant::kPhc, TaskId::kSitChair, 19, 20);
  // Per side: 19 + 19 + 20 * (3 + 3 + 3 + 3) = 278; two sides, then 19 + 3.
  const int expected_hst = 2 * (19 + 19 + 20 * 12) + 19 + 3;
  c.Expect(hst == 578 && hst == expected_hst, "HST length 578");
  c.Expect(phc == 698 && phc == expected_hst + 2 * 20 * 3, "PHC length 698");
  for (TrackerVariant v : {TrackerVariant::kHst, TrackerVariant::kPhc}) {
    const int base = ObservationSize(v, TaskId::kSitChair, 19, 20);
    c.Expect(ObservationSize(v, TaskId::kLiftBox, 19, 20) == base + 24, "task L adds 24");
    c.Expect(ObservationSize(v, TaskId::kTouchPoints, 19, 20) == base + 6, "task T adds 6");
  }

  // Golden slots: every entry holds a distinct marker.
  TrackState s = TrackState::Zero(19, 20);
  for (int k = 0; k < 19; ++k) {
    s.current.joint_angles[k] = 0.001 * (k + 1);
    s.target.joint_angles[k] = -0.001 * (k + 1);
    s.last_action[k] = 0.5 + k;
  }
  s.current.positions[3] = Vec3(1, 2, 3);
  s.target.positions[3] = Vec3(4, 5, 6);
  s.current.orientations[2] = Rotation::FromRotationVector(Vec3(0.1, 0.2, 0.3));
  s.object = ObjectState{Vec3(7, 8, 9), Rotation(), Vec3(0.5, 0, 0), Vec3(0, 0, 0.25)};
  s.object_target = ObjectState{Vec3(-7, -8, -9), Rotation(), Vec3::Zero(), Vec3::Zero()};
  s.wrists = std::array<Vec3, 2>{Vec3(0.1, 0.2, 0.3), Vec3(0.4, 0.5, 0.6)};
  s.wrist_targets = s.wrists;
  Eigen::VectorXd o = BuildObservation(TrackerVariant::kPhc, TaskId::kLiftBox, s);
  c.Expect(o.size() == 698 + 24, "PHC + L length");
  const std::vector<std::tuple<const char*, int, int>> golden = {
      {"joint_angles", 0, 19},          {"joint_velocities", 19, 19},
      {"positions", 38, 60},            {"orientations", 98, 60},
      {"linear_velocities", 158, 60},   {"angular_velocities", 218, 60},
      {"target_joint_angles", 278, 19}, {"target_joint_velocities", 297, 19},
      {"target_positions", 316, 60},    {"target_orientations", 376, 60},
      {"target_linear_velocities", 436, 60}, {"target_angular_velocities", 496, 60},
      {"last_action", 556, 19},         {"gravity", 575, 3},
      {"position_error", 578, 60},      {"orientation_error", 638, 60},
      {"object", 698, 12},              {"object_target", 710, 12},
  };
  const auto slots = ObservationLayout(TrackerVariant::kPhc, TaskId::kLiftBox, 19, 20);
  bool layout = slots.size() == golden.size();
  for (size_t i = 0; layout && i < golden.size(); ++i) {
    layout = slots[i].name == std::get<0>(golden[i]) && slots[i].offset == std::get<1>(golden[i]) &&
             slots[i].size == std::get<2>(golden[i]);
  }
  c.Expect(layout, "PHC + L slot table");
  const Vec3 rv = s.current.orientations[2].rotation_vector();
  c.Expect(o[0] == 0.001 && o[18] == 0.019, "joint angles at 0");
  c.Expect(o[278] == -0.001, "target joint angles at 278");
  c.Expect(o[38 + 9] == 1 && o[38 + 11] == 3, "body 3 position at 47");
  c.Expect(o[316 + 10] == 5, "target body 3 position at 326");
  c.Expect(Vec3(o.segment<3>(98 + 6)) == rv, "body 2 orientation at 104");
  c.Expect(o[556] == 0.5 && o[574] == 18.5, "last action at 556");
  c.Expect(o[575] == 0 && o[577] == -1, "gravity at 575");
  c.Expect(o[578 + 9] == -3 && o[578 + 11] == -3, "body 3 position error at 587");
  c.Expect(Vec3(o.segment<3>(638 + 6)) == rv, "body 2 orientation error at 644");
  c.Expect(o[698] == 7 && o[698 + 6] == 0.5 && o[698 + 11] == 0.25, "object state at 698");
  c.Expect(o[710] == -7 && o[712] == -9, "object target at 710");
  return c.Finish("lengths 578 / 698 / +24");
}

// ---------------------------------------------------------------------------
// 9. End-to-end determinism

std::string DirectoryFingerprint(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::string all;
  for (const fs::path& f : files) all += fs::relative(f, dir).string() + "\n" + testing::ReadText(f) + "\n";
  return all;
}

Outcome EndToEndDeterminism() {
  const fs::path root = testing::TempDir("acceptance_e2e");
  testing::WriteHumanCorpus(root / "corpus", 5, 40, 9090);
  testing::WriteSitScene(root / "scene.json", 0.8);
  std::vector<std::string> prints;
  std::vector<int> codes;
  for (const char* run : {"run_a", "run_b"}) {
    PipelineConfig r;
    r.input = (root / "corpus").string();
    r.output = (root / run / "retarget").string();
    r.algorithm = RetargetAlgorithm::kAlignOptimize;
    r.seed = 7;
    std::ostringstream log;
    codes.push_back(RunRetarget(r, log));
    PipelineConfig e;
    e.input = r.output;
    e.output = (root / run / "eval").string();
    e.scene = (root / "scene.json").string();
    e.task = TaskId::kSitChair;
    e.seed = 7;
    codes.push_back(RunEval(e, log));
    prints.push_back(DirectoryFingerprint(root / run));
  }
  const bool identical = prints[0] == prints[1] && !prints[0].empty();
  std::ostringstream s;
  s << "retarget exit " << codes[0] << ", eval exit " << codes[1] << ", outputs "
    << (identical ? "byte-identical" : "differ") << " (" << prints[0].size() << " bytes)";
  const bool ran = codes[0] == kExitOk && codes[2] == kExitOk && codes[1] == codes[3] && codes[1] != kExitConfigError;
  return {identical && ran, s.str()};
}

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace mimic

int main() {
  using namespace mimic;
  const std::vector<Criterion> criteria = {
      {1, "metric threshold suite", 1.0, MetricThresholds},
      {2, "FK oracle equivalence", 5.0, ForwardKinematicsOracle},
      {3, "gradient check", 30.0, GradientCheck},
      {4, "retarget self-consistency", 600.0, RetargetSelfConsistency},
      {5, "shape alignment", 0.0, ShapeAlignment},
      {6, "elevation rasterization", 10.0, ElevationRasterization},
      {7, "reward golden values", 0.0, RewardGoldenValues},
      {8, "observation layout", 0.0, ObservationLayoutCheck},
      {9, "end-to-end determinism", 120.0, EndToEndDeterminism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.budget_s <= 0.0 || secs < c.budget_s;
    const bool pass = out.ok && in_time;
    if (!pass) ++failed;
    std::ostringstream time;
    time.precision(3);
    time << secs << " s";
    if (c.budget_s > 0.0) time << " (limit " << c.budget_s << " s)";
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << " " << c.name << ": " << out.detail << "; "
              << time.str() << (in_time ? "" : " over budget") << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
