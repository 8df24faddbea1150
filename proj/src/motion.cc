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

#include <string>

#include "mimic/errors.h"
#include "mimic/motion.h"

namespace mimic {
namespace {

template <typename Channel>
void CheckChannelLength(const std::optional<Channel>& channel, const MotionSequence& motion,
                        const char* name) {
  if (channel && static_cast<int>(channel->size()) != motion.num_frames()) {
    throw SchemaError(std::string("channel '") + name + "' has " + std::to_string(channel->size()) +
                      " entries for " + std::to_string(motion.num_frames()) + " frames");
  }
}

void CheckVectorChannelWidth(const std::optional<std::vector<Eigen::VectorXd>>& channel,
                             const char* name) {
  if (!channel || channel->empty()) return;
  Eigen::Index width = channel->front().size();
  for (size_t i = 0; i < channel->size(); ++i) {
    if ((*channel)[i].size() != width) {
      throw SchemaError(std::string("channel '") + name + "' frame " + std::to_string(i) +
                        " has width " + std::to_string((*channel)[i].size()) + ", expected " +
                        std::to_string(width));
    }
  }
}

}  // namespace

void ValidateMotion(const MotionSequence& motion) {
  if (!(motion.fps > 0.0)) throw SchemaError("fps must be positive");
  if (motion.frames.empty()) throw SchemaError("motion has no frames");
  size_t n = motion.frames.front().joints.size();
  for (size_t i = 0; i < motion.frames.size(); ++i) {
    if (motion.frames[i].joints.size() != n) {
      throw SchemaError("frame " + std::to_string(i) + " has " +
                        std::to_string(motion.frames[i].joints.size()) + " joint values, expected " +
                        std::to_string(n));
    }
  }
  CheckChannelLength(motion.torques, motion, "torques");
  CheckChannelLength(motion.actions, motion, "actions");
  CheckChannelLength(motion.object, motion, "object");
  CheckVectorChannelWidth(motion.torques, "torques");
  CheckVectorChannelWidth(motion.actions, "actions");
}

void ValidateMotion(const MotionSequence& motion, const Skeleton& skeleton) {
  ValidateMotion(motion);
  if (!motion.skeleton_id.empty() && motion.skeleton_id != skeleton.name()) {
    throw SchemaError("motion skeleton '" + motion.skeleton_id + "' does not match skeleton '" +
                      skeleton.name() + "'");
  }
  for (size_t i = 0; i < motion.frames.size(); ++i) {
    try {
      CheckPose(skeleton, motion.frames[i]);
    } catch (const Error& e) {
      throw SchemaError("frame " + std::to_string(i) + ": " + e.what());
    }
  }
}

Eigen::MatrixXd JointAngleMatrix(const MotionSequence& motion, const Skeleton& skeleton) {
  Eigen::MatrixXd out(motion.num_frames(), skeleton.num_revolute());
  for (int f = 0; f < motion.num_frames(); ++f) {
    out.row(f) = RevoluteAngles(skeleton, motion.frames[f]).transpose();
  }
  return out;
}

}  // namespace mimic
