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

#ifndef MIMIC_TASK_H_
#define MIMIC_TASK_H_

#include <array>
#include <string>
#include <string_view>

namespace mimic {

// Sit on chair, sit on sofa, lie on bed, lie on sofa, touch points, lift box.
enum class TaskId { kSitChair, kSitSofa, kLieBed, kLieSofa, kTouchPoints, kLiftBox };

inline constexpr std::array<TaskId, 6> kAllTasks = {TaskId::kSitChair,  TaskId::kSitSofa,
                                                    TaskId::kLieBed,    TaskId::kLieSofa,
                                                    TaskId::kTouchPoints, TaskId::kLiftBox};

// Short codes: SC, SS, LB, LS, T, L.
std::string_view TaskCode(TaskId task);
// Throws LookupError for unknown codes.
TaskId ParseTaskCode(std::string_view code);

inline bool IsHandTask(TaskId task) {
  return task == TaskId::kTouchPoints || task == TaskId::kLiftBox;
}

// Episode length limit in seconds.
inline double TaskTimeLimit(TaskId task) { return IsHandTask(task) ? 10.0 : 20.0; }

}  // namespace mimic

#endif  // MIMIC_TASK_H_
