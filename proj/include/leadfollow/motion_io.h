// Copyright 2026 The Leadfollow Authors
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

#ifndef LEADFOLLOW_MOTION_IO_H_
#define LEADFOLLOW_MOTION_IO_H_

#include <filesystem>
#include <string>

#include "leadfollow/motion.h"

namespace leadfollow {

inline constexpr int kMotionFormatVersion = 1;

// JSON document {version, fps, joint_count, frames, agents: [{frames}]} with
// each agent's frames as L x J x 3 nested arrays. Doubles are written with
// round-trip precision.
std::string motion_to_json(const TwoAgentMotion& x);
TwoAgentMotion motion_from_json(const std::string& text);

void save_motion(const TwoAgentMotion& x, const std::filesystem::path& path);
TwoAgentMotion load_motion(const std::filesystem::path& path);

// Header `fps=<f> frames=<L>` followed by L lines `x z` or `x y z`.
std::string trajectory_to_text(const Trajectory& trajectory, double fps = 30.0);
Trajectory trajectory_from_text(const std::string& text, double* fps = nullptr);

void save_trajectory(const Trajectory& trajectory, const std::filesystem::path& path,
                     double fps = 30.0);
Trajectory load_trajectory(const std::filesystem::path& path, double* fps = nullptr);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace leadfollow

#endif  // LEADFOLLOW_MOTION_IO_H_
