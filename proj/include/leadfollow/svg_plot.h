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

#ifndef LEADFOLLOW_SVG_PLOT_H_
#define LEADFOLLOW_SVG_PLOT_H_

#include <string>
#include <vector>

#include "leadfollow/motion.h"
#include "leadfollow/skeleton.h"

namespace leadfollow {

// Overhead (x, z) view: target path(s) dashed, leader root path, follower root
// path, each in its own <g> layer (ids "target", "leader", "follower").
std::string overhead_svg(const std::vector<Trajectory>& targets, const TwoAgentMotion& x,
                         const SkeletonSpec& skeleton);

}  // namespace leadfollow

#endif  // LEADFOLLOW_SVG_PLOT_H_
