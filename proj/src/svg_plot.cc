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

#include "leadfollow/svg_plot.h"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <string>

#include "leadfollow/skeleton.h"

namespace leadfollow {
namespace {

constexpr double kCanvas = 600.0;
constexpr double kMargin = 30.0;

struct View {
  double min_x = std::numeric_limits<double>::infinity();
  double min_z = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double max_z = -std::numeric_limits<double>::infinity();

  void include(const Eigen::Vector2d& p) {
    min_x = std::min(min_x, p.x());
    max_x = std::max(max_x, p.x());
    min_z = std::min(min_z, p.y());
    max_z = std::max(max_z, p.y());
  }

  double scale() const {
    const double extent = std::max({max_x - min_x, max_z - min_z, 1e-6});
    return (kCanvas - 2.0 * kMargin) / extent;
  }

  Eigen::Vector2d map(const Eigen::Vector2d& p) const {
    // Screen y grows downward, so flip z.
    return {kMargin + (p.x() - min_x) * scale(), kCanvas - kMargin - (p.y() - min_z) * scale()};
  }
};

std::string polyline(const std::vector<Eigen::Vector2d>& points, const View& view,
                     const char* stroke, const char* extra) {
  std::string out = "    <polyline fill=\"none\" stroke=\"";
  out += stroke;
  out += "\" stroke-width=\"2\"";
  out += extra;
  out += " points=\"";
  char buf[64];
  for (size_t i = 0; i < points.size(); ++i) {
    const Eigen::Vector2d s = view.map(points[i]);
    std::snprintf(buf, sizeof(buf), "%s%.2f,%.2f", i == 0 ? "" : " ", s.x(), s.y());
    out += buf;
  }
  out += "\"/>\n";
  return out;
}

}  // namespace

std::string overhead_svg(const std::vector<Trajectory>& targets, const TwoAgentMotion& x,
                         const SkeletonSpec& skeleton) {
  const std::vector<Eigen::Vector2d> leader =
      project_root_trajectory(x.agent_a(), skeleton).points();
  const std::vector<Eigen::Vector2d> follower =
      project_root_trajectory(x.agent_b(), skeleton).points();
  View view;
  for (const auto& t : targets) {
    for (const auto& p : t.points()) view.include(p);
  }
  for (const auto& p : leader) view.include(p);
  for (const auto& p : follower) view.include(p);

  std::string svg =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
      "viewBox=\"0 0 600 600\">\n"
      "  <rect width=\"600\" height=\"600\" fill=\"white\"/>\n";
  svg += "  <g id=\"target\">\n";
  for (const auto& t : targets) {
    svg += polyline(t.points(), view, "#888888", " stroke-dasharray=\"6 4\"");
  }
  svg += "  </g>\n  <g id=\"leader\">\n";
  svg += polyline(leader, view, "#1f77b4", "");
  svg += "  </g>\n  <g id=\"follower\">\n";
  svg += polyline(follower, view, "#d62728", "");
  svg += "  </g>\n</svg>\n";
  return svg;
}

}  // namespace leadfollow
