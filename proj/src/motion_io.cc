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

#include "leadfollow/motion_io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "leadfollow/error.h"

namespace leadfollow {
namespace {

using nlohmann::json;

json agent_to_json(const MotionSequence& motion) {
  json frames = json::array();
  for (int f = 0; f < motion.frames(); ++f) {
    json pose = json::array();
    for (int j = 0; j < motion.joints(); ++j) {
      const Eigen::Vector3d p = motion.position(f, j);
      pose.push_back({p[0], p[1], p[2]});
    }
    frames.push_back(std::move(pose));
  }
  return json{{"frames", std::move(frames)}};
}

const json& require(const json& object, const std::string& key, const std::string& path) {
  if (!object.is_object() || !object.contains(key)) {
    throw ParseError(path + key, "missing field");
  }
  return object.at(key);
}

double require_number(const json& value, const std::string& path) {
  if (!value.is_number()) throw ParseError(path, "expected a number");
  return value.get<double>();
}

int require_int(const json& value, const std::string& path) {
  if (!value.is_number_integer()) throw ParseError(path, "expected an integer");
  return value.get<int>();
}

MotionSequence agent_from_json(const json& agent, int index, int frames, int joints,
                               double fps) {
  const std::string path = "agents[" + std::to_string(index) + "].";
  const json& data = require(agent, "frames", path);
  if (!data.is_array() || static_cast<int>(data.size()) != frames) {
    throw ParseError(path + "frames", "expected " + std::to_string(frames) + " frames");
  }
  std::vector<double> coords;
  coords.reserve(static_cast<size_t>(frames) * joints * 3);
  for (int f = 0; f < frames; ++f) {
    const json& pose = data[f];
    const std::string frame_path = path + "frames[" + std::to_string(f) + "]";
    if (!pose.is_array() || static_cast<int>(pose.size()) != joints) {
      throw ParseError(frame_path, "expected " + std::to_string(joints) + " joints");
    }
    for (int j = 0; j < joints; ++j) {
      const json& p = pose[j];
      const std::string joint_path = frame_path + "[" + std::to_string(j) + "]";
      if (!p.is_array() || p.size() != 3) throw ParseError(joint_path, "expected [x, y, z]");
      for (int a = 0; a < 3; ++a) coords.push_back(require_number(p[a], joint_path));
    }
  }
  return MotionSequence(frames, joints, std::move(coords), fps);
}

}  // namespace

std::string motion_to_json(const TwoAgentMotion& x) {
  json doc;
  doc["version"] = kMotionFormatVersion;
  doc["fps"] = x.fps();
  doc["joint_count"] = x.joints();
  doc["frames"] = x.frames();
  doc["agents"] = json::array({agent_to_json(x.agent_a()), agent_to_json(x.agent_b())});
  return doc.dump() + "\n";
}

TwoAgentMotion motion_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("<document>", e.what());
  }
  if (!doc.is_object()) throw ParseError("<document>", "expected a JSON object");
  const int version = require_int(require(doc, "version", ""), "version");
  if (version != kMotionFormatVersion) {
    throw ParseError("version", "unsupported version " + std::to_string(version) +
                                    " (expected " + std::to_string(kMotionFormatVersion) +
                                    ")");
  }
  const double fps = require_number(require(doc, "fps", ""), "fps");
  const int joints = require_int(require(doc, "joint_count", ""), "joint_count");
  const json& agents = require(doc, "agents", "");
  if (!agents.is_array() || agents.size() != 2) {
    throw ParseError("agents", "expected exactly two agents");
  }
  const json& first_frames = require(agents[0], "frames", "agents[0].");
  if (!first_frames.is_array()) throw ParseError("agents[0].frames", "expected an array");
  const int frames = doc.contains("frames")
                         ? require_int(doc.at("frames"), "frames")
                         : static_cast<int>(first_frames.size());
  if (frames < 2) throw ValidationError("motion: need at least 2 frames, file has " +
                                        std::to_string(frames));
  if (joints < 1) throw ParseError("joint_count", "must be positive");
  return TwoAgentMotion(agent_from_json(agents[0], 0, frames, joints, fps),
                        agent_from_json(agents[1], 1, frames, joints, fps));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

void save_motion(const TwoAgentMotion& x, const std::filesystem::path& path) {
  write_text_file(path, motion_to_json(x));
}

TwoAgentMotion load_motion(const std::filesystem::path& path) {
  return motion_from_json(read_text_file(path));
}

std::string trajectory_to_text(const Trajectory& trajectory, double fps) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "fps=" << fps << " frames=" << trajectory.size() << "\n";
  for (int i = 0; i < trajectory.size(); ++i) {
    const Eigen::Vector2d& p = trajectory.planar(i);
    if (trajectory.has_height()) {
      out << p[0] << " " << trajectory.height(i) << " " << p[1] << "\n";
    } else {
      out << p[0] << " " << p[1] << "\n";
    }
  }
  return out.str();
}

Trajectory trajectory_from_text(const std::string& text, double* fps) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) throw ParseError("header", "empty trajectory file");
  double parsed_fps = 0.0;
  int frames = 0;
  if (std::sscanf(header.c_str(), "fps=%lf frames=%d", &parsed_fps, &frames) != 2) {
    throw ParseError("header", "expected 'fps=<f> frames=<L>'");
  }
  if (!(parsed_fps > 0.0)) throw ParseError("header.fps", "must be positive");
  if (frames < 2) throw ParseError("header.frames", "need at least 2 frames");
  std::vector<Eigen::Vector2d> planar;
  std::vector<double> height;
  int columns = 0;
  std::string line;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    std::vector<double> values;
    std::string token;
    while (row >> token) {
      try {
        size_t used = 0;
        values.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_number), "bad number '" + token + "'");
      }
    }
    if (values.size() != 2 && values.size() != 3) {
      throw ParseError("line " + std::to_string(line_number), "expected 2 or 3 columns");
    }
    if (columns == 0) columns = static_cast<int>(values.size());
    if (static_cast<int>(values.size()) != columns) {
      throw ParseError("line " + std::to_string(line_number), "inconsistent column count");
    }
    if (columns == 2) {
      planar.emplace_back(values[0], values[1]);
    } else {
      planar.emplace_back(values[0], values[2]);
      height.push_back(values[1]);
    }
  }
  if (static_cast<int>(planar.size()) != frames) {
    throw ParseError("header.frames", "declares " + std::to_string(frames) +
                                          " frames but file has " +
                                          std::to_string(planar.size()));
  }
  if (fps != nullptr) *fps = parsed_fps;
  return Trajectory(std::move(planar), std::move(height));
}

void save_trajectory(const Trajectory& trajectory, const std::filesystem::path& path,
                     double fps) {
  write_text_file(path, trajectory_to_text(trajectory, fps));
}

Trajectory load_trajectory(const std::filesystem::path& path, double* fps) {
  return trajectory_from_text(read_text_file(path), fps);
}

}  // namespace leadfollow
