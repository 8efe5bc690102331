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

#include "config_file.h"

#include <sstream>

#include "leadfollow/error.h"

namespace leadfollow::cli {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

bool mentions_flag(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  for (const auto& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config", "line " + std::to_string(number) + ": expected key=value");
    }
    std::string key = trim(stripped.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    if (key.empty()) throw ParseError("config", "line " + std::to_string(number) + ": empty key");
    if (key == "config") {
      throw ParseError("config", "line " + std::to_string(number) + ": nested config files are not supported");
    }
    out[key] = trim(stripped.substr(eq + 1));
  }
  return out;
}

std::string find_config_path(const std::vector<std::string>& args) {
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ParseError("config", "--config needs a path");
      return args[i + 1];
    }
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return "";
}

std::vector<std::string> merge_config(const std::vector<std::string>& args,
                                      const std::map<std::string, std::string>& config,
                                      const std::function<bool(const std::string&)>& accepts,
                                      const std::function<bool(const std::string&)>& known) {
  std::vector<std::string> out = args;
  for (const auto& [key, value] : config) {
    if (!accepts(key)) {
      if (known(key)) continue;
      throw ParseError("config", "unknown key '" + key + "'");
    }
    if (mentions_flag(args, key)) continue;
    out.push_back("--" + key + "=" + value);
  }
  return out;
}

}  // namespace leadfollow::cli
