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

#ifndef LEADFOLLOW_TOOLS_CONFIG_FILE_H_
#define LEADFOLLOW_TOOLS_CONFIG_FILE_H_

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace leadfollow::cli {

// Flat `key = value` text. Blank lines and lines starting with '#' are
// skipped. Keys are flag names without the leading dashes.
std::map<std::string, std::string> parse_config_text(const std::string& text);

// Path given by `--config path` or `--config=path`; empty when absent.
std::string find_config_path(const std::vector<std::string>& args);

// Appends `--key=value` for each config entry whose flag does not already
// appear in args, so command-line flags win over the file. `accepts(key)`
// decides whether the selected command takes that key; keys it rejects are
// skipped when `known(key)` holds and raise an error otherwise.
std::vector<std::string> merge_config(const std::vector<std::string>& args,
                                      const std::map<std::string, std::string>& config,
                                      const std::function<bool(const std::string&)>& accepts,
                                      const std::function<bool(const std::string&)>& known);

}  // namespace leadfollow::cli

#endif  // LEADFOLLOW_TOOLS_CONFIG_FILE_H_
