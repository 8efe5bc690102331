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

#ifndef LEADFOLLOW_TOOLS_COMMANDS_H_
#define LEADFOLLOW_TOOLS_COMMANDS_H_

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "leadfollow/motion.h"

namespace leadfollow::cli {

// Entry point shared by the executable and the tests. `args` excludes the
// program name. Returns the process exit code: 0 on success, 1 on runtime
// failures, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Items of a directory written by make-data, in manifest order.
std::vector<LabeledMotion> load_dataset_dir(const std::filesystem::path& dir);

}  // namespace leadfollow::cli

#endif  // LEADFOLLOW_TOOLS_COMMANDS_H_
