// Copyright 2026 The ghm Authors
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

#ifndef GHM_TOOLS_COMMANDS_HPP
#define GHM_TOOLS_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

#include "ghm/error.hpp"

namespace ghm::cli {

/// Process exit code for an error category.
int exit_code(ErrorKind kind);

/// Runs one subcommand; args excludes the program name. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ghm::cli

#endif  // GHM_TOOLS_COMMANDS_HPP
