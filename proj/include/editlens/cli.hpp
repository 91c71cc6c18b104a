/* Copyright 2026 The editlens Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "editlens/error.hpp"

// Command-line front end. `run` is the whole program minus process setup so
// tests can drive it in-process.
namespace editlens::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitInput = 3,
  kExitProvider = 4,
  kExitDegenerate = 5,
};

int exit_code_for(ErrorKind kind);

// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Writes to a temporary sibling file and renames it over `path`, so readers
// never observe a partial file.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace editlens::cli
