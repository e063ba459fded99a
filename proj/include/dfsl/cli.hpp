// Copyright 2026 The DFSL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DFSL_CLI_HPP_
#define DFSL_CLI_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace dfsl {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitSyntax = 1,
  kExitSemantic = 2,
  kExitRuntime = 3,
  kExitIo = 4,  // also usage errors
};

struct CliConfig {
  std::string script_path;
  std::optional<std::string> data_path;     // overrides the first binding with a file
  std::optional<std::string> hex_override;  // overrides the first binding with hex digits
  std::optional<std::string> xml_out;
  std::optional<std::string> out;
  bool dump_ast = false;
  bool dump_fields = false;
  bool strict = false;
};

std::string usage_text();
std::string version_text();

// Runs one script; diagnostics go to `err`, text output to `out` unless
// config.out names a file.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

// Full command line (without argv[0]): "run <script> [flags]", "--help",
// "--version".
int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dfsl

#endif  // DFSL_CLI_HPP_
