// Copyright 2026 The gkscp Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gkscp {

/// Everything a command needs; filled from the command line or the C API.
struct RunConfig {
  std::string command;              // check-cp, tensor-positivity, counterexample, lemma1, perturb, kraus
  std::vector<std::string> inputs;  // document paths or preset names (paper:...)
  std::vector<double> grid;         // empty: default time grid
  std::uint64_t seed = 1;
  std::size_t budget = 2000;
  std::size_t refinement_steps = 200;
  std::optional<double> tolerance;  // verdict tolerance override
  double eps_max = 10.0;            // perturb
  double time = 1.0;                // kraus
  double rate = 4.0;                // counterexample
  std::vector<double> mu;           // counterexample grid overrides
  std::vector<double> alpha;
  std::vector<double> varphi;
};

struct OutputFile {
  std::string name;
  std::string contents;
};

/// Exit codes: 0 holds / success, 1 analyzed and fails, 2 usage or input error.
struct CommandResult {
  int exit_code = 2;
  std::string document;  // JSON report (an error document for exit code 2)
  std::vector<OutputFile> files;
};

inline constexpr int kExitHolds = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitInputError = 2;

CommandResult run_command(const RunConfig& config);

/// Names accepted wherever a document path is expected.
std::vector<std::string> preset_names();

/// Document texts for a preset; pair presets expand to two documents.
/// Returns nullopt for unknown names.
std::optional<std::vector<std::string>> preset_documents(std::string_view name);

/// "default" or a comma-separated list of non-negative times.
std::vector<double> parse_grid(std::string_view spec);

}  // namespace gkscp
