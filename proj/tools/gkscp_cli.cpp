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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <system_error>
#include <vector>

#include "CLI11.hpp"
#include "gkscp/gkscp.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitInputError = 2;

struct Options {
  std::uint64_t seed = 1;
  double tolerance = 0.0;
  std::string grid = "default";
  std::size_t budget = 2000;
  std::size_t refinement_steps = 200;
  std::string output;
  double eps_max = 10.0;
  double time = 1.0;
  double rate = 4.0;
  std::vector<double> mu;
  std::vector<double> alpha;
  std::vector<double> varphi;
};

// Write-then-rename so readers never observe a partial file.
bool write_atomically(const fs::path& path, const std::string& contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << contents;
    if (!out.flush()) return false;
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    return false;
  }
  return true;
}

std::string output_directory(const Options& opts) {
  if (!opts.output.empty()) return opts.output;
  if (const char* env = std::getenv("GKSCP_OUTPUT_DIR"); env && *env) return env;
  return {};
}

int run(const std::string& command, const std::vector<std::string>& inputs, const Options& opts) {
  std::vector<double> grid;
  if (opts.grid != "default") {
    std::size_t len = 0;
    gkscp_parse_grid(opts.grid.c_str(), nullptr, 0, &len);
    grid.resize(len);
    if (gkscp_parse_grid(opts.grid.c_str(), grid.data(), grid.size(), &len) != GKSCP_OK) {
      std::cerr << "gkscp: --grid: " << gkscp_last_error() << "\n";
      return kExitInputError;
    }
  }

  gkscp_run_options ro;
  gkscp_run_options_init(&ro);
  if (!grid.empty()) {
    ro.grid = grid.data();
    ro.grid_len = grid.size();
  }
  ro.seed = opts.seed;
  ro.budget = opts.budget;
  ro.refinement_steps = opts.refinement_steps;
  ro.tolerance = opts.tolerance;
  ro.eps_max = opts.eps_max;
  ro.time = opts.time;
  ro.rate = opts.rate;
  if (!opts.mu.empty()) {
    ro.mu = opts.mu.data();
    ro.mu_len = opts.mu.size();
  }
  if (!opts.alpha.empty()) {
    ro.alpha = opts.alpha.data();
    ro.alpha_len = opts.alpha.size();
  }
  if (!opts.varphi.empty()) {
    ro.varphi = opts.varphi.data();
    ro.varphi_len = opts.varphi.size();
  }

  std::vector<const char*> argv;
  for (const auto& s : inputs) argv.push_back(s.c_str());

  gkscp_result* result = nullptr;
  if (gkscp_run(command.c_str(), argv.data(), argv.size(), &ro, &result) != GKSCP_OK) {
    std::cerr << "gkscp: " << gkscp_last_error() << "\n";
    return kExitInputError;
  }
  int code = gkscp_result_exit_code(result);
  const std::string document = gkscp_result_document(result);
  std::cout << document;

  const std::string dir = output_directory(opts);
  const std::size_t nfiles = gkscp_result_file_count(result);
  if (!dir.empty() || nfiles > 0) {
    const fs::path base = dir.empty() ? fs::path(".") : fs::path(dir);
    std::error_code ec;
    fs::create_directories(base, ec);
    bool ok = !ec;
    if (ok && !dir.empty()) ok = write_atomically(base / (command + ".json"), document);
    for (std::size_t i = 0; ok && i < nfiles; ++i) {
      ok = write_atomically(base / gkscp_result_file_name(result, i),
                            gkscp_result_file_contents(result, i));
    }
    if (!ok) {
      std::cerr << "gkscp: cannot write output files under " << base.string() << "\n";
      code = kExitInputError;
    }
  }
  gkscp_result_free(result);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complete positivity and positivity of Lindblad/GKS semigroups"};
  app.set_version_flag("--version", std::string(gkscp_version()));
  app.require_subcommand(1);
  // Global flags may also follow the subcommand.
  app.fallthrough();

  Options opts;
  app.add_option("--seed", opts.seed, "Seed for all sampling")->capture_default_str();
  app.add_option("--tolerance", opts.tolerance, "Verdict tolerance (default: library value)");
  app.add_option("--grid", opts.grid, "Time grid: 'default' or comma-separated times")
      ->capture_default_str();
  app.add_option("--budget", opts.budget, "Random samples per time point")->capture_default_str();
  app.add_option("--refinement-steps", opts.refinement_steps, "Local refinement sweeps")
      ->capture_default_str();
  app.add_option("--output", opts.output,
                 "Directory for the report and curve files (default: $GKSCP_OUTPUT_DIR)");

  std::string presets;
  for (std::size_t i = 0; i < gkscp_preset_count(); ++i) {
    presets += (i ? ", " : "") + std::string(gkscp_preset_name(i));
  }
  const std::string input_help = "Generator documents or presets (" + presets + ")";

  std::vector<std::string> inputs;
  std::string command;
  auto add = [&](const char* name, const char* help, bool takes_inputs) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (takes_inputs) sub->add_option("inputs", inputs, input_help)->required();
    sub->callback([&command, sub] { command = sub->get_name(); });
    return sub;
  };

  add("check-cp", "Complete positivity via the Kossakowski and Choi routes", true);
  add("tensor-positivity", "Positivity search for the product of two semigroups", true);
  CLI::App* cx = add("counterexample", "Positive product map with a non-CP factor", false);
  cx->add_option("--rate", opts.rate, "Damping rate")->capture_default_str();
  cx->add_option("--mu", opts.mu, "Schmidt weights")->delimiter(',');
  cx->add_option("--alpha", opts.alpha, "Angles alpha")->delimiter(',');
  cx->add_option("--varphi", opts.varphi, "Phases varphi")->delimiter(',');
  add("lemma1", "Necessary condition C1 + C2 >= 0 with witness", true);
  CLI::App* pt = add("perturb", "CP interval of C + eps Gamma", true);
  pt->add_option("--eps-max", opts.eps_max, "Upper end of the search")->capture_default_str();
  CLI::App* kr = add("kraus", "Kraus operators of exp(L t)", true);
  kr->add_option("--time", opts.time, "Evolution time")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }
  return run(command, inputs, opts);
}
