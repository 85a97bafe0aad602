// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Every subcommand assembles a "key = value" config
// (file plus flag overrides) and drives the shared library through its C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqdaa/sqdaa_c.h"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string output_dir = "out";
  std::vector<std::string> overrides;
  long long seed_base = -1;
  long long restarts = -1;
  long long workers = -1;
};

void add_common(CLI::App* cmd, CommonOptions* opts) {
  cmd->add_option("-c,--config", opts->config_path,
                  "Config file (key = value lines)");
  cmd->add_option("-o,--output", opts->output_dir, "Output directory")
      ->capture_default_str();
  cmd->add_option("--set", opts->overrides,
                  "Override a config key, e.g. --set driver.f_t=0.7");
  cmd->add_option("--seed", opts->seed_base, "Seed base (overrides config)");
  cmd->add_option("--restarts", opts->restarts,
                  "Restart count (overrides config)");
  cmd->add_option("--workers", opts->workers,
                  "Worker thread count (overrides config)");
}

std::string compose_config(const std::string& mode,
                           const CommonOptions& opts) {
  std::ostringstream out;
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    if (!in.good()) {
      throw CLI::ValidationError("--config",
                                 "cannot open " + opts.config_path);
    }
    out << in.rdbuf() << "\n";
  }
  out << "mode = " << mode << "\n";
  if (opts.seed_base >= 0) out << "seed_base = " << opts.seed_base << "\n";
  if (opts.restarts >= 0) out << "restarts = " << opts.restarts << "\n";
  if (opts.workers >= 0) out << "workers = " << opts.workers << "\n";
  for (const std::string& kv : opts.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw CLI::ValidationError("--set", "expected key=value, got " + kv);
    }
    out << kv.substr(0, eq) << " = " << kv.substr(eq + 1) << "\n";
  }
  return out.str();
}

int run_mode(const std::string& mode, const CommonOptions& opts) {
  const std::string config = compose_config(mode, opts);
  char* summary = nullptr;
  const sqdaa_status rc =
      sqdaa_run_experiment(config.c_str(), opts.output_dir.c_str(), &summary);
  if (rc != SQDAA_OK) {
    std::cerr << "error: " << sqdaa_last_error() << "\n";
    return static_cast<int>(rc);
  }
  std::cout << summary << "\n";
  sqdaa_string_free(summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sample-based quantum diagonalization with amplitude "
               "amplification: simulation, query-complexity analytics and "
               "fault-tolerant resource estimates"};
  app.set_version_flag("--version", std::string(sqdaa_version()));
  app.require_subcommand(1);

  static const struct {
    const char* name;
    const char* description;
  } kModes[] = {
      {"run-sqdaa", "Run the amplified diagonalization driver"},
      {"run-sqd", "Run the direct-sampling baseline"},
      {"compare", "Run both drivers over restarts and compare totals"},
      {"model-dist", "Closed-form query-complexity curves for model "
                     "distributions"},
      {"resources", "T-count/T-depth reports for all pipelines"},
      {"asp-prepare", "Adiabatic sweep state preparation"},
  };

  std::vector<std::pair<CLI::App*, CommonOptions>> runs;
  runs.reserve(std::size(kModes));
  for (const auto& mode : kModes) {
    CLI::App* cmd = app.add_subcommand(mode.name, mode.description);
    runs.push_back({cmd, CommonOptions{}});
    add_common(cmd, &runs.back().second);
  }

  CLI11_PARSE(app, argc, argv);

  for (const auto& [cmd, opts] : runs) {
    if (cmd->parsed()) {
      try {
        return run_mode(cmd->get_name(), opts);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
      }
    }
  }
  return 0;
}
