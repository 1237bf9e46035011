// Copyright 2026 The xxosc Authors
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

#include "xxosc/cli/run_config.hpp"
#include "xxosc/dynamics.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xxosc::cli {

struct RunResult {
  std::filesystem::path output;
  std::filesystem::path sidecar;  // empty for --format json
  std::size_t rows = 0;
  bool truncated = false;
  std::optional<double> death_time;

  int exit_code() const { return truncated ? kExitTruncated : kExitOk; }
};

/// Shortest round-trip decimal.
std::string format_double(double value);

/// CSV with header t,E_N,Delta,nu_minus,purity[,s11..s44] and "\n" endings.
std::string format_csv(const Trajectory& traj, bool emit_sigma);

/// Regime diagnostics for the configured pair as a JSON document.
std::string regime_report(const RunConfig& cfg);

/// Computes the trajectory for `cfg` and writes cfg.out (plus a .json sidecar
/// next to a CSV). Throws ConfigError for invalid configs.
RunResult run_simulation(const RunConfig& cfg);

inline constexpr std::string_view kSweepAxes[] = {
    "g", "g_over_gc", "eta1", "eta2", "gamma1", "gamma2", "nbar1", "nbar2"};

/// One run per value along `axis`, written to
/// <out_dir>/<prefix>_<axis>_<value>.csv (or .json). Runs execute on up to
/// `workers` threads; file contents do not depend on scheduling.
std::vector<RunResult> sweep(const RunConfig& base, std::string_view axis,
                             std::span<const double> values,
                             const std::filesystem::path& out_dir,
                             std::string_view prefix, int workers = 1);

struct Preset {
  std::string_view name;
  std::string_view description;
  RunConfig base;
  std::string_view axis;
  std::vector<double> values;
};

std::vector<Preset> presets();
const Preset& find_preset(std::string_view name);

std::vector<RunResult> run_preset(std::string_view name,
                                  const std::filesystem::path& out_dir,
                                  int workers = 1);

/// Worst exit code over a batch.
int batch_exit_code(std::span<const RunResult> results);

}  // namespace xxosc::cli
