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

// Command-line front end: simulate, report, sweep and preset verbs.

#include "xxosc/cli/run_config.hpp"
#include "xxosc/cli/runner.hpp"
#include "xxosc/numerics.hpp"

#ifdef XXOSC_CLI11_SINGLE_HEADER
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include <algorithm>
#include <charconv>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace xxosc::cli;

// Every flag that maps onto a RunConfig setting, in file-key spelling.
constexpr const char* kValueFlags[] = {
    "omega1", "omega2", "g",      "g-over-gc", "eta1",  "eta2", "gamma1",
    "gamma2", "nbar1",  "nbar2",  "t-max",     "dt",    "format"};

struct ConfigFlags {
  std::string config_file;
  Settings values;
  bool emit_sigma = false;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& flags) {
  cmd->add_option("--config", flags.config_file,
                  "key = value settings file; flags override it");
  for (const char* name : kValueFlags) {
    const std::string key = normalize_key(name);
    cmd->add_option_function<std::string>(
        std::string("--") + name,
        [&flags, key](const std::string& v) { flags.values[key] = v; },
        key == "format" ? "csv | json" : key);
  }
  cmd->add_flag("--emit-sigma", flags.emit_sigma,
                "append the 16 covariance entries to each row");
}

RunConfig resolve(const ConfigFlags& flags) {
  RunConfig cfg;
  if (!flags.config_file.empty()) {
    apply_settings(cfg, load_settings_file(flags.config_file));
  }
  apply_settings(cfg, flags.values);
  if (flags.emit_sigma) cfg.emit_sigma = true;
  return cfg;
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size() && !text.empty()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    std::string token = text.substr(pos, end - pos);
    token.erase(0, token.find_first_not_of(" \t"));
    token.erase(token.find_last_not_of(" \t") + 1);
    double v = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      throw ConfigError("invalid sweep value '" + token + "'");
    }
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

int fail(std::string_view kind, int code, const std::string& message) {
  std::cerr << "error kind=" << kind << " exit=" << code
            << " message=" << one_line(message) << '\n';
  return code;
}

void print_result(const RunResult& r) {
  std::cout << "wrote " << r.output.string() << " rows=" << r.rows
            << " truncated=" << (r.truncated ? "true" : "false");
  if (r.death_time) std::cout << " death_time=" << format_double(*r.death_time);
  std::cout << '\n';
}

int print_batch(const std::vector<RunResult>& results) {
  for (const RunResult& r : results) print_result(r);
  return batch_exit_code(results);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covariance-level simulator for two coupled quantum oscillators",
               "xxosc"};
  app.set_version_flag("--version", std::string(XXOSC_VERSION));
  app.require_subcommand(1);

  ConfigFlags sim_flags;
  CLI::App* simulate = app.add_subcommand("simulate", "run one trajectory");
  add_config_flags(simulate, sim_flags);
  simulate->add_option_function<std::string>(
      "--out", [&sim_flags](const std::string& v) { sim_flags.values["out"] = v; },
      "output file (.csv or .json)");

  ConfigFlags report_flags;
  std::string report_out;
  CLI::App* report =
      app.add_subcommand("report", "print the regime and normal-mode report");
  add_config_flags(report, report_flags);
  report->add_option("--out", report_out, "write the report here instead of stdout");

  ConfigFlags sweep_flags;
  std::string axis;
  std::string values;
  std::string out_dir = ".";
  std::string prefix = "sweep";
  int jobs = 1;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run one trajectory per axis value");
  add_config_flags(sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--axis", axis, "g | g_over_gc | eta1 | eta2 | gamma1 | "
                                        "gamma2 | nbar1 | nbar2")
      ->required();
  sweep_cmd->add_option("--values", values, "comma-separated axis values")->required();
  sweep_cmd->add_option("--out-dir", out_dir, "directory for the output files")->capture_default_str();
  sweep_cmd->add_option("--prefix", prefix, "file name prefix")->capture_default_str();
  sweep_cmd->add_option("--jobs", jobs, "concurrent runs");

  std::string preset_name;
  std::string preset_dir = ".";
  int preset_jobs = 1;
  bool list_presets = false;
  CLI::App* preset = app.add_subcommand("preset", "run a built-in figure preset");
  preset->add_option("name", preset_name, "fig2a | fig2b | fig3a | fig3b | fig4");
  preset->add_option("--out-dir", preset_dir, "directory for the output files")->capture_default_str();
  preset->add_option("--jobs", preset_jobs, "concurrent runs");
  preset->add_flag("--list", list_presets, "list preset names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", kExitUsage, e.what());
  }

  try {
    if (*simulate) {
      const RunResult r = run_simulation(resolve(sim_flags));
      print_result(r);
      return r.exit_code();
    }
    if (*report) {
      const std::string text = regime_report(resolve(report_flags));
      if (report_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream(report_out, std::ios::binary) << text;
      }
      return kExitOk;
    }
    if (*sweep_cmd) {
      if (jobs < 1) throw ConfigError("--jobs must be at least 1");
      const std::vector<double> v = parse_values(values);
      return print_batch(
          sweep(resolve(sweep_flags), normalize_key(axis), v, out_dir, prefix, jobs));
    }
    if (*preset) {
      if (list_presets) {
        for (const Preset& p : presets()) {
          std::cout << p.name << "  " << p.description << '\n';
        }
        return kExitOk;
      }
      if (preset_name.empty()) throw ConfigError("preset name required");
      if (preset_jobs < 1) throw ConfigError("--jobs must be at least 1");
      return print_batch(run_preset(preset_name, preset_dir, preset_jobs));
    }
  } catch (const xxosc::NumericalInconsistency& e) {
    return fail("numerical", kExitNumerical, e.what());
  } catch (const std::invalid_argument& e) {
    return fail("config", kExitUsage, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail("io", kExitUsage, e.what());
  } catch (const std::exception& e) {
    return fail("numerical", kExitNumerical, e.what());
  }
  return fail("usage", kExitUsage, "no subcommand");
}
