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

#include "xxosc/dynamics.hpp"
#include "xxosc/model.hpp"
#include "xxosc/states.hpp"

#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace xxosc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitTruncated = 4;

/// Invalid configuration or usage; maps to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class OutputFormat { kCsv, kJson };

struct DissipationParams {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double nbar1 = 0.0;
  double nbar2 = 0.0;
};

struct RunConfig {
  double omega1 = 1.0;
  double omega2 = 1.0;
  std::optional<double> g;          // exactly one of g / g_over_gc
  std::optional<double> g_over_gc;
  double eta1 = 0.0;
  double eta2 = 0.0;
  std::optional<DissipationParams> dissipation;
  double t_max = 20.0;
  double dt = 0.01;
  bool emit_sigma = false;
  std::string out;
  OutputFormat format = OutputFormat::kCsv;
  std::string primary_column = "E_N";
};

/// Flat key/value settings, keys normalized to snake_case.
using Settings = std::map<std::string, std::string>;

/// Parses "key = value" lines; '#' starts a comment, blank lines ignored.
/// Throws ConfigError on malformed lines or duplicate keys.
Settings parse_settings(std::istream& in);
Settings load_settings_file(const std::string& path);

/// "t-max" -> "t_max".
std::string normalize_key(std::string_view key);

/// Applies settings on top of `cfg`. Unknown keys, unparsable numbers, or
/// both g and g_over_gc in one source throw ConfigError. Setting one of
/// g / g_over_gc clears the other, so a later source overrides an earlier.
void apply_settings(RunConfig& cfg, const Settings& settings);

/// Checks every invariant of the oscillator, thermal and dissipation specs
/// plus the time grid. Throws ConfigError.
void validate(const RunConfig& cfg);

OscillatorPair resolved_pair(const RunConfig& cfg);
ThermalSpec resolved_thermal(const RunConfig& cfg);
std::optional<DissipationSpec> resolved_dissipation(const RunConfig& cfg);

std::string_view to_string(OutputFormat format);

}  // namespace xxosc::cli
