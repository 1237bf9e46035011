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

#include "xxosc/cli/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace xxosc::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_number(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError("invalid number for " + key + ": '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("invalid boolean for " + key + ": '" + text + "'");
}

}  // namespace

std::string normalize_key(std::string_view key) {
  std::string out(key);
  std::replace(out.begin(), out.end(), '-', '_');
  return out;
}

Settings parse_settings(std::istream& in) {
  Settings settings;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    }
    const std::string key = normalize_key(trim(body.substr(0, eq)));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key or value");
    }
    if (!settings.emplace(key, value).second) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": duplicate key " + key);
    }
  }
  return settings;
}

Settings load_settings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse_settings(in);
}

void apply_settings(RunConfig& cfg, const Settings& settings) {
  if (settings.count("g") != 0 && settings.count("g_over_gc") != 0) {
    throw ConfigError("g and g_over_gc are mutually exclusive");
  }
  auto dissipation = [&cfg]() -> DissipationParams& {
    if (!cfg.dissipation) cfg.dissipation.emplace();
    return *cfg.dissipation;
  };
  for (const auto& [raw_key, value] : settings) {
    const std::string key = normalize_key(raw_key);
    if (key == "omega1") {
      cfg.omega1 = parse_number(key, value);
    } else if (key == "omega2") {
      cfg.omega2 = parse_number(key, value);
    } else if (key == "g") {
      cfg.g = parse_number(key, value);
      cfg.g_over_gc.reset();
    } else if (key == "g_over_gc") {
      cfg.g_over_gc = parse_number(key, value);
      cfg.g.reset();
    } else if (key == "eta1") {
      cfg.eta1 = parse_number(key, value);
    } else if (key == "eta2") {
      cfg.eta2 = parse_number(key, value);
    } else if (key == "gamma1") {
      dissipation().gamma1 = parse_number(key, value);
    } else if (key == "gamma2") {
      dissipation().gamma2 = parse_number(key, value);
    } else if (key == "nbar1") {
      dissipation().nbar1 = parse_number(key, value);
    } else if (key == "nbar2") {
      dissipation().nbar2 = parse_number(key, value);
    } else if (key == "t_max") {
      cfg.t_max = parse_number(key, value);
    } else if (key == "dt") {
      cfg.dt = parse_number(key, value);
    } else if (key == "emit_sigma") {
      cfg.emit_sigma = parse_bool(key, value);
    } else if (key == "out") {
      cfg.out = value;
    } else if (key == "format") {
      if (value == "csv") {
        cfg.format = OutputFormat::kCsv;
      } else if (value == "json") {
        cfg.format = OutputFormat::kJson;
      } else {
        throw ConfigError("format must be csv or json, got '" + value + "'");
      }
    } else {
      throw ConfigError("unknown setting '" + raw_key + "'");
    }
  }
}

void validate(const RunConfig& cfg) {
  try {
    (void)resolved_pair(cfg);
    (void)resolved_thermal(cfg);
    (void)resolved_dissipation(cfg);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(cfg.t_max > 0.0)) throw ConfigError("t_max must be > 0");
  if (!(cfg.dt > 0.0)) throw ConfigError("dt must be > 0");
  if (cfg.dt > cfg.t_max) throw ConfigError("dt must not exceed t_max");
  if (cfg.t_max / cfg.dt > 1e7) throw ConfigError("time grid exceeds 1e7 points");
}

OscillatorPair resolved_pair(const RunConfig& cfg) {
  if (cfg.g && cfg.g_over_gc) {
    throw ConfigError("g and g_over_gc are mutually exclusive");
  }
  if (!cfg.g && !cfg.g_over_gc) {
    throw ConfigError("one of g or g_over_gc is required");
  }
  if (!(cfg.omega1 > 0.0) || !(cfg.omega2 > 0.0)) {
    throw ConfigError("omega1 and omega2 must be > 0");
  }
  const double g =
      cfg.g ? *cfg.g : *cfg.g_over_gc * std::sqrt(cfg.omega1 * cfg.omega2);
  if (!(g >= 0.0)) throw ConfigError("coupling must be >= 0");
  return OscillatorPair(cfg.omega1, cfg.omega2, g);
}

ThermalSpec resolved_thermal(const RunConfig& cfg) {
  if (!(cfg.eta1 >= 0.0) || !(cfg.eta2 >= 0.0)) {
    throw ConfigError("eta1 and eta2 must be >= 0");
  }
  return {cfg.eta1, cfg.eta2};
}

std::optional<DissipationSpec> resolved_dissipation(const RunConfig& cfg) {
  if (!cfg.dissipation) return std::nullopt;
  const DissipationParams& d = *cfg.dissipation;
  if (!(d.gamma1 >= 0.0) || !(d.gamma2 >= 0.0) || !(d.nbar1 >= 0.0) ||
      !(d.nbar2 >= 0.0)) {
    throw ConfigError("gamma and nbar values must be >= 0");
  }
  return DissipationSpec(d.gamma1, d.gamma2, d.nbar1, d.nbar2);
}

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::kCsv ? "csv" : "json";
}

}  // namespace xxosc::cli
