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

#include "xxosc/cli/runner.hpp"

#include "xxosc/phase_space.hpp"

#include <nlohmann/json.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <thread>

#ifndef XXOSC_VERSION
#define XXOSC_VERSION "0.0.0"
#endif

namespace xxosc::cli {

using Json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kColumns[] = {"t", "E_N", "Delta", "nu_minus",
                                         "purity"};

Json nullable(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json config_json(const RunConfig& cfg, const OscillatorPair& osc) {
  Json j;
  j["omega1"] = cfg.omega1;
  j["omega2"] = cfg.omega2;
  j["g"] = osc.g();
  j["g_over_gc"] = osc.g() / critical_coupling(osc);
  j["eta1"] = cfg.eta1;
  j["eta2"] = cfg.eta2;
  if (cfg.dissipation) {
    j["dissipation"] = {{"gamma1", cfg.dissipation->gamma1},
                        {"gamma2", cfg.dissipation->gamma2},
                        {"nbar1", cfg.dissipation->nbar1},
                        {"nbar2", cfg.dissipation->nbar2}};
  } else {
    j["dissipation"] = nullptr;
  }
  j["t_max"] = cfg.t_max;
  j["dt"] = cfg.dt;
  j["emit_sigma"] = cfg.emit_sigma;
  j["format"] = std::string(to_string(cfg.format));
  return j;
}

Json report_json(const RunConfig& cfg) {
  validate(cfg);
  const OscillatorPair osc = resolved_pair(cfg);
  const HamiltonianMatrix h = build_hamiltonian(osc);
  const double gc = critical_coupling(osc);

  Json j;
  j["omega1"] = osc.omega1();
  j["omega2"] = osc.omega2();
  j["g"] = osc.g();
  j["g_over_gc"] = osc.g() / gc;
  j["critical_coupling"] = gc;
  j["regime"] = std::string(to_string(classify_regime(osc)));

  const ModeEnergiesSq e = normal_mode_energies_sq(osc);
  j["energies_sq"] = {{"plus", e.plus}, {"minus", e.minus}};
  const SymplecticFrequencies f = symplectic_frequencies(h);
  j["symplectic_frequencies"] = {{"nu_plus", f.nu_plus},
                                 {"nu_plus_sq", f.nu_plus * f.nu_plus},
                                 {"nu_minus_sq", f.nu_minus_sq}};
  j["energy_sq_over_frequency_sq"] = 2.0;

  if (osc.g() > 0.0) {
    const DiagonalizerParams p = diagonalizer_params(osc);
    j["diagonalizer"] = {{"A", p.a}, {"B", p.b}, {"c", p.c}, {"s", p.s}};
  } else {
    j["diagonalizer"] = nullptr;
  }
  const NormalModes modes = diagonal_hamiltonian(osc);
  j["normal_modes"] = {
      {"plus", {{"p_coeff", modes.plus.p_coeff}, {"x_coeff", modes.plus.x_coeff}}},
      {"minus",
       {{"p_coeff", modes.minus.p_coeff}, {"x_coeff", modes.minus.x_coeff}}}};

  if (const auto d = resolved_dissipation(cfg)) {
    const DriftDiffusion dd = drift_and_diffusion(h, *d);
    const Eigen::EigenSolver<Mat4> solver(dd.drift, false);
    std::vector<std::pair<double, double>> ev;
    for (int k = 0; k < 4; ++k) {
      ev.emplace_back(solver.eigenvalues()(k).real(), solver.eigenvalues()(k).imag());
    }
    std::sort(ev.begin(), ev.end());
    Json list = Json::array();
    for (const auto& [re, im] : ev) list.push_back({re, im});
    j["drift_eigenvalues"] = list;
  }
  return j;
}

Json records_json(const Trajectory& traj) {
  Json rows = Json::array();
  for (const TrajectoryRecord& r : traj.records) {
    Json row;
    row["t"] = r.t;
    row["E_N"] = r.log_negativity;
    row["Delta"] = r.seralian;
    row["nu_minus"] = r.nu_minus;
    row["purity"] = r.purity;
    if (r.sigma) {
      Json entries = Json::array();
      for (int i = 0; i < 4; ++i) {
        for (int k = 0; k < 4; ++k) entries.push_back((*r.sigma)(i, k));
      }
      row["sigma"] = entries;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
  if (!out) throw ConfigError("failed writing " + path.string());
}

void set_axis(RunConfig& cfg, std::string_view axis, double v) {
  auto dissipation = [&cfg]() -> DissipationParams& {
    if (!cfg.dissipation) cfg.dissipation.emplace();
    return *cfg.dissipation;
  };
  if (axis == "g") {
    cfg.g = v;
    cfg.g_over_gc.reset();
  } else if (axis == "g_over_gc") {
    cfg.g_over_gc = v;
    cfg.g.reset();
  } else if (axis == "eta1") {
    cfg.eta1 = v;
  } else if (axis == "eta2") {
    cfg.eta2 = v;
  } else if (axis == "gamma1") {
    dissipation().gamma1 = v;
  } else if (axis == "gamma2") {
    dissipation().gamma2 = v;
  } else if (axis == "nbar1") {
    dissipation().nbar1 = v;
  } else if (axis == "nbar2") {
    dissipation().nbar2 = v;
  } else {
    throw ConfigError("unknown sweep axis '" + std::string(axis) + "'");
  }
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

std::string format_csv(const Trajectory& traj, bool emit_sigma) {
  std::string out = "t,E_N,Delta,nu_minus,purity";
  if (emit_sigma) {
    for (int i = 1; i <= 4; ++i) {
      for (int k = 1; k <= 4; ++k) {
        out += ",s" + std::to_string(i) + std::to_string(k);
      }
    }
  }
  out += '\n';
  for (const TrajectoryRecord& r : traj.records) {
    out += format_double(r.t);
    for (const double v : {r.log_negativity, r.seralian, r.nu_minus, r.purity}) {
      out += ',';
      out += format_double(v);
    }
    if (emit_sigma && r.sigma) {
      for (int i = 0; i < 4; ++i) {
        for (int k = 0; k < 4; ++k) {
          out += ',';
          out += format_double((*r.sigma)(i, k));
        }
      }
    }
    out += '\n';
  }
  return out;
}

std::string regime_report(const RunConfig& cfg) {
  return report_json(cfg).dump(2) + "\n";
}

RunResult run_simulation(const RunConfig& cfg) {
  validate(cfg);
  if (cfg.out.empty()) throw ConfigError("an output path (--out) is required");
  const OscillatorPair osc = resolved_pair(cfg);
  const HamiltonianMatrix h = build_hamiltonian(osc);
  const CovarianceMatrix sigma0 = thermal_covariance(resolved_thermal(cfg));
  const std::optional<DissipationSpec> d = resolved_dissipation(cfg);

  const std::vector<double> grid = uniform_grid(cfg.t_max, cfg.dt);
  TrajectoryOptions opts;
  opts.keep_sigma = cfg.emit_sigma;
  const Trajectory traj = entanglement_trajectory(sigma0, h, d, grid, opts);

  RunResult result;
  result.rows = traj.records.size();
  result.truncated = traj.truncated;
  if (d && !d->lossless()) {
    result.death_time = death_time(sigma0, h, *d, cfg.t_max, 1e-6, cfg.dt);
  }

  Json meta;
  meta["version"] = XXOSC_VERSION;
  meta["config"] = config_json(cfg, osc);
  meta["primary_column"] = cfg.primary_column;
  Json columns = Json::array();
  for (const auto c : kColumns) columns.push_back(std::string(c));
  if (cfg.emit_sigma) {
    for (int i = 1; i <= 4; ++i) {
      for (int k = 1; k <= 4; ++k) {
        columns.push_back("s" + std::to_string(i) + std::to_string(k));
      }
    }
  }
  meta["columns"] = columns;
  meta["report"] = report_json(cfg);
  meta["rows"] = result.rows;
  meta["truncated"] = traj.truncated;
  meta["truncated_at"] =
      traj.truncated ? Json(traj.truncated_at) : Json(nullptr);
  meta["death_time"] = nullable(result.death_time);

  result.output = cfg.out;
  if (cfg.format == OutputFormat::kCsv) {
    write_file(result.output, format_csv(traj, cfg.emit_sigma));
    result.sidecar = std::filesystem::path(cfg.out).replace_extension(".json");
    if (result.sidecar == result.output) {
      result.sidecar += ".meta.json";
    }
    write_file(result.sidecar, meta.dump(2) + "\n");
  } else {
    meta["records"] = records_json(traj);
    write_file(result.output, meta.dump(2) + "\n");
  }
  return result;
}

std::vector<RunResult> sweep(const RunConfig& base, std::string_view axis,
                             std::span<const double> values,
                             const std::filesystem::path& out_dir,
                             std::string_view prefix, int workers) {
  if (std::find(std::begin(kSweepAxes), std::end(kSweepAxes), axis) ==
      std::end(kSweepAxes)) {
    throw ConfigError("unknown sweep axis '" + std::string(axis) + "'");
  }
  if (values.empty()) throw ConfigError("sweep needs at least one value");

  const std::string ext = base.format == OutputFormat::kCsv ? ".csv" : ".json";
  std::vector<RunConfig> configs;
  for (const double v : values) {
    RunConfig cfg = base;
    set_axis(cfg, axis, v);
    cfg.out = (out_dir / (std::string(prefix) + "_" + std::string(axis) + "_" +
                          format_double(v) + ext))
                  .string();
    validate(cfg);
    configs.push_back(std::move(cfg));
  }

  std::vector<RunResult> results(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < configs.size(); k = next++) {
      try {
        results[k] = run_simulation(configs[k]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int n = std::clamp(workers, 1, static_cast<int>(configs.size()));
  {
    std::vector<std::jthread> pool;
    for (int i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

std::vector<Preset> presets() {
  RunConfig fig2;
  fig2.omega1 = 5.0;
  fig2.omega2 = 1.0;
  fig2.eta1 = 0.0;
  fig2.eta2 = 1.0;
  fig2.g_over_gc = 1.0;
  fig2.t_max = 20.0;
  fig2.dt = 0.01;
  RunConfig fig2b = fig2;
  fig2b.primary_column = "Delta";
  const std::vector<double> couplings{0.5, 0.9, 1.0, 1.2, 1.5};

  RunConfig fig3a;
  fig3a.omega1 = 1.0;
  fig3a.omega2 = 1.0;
  fig3a.g_over_gc = 1.0;
  fig3a.eta1 = 0.0;
  fig3a.t_max = 50.0;
  fig3a.dt = 0.01;
  RunConfig fig3b = fig3a;
  fig3b.eta1 = 5.0;
  const std::vector<double> thermality{0.0, 1.0, 2.0, 5.0};

  RunConfig fig4 = fig2;
  fig4.dissipation = DissipationParams{0.01 * fig4.omega1, 0.25 * fig4.omega2,
                                       1.0, 1.0};
  fig4.t_max = 12.0;

  return {
      {"fig2a", "log-negativity, w1 = 5 w2, eta = (0, 1), sweep g/g_c", fig2,
       "g_over_gc", couplings},
      {"fig2b", "seralian, w1 = 5 w2, eta = (0, 1), sweep g/g_c", fig2b,
       "g_over_gc", couplings},
      {"fig3a", "resonant, g = g_c, eta1 = 0, sweep eta2", fig3a, "eta2",
       thermality},
      {"fig3b", "resonant, g = g_c, eta1 = 5, sweep eta2", fig3b, "eta2",
       thermality},
      {"fig4", "dissipative, gamma = (0.01 w1, 0.25 w2), nbar = (1, 1)", fig4,
       "g_over_gc", {0.5, 1.0, 1.5}},
  };
}

const Preset& find_preset(std::string_view name) {
  static const std::vector<Preset> all = presets();
  for (const Preset& p : all) {
    if (p.name == name) return p;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

std::vector<RunResult> run_preset(std::string_view name,
                                  const std::filesystem::path& out_dir,
                                  int workers) {
  const Preset& p = find_preset(name);
  return sweep(p.base, p.axis, p.values, out_dir, p.name, workers);
}

int batch_exit_code(std::span<const RunResult> results) {
  int code = kExitOk;
  for (const RunResult& r : results) code = std::max(code, r.exit_code());
  return code;
}

}  // namespace xxosc::cli
