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

#include "xxosc/dynamics.hpp"

#include "xxosc/phase_space.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace xxosc {

DissipationSpec::DissipationSpec(double gamma1_in, double gamma2_in,
                                 double nbar1_in, double nbar2_in)
    : gamma1(gamma1_in), gamma2(gamma2_in), nbar1(nbar1_in), nbar2(nbar2_in) {
  for (const double v : {gamma1, gamma2, nbar1, nbar2}) {
    if (!std::isfinite(v) || !(v >= 0.0)) {
      throw std::invalid_argument(
          "DissipationSpec: rates and occupations must be >= 0");
    }
  }
}

Mat4 unitary_propagator(const HamiltonianMatrix& h, double t) {
  if (!std::isfinite(t)) {
    throw std::invalid_argument("unitary_propagator: t must be finite");
  }
  return mat_exp(symplectic_form() * h.modewise() * t);
}

CovarianceMatrix evolve_unitary(const CovarianceMatrix& sigma0,
                                const HamiltonianMatrix& h, double t) {
  const Mat4 s = unitary_propagator(h, t);
  return CovarianceMatrix(s * sigma0.matrix() * s.transpose());
}

Mat2 elliptical_mode_propagator(double alpha_sq, double beta_sq, double t) {
  if (!(beta_sq > 0.0)) {
    throw std::invalid_argument(
        "elliptical_mode_propagator: beta_sq must be > 0");
  }
  const double beta = std::sqrt(beta_sq);
  Mat2 m;
  if (alpha_sq > 0.0) {
    const double alpha = std::sqrt(alpha_sq);
    const double phase = alpha * beta * t;
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    m << c, -(beta / alpha) * s, (alpha / beta) * s, c;
  } else if (alpha_sq < 0.0) {
    const double alpha = std::sqrt(-alpha_sq);
    const double rate = alpha * beta * t;
    const double ch = std::cosh(rate);
    const double sh = std::sinh(rate);
    m << ch, -(beta / alpha) * sh, -(alpha / beta) * sh, ch;
  } else {
    m << 1.0, -beta_sq * t, 0.0, 1.0;
  }
  return m;
}

double mach_zehnder_residual(const OscillatorPair& osc, double t) {
  if (!osc.resonant()) {
    throw std::invalid_argument(
        "mach_zehnder_residual: factorization with passive splitters needs "
        "omega1 == omega2");
  }
  constexpr double kQuarter = std::numbers::pi / 4.0;
  const DiagonalizerParams splitter{kQuarter, kQuarter, std::cos(kQuarter),
                                    std::sin(kQuarter)};
  const Mat4 s_t = diagonalizing_symplectic(splitter, osc);
  const Mat4 omega = symplectic_form();
  const Mat4 s_t_inv = omega.transpose() * s_t.transpose() * omega;

  // At resonance the '+' mode sits on transformed mode 1 for every g >= 0.
  const double w = osc.omega1();
  const double gc = critical_coupling(osc);
  Mat4 arms = Mat4::Zero();
  arms.block<2, 2>(kX1, kX1) = elliptical_mode_propagator(gc + osc.g(), w, t);
  arms.block<2, 2>(kX2, kX2) = elliptical_mode_propagator(gc - osc.g(), w, t);

  const Mat4 lhs = unitary_propagator(build_hamiltonian(osc), -t);
  const Mat4 diff = lhs - s_t * arms * s_t_inv;
  return Eigen::JacobiSVD<Mat4>(diff).singularValues()(0);
}

double mach_zehnder_residual(double omega, double g, double t) {
  return mach_zehnder_residual(OscillatorPair(omega, omega, g), t);
}

DriftDiffusion drift_and_diffusion(const HamiltonianMatrix& h,
                                   const DissipationSpec& d) {
  Mat4 gamma = Mat4::Zero();
  gamma.diagonal() << d.gamma1, d.gamma1, d.gamma2, d.gamma2;
  Mat4 diffusion = Mat4::Zero();
  diffusion.diagonal() << d.gamma1 * (d.nbar1 + 0.5), d.gamma1 * (d.nbar1 + 0.5),
      d.gamma2 * (d.nbar2 + 0.5), d.gamma2 * (d.nbar2 + 0.5);
  return {symplectic_form() * h.modewise() - 0.5 * gamma, diffusion};
}

namespace {

using Complex = std::complex<double>;

// (exp((z - r) t) - exp(-r t)) / z, the rescaled integral of exp(z s).
Complex scaled_integral(Complex z, double r, double t) {
  const Complex zt = z * t;
  if (std::abs(zt) < 1e-4) {
    const Complex series =
        t * (1.0 + zt / 2.0 + zt * zt / 6.0 + zt * zt * zt / 24.0);
    return std::exp(-r * t) * series;
  }
  return (std::exp((z - r) * t) - std::exp(-r * t)) / z;
}

constexpr std::array<std::array<int, 2>, 6> kPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

template <typename M>
Complex minor2(const M& m, const std::array<int, 2>& rows,
               const std::array<int, 2>& cols) {
  return m(rows[0], cols[0]) * m(rows[1], cols[1]) -
         m(rows[0], cols[1]) * m(rows[1], cols[0]);
}

}  // namespace

std::optional<SpectralLyapunov> SpectralLyapunov::build(
    const CovarianceMatrix& sigma0, const DriftDiffusion& dd) {
  const Eigen::EigenSolver<Mat4> solver(dd.drift);
  if (solver.info() != Eigen::Success) return std::nullopt;
  const CVec4 lambda = solver.eigenvalues();
  const CMat4 v = solver.eigenvectors();

  const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (std::abs(lambda(i) - lambda(j)) < 1e-8 * scale) return std::nullopt;
    }
  }
  const Eigen::Vector4d sv = Eigen::JacobiSVD<CMat4>(v).singularValues();
  if (!(sv(3) > 0.0) || sv(0) / sv(3) > 1e8) return std::nullopt;

  const CMat4 v_inv = v.inverse();
  const CMat4 p0 = v_inv * sigma0.matrix().cast<Complex>() * v_inv.transpose();
  const CMat4 q = v_inv * dd.diffusion.cast<Complex>() * v_inv.transpose();
  return SpectralLyapunov(lambda, v, p0, q);
}

SpectralLyapunov::State SpectralLyapunov::at(double t) const {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("SpectralLyapunov::at: t must be >= 0");
  }
  Eigen::Vector4d rho;
  for (int i = 0; i < 4; ++i) rho(i) = std::max(lambda_(i).real(), 0.0);

  // P(t) = D C D with D = diag(exp(rho t)).
  CMat4 c;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const Complex z = lambda_(i) + lambda_(j);
      const double r = rho(i) + rho(j);
      c(i, j) = std::exp((z - r) * t) * p0_(i, j) + q_(i, j) * scaled_integral(z, r, t);
    }
  }
  CMat4 w = v_;
  for (int k = 0; k < 4; ++k) w.col(k) *= std::exp(rho(k) * t);

  State out;
  out.determinant = (w.determinant() * w.determinant() * c.determinant()).real();

  // Second compounds: sigma's 2x2 minors = Cw Cc Cw^T.
  Eigen::Matrix<Complex, 6, 6> cw;
  Eigen::Matrix<Complex, 6, 6> cc;
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      cw(a, b) = minor2(w, kPairs[a], kPairs[b]);
      cc(a, b) = minor2(c, kPairs[a], kPairs[b]);
    }
  }
  const Eigen::Matrix<Complex, 6, 6> minors = cw * cc * cw.transpose();
  constexpr int kBlock1 = 0;  // rows/cols (x1, p1)
  constexpr int kBlock2 = 5;  // rows/cols (x2, p2)
  out.seralian = (minors(kBlock1, kBlock1) + minors(kBlock2, kBlock2) -
                  2.0 * minors(kBlock1, kBlock2))
                     .real();

  const Mat4 sigma = (w * c * w.transpose()).real();
  out.sigma = 0.5 * (sigma + sigma.transpose());
  return out;
}

namespace {

// sigma(t0 + tau) from sigma(t0): K(tau) sigma K(tau)^T + Q(tau).
Mat4 lyapunov_step(const Mat4& sigma, const DriftDiffusion& dd, double tau,
                   int steps_per_unit) {
  const Mat4 k = mat_exp(dd.drift * tau);
  const int steps = std::max(
      2, static_cast<int>(std::ceil(steps_per_unit * tau - 1e-9)));
  const Mat4 q = integrate_matrix(
      [&dd](double s) {
        const Mat4 ks = mat_exp(dd.drift * s);
        return Mat4(ks * dd.diffusion * ks.transpose());
      },
      0.0, tau, steps);
  return k * sigma * k.transpose() + q;
}

bool overflowed(const Mat4& sigma, double limit) {
  return !sigma.allFinite() || max_abs(sigma) > limit;
}

TrajectoryRecord record_from(double t, const CovarianceMatrix& sigma,
                             bool keep_sigma) {
  const double nu = nu_minus_pt(sigma);
  TrajectoryRecord r{t, log_negativity_from_nu(nu), seralian(sigma), nu,
                     purity(sigma), std::nullopt};
  if (keep_sigma) r.sigma = sigma.matrix();
  return r;
}

TrajectoryRecord record_from(double t, const FactoredCovariance& state,
                             bool keep_sigma) {
  const double nu = state.nu_minus_pt();
  TrajectoryRecord r{t, log_negativity_from_nu(nu), state.seralian(), nu,
                     state.purity(), std::nullopt};
  if (keep_sigma) r.sigma = state.covariance().matrix();
  return r;
}

TrajectoryRecord record_from(double t, const SpectralLyapunov::State& state,
                             bool keep_sigma) {
  const double nu = nu_minus_pt(state.seralian, state.determinant);
  TrajectoryRecord r{t, log_negativity_from_nu(nu), state.seralian, nu,
                     purity_from_det(state.determinant), std::nullopt};
  if (keep_sigma) r.sigma = state.sigma;
  return r;
}

void check_grid(std::span<const double> t_grid) {
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (!std::isfinite(t_grid[k])) {
      throw std::invalid_argument("entanglement_trajectory: non-finite time");
    }
    if (k > 0 && !(t_grid[k] > t_grid[k - 1])) {
      throw std::invalid_argument(
          "entanglement_trajectory: time grid must be strictly increasing");
    }
  }
}

Trajectory unitary_trajectory(const CovarianceMatrix& sigma0,
                              const HamiltonianMatrix& h,
                              std::span<const double> t_grid,
                              const TrajectoryOptions& options) {
  const FactoredCovariance start(sigma0);
  const std::size_t n = t_grid.size();
  std::vector<std::optional<TrajectoryRecord>> slots(n);

  // Each worker owns a contiguous chunk and stops at its first overflow;
  // later points are discarded anyway.
  auto run_chunk = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      Mat4 s;
      try {
        s = mat_exp(symplectic_form() * h.modewise() * t_grid[k]);
      } catch (const NumericalInconsistency&) {
        return;
      }
      const FactoredCovariance state = start.evolved(s);
      const Mat4& m = state.factor();
      if (overflowed(Mat4(m * m.transpose()), options.overflow_limit)) return;
      slots[k] = record_from(t_grid[k], state, options.keep_sigma);
    }
  };

  const auto workers = static_cast<std::size_t>(std::max(1, options.workers));
  if (workers == 1 || n < 2 * workers) {
    run_chunk(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t begin = 0; begin < n; begin += chunk) {
      pool.emplace_back(run_chunk, begin, std::min(n, begin + chunk));
    }
  }

  Trajectory out;
  out.records.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!slots[k]) {
      out.truncated = true;
      out.truncated_at = t_grid[k];
      break;
    }
    out.records.push_back(std::move(*slots[k]));
  }
  return out;
}

Trajectory dissipative_trajectory(const CovarianceMatrix& sigma0,
                                  const HamiltonianMatrix& h,
                                  const DissipationSpec& d,
                                  std::span<const double> t_grid,
                                  const TrajectoryOptions& options) {
  const DriftDiffusion dd = drift_and_diffusion(h, d);
  Trajectory out;
  out.records.reserve(t_grid.size());

  if (const auto spectral = SpectralLyapunov::build(sigma0, dd)) {
    for (const double t : t_grid) {
      if (t < 0.0) {
        throw std::invalid_argument(
            "entanglement_trajectory: dissipative grid must start at t >= 0");
      }
      const SpectralLyapunov::State state = spectral->at(t);
      if (overflowed(state.sigma, options.overflow_limit)) {
        out.truncated = true;
        out.truncated_at = t;
        break;
      }
      out.records.push_back(record_from(t, state, options.keep_sigma));
    }
    return out;
  }

  Mat4 sigma = sigma0.matrix();
  double now = 0.0;
  for (const double t : t_grid) {
    if (t < now) {
      throw std::invalid_argument(
          "entanglement_trajectory: dissipative grid must start at t >= 0");
    }
    if (t > now) {
      sigma = lyapunov_step(sigma, dd, t - now, kQuadratureStepsPerUnitTime);
      now = t;
    }
    if (overflowed(sigma, options.overflow_limit)) {
      out.truncated = true;
      out.truncated_at = t;
      break;
    }
    out.records.push_back(
        record_from(t, CovarianceMatrix(sigma), options.keep_sigma));
  }
  return out;
}

}  // namespace

CovarianceMatrix evolve_dissipative(const CovarianceMatrix& sigma0,
                                    const HamiltonianMatrix& h,
                                    const DissipationSpec& d, double t,
                                    int steps_per_unit) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("evolve_dissipative: t must be >= 0");
  }
  if (t == 0.0) return sigma0;
  return CovarianceMatrix(lyapunov_step(
      sigma0.matrix(), drift_and_diffusion(h, d), t, steps_per_unit));
}

CovarianceMatrix evolve_dissipative_rk4(const CovarianceMatrix& sigma0,
                                        const HamiltonianMatrix& h,
                                        const DissipationSpec& d, double t,
                                        double dt) {
  const DriftDiffusion dd = drift_and_diffusion(h, d);
  const Mat4 result = rk4_integrate(
      [&dd](double, const Mat4& s) {
        return Mat4(dd.drift * s + s * dd.drift.transpose() + dd.diffusion);
      },
      sigma0.matrix(), t, dt);
  return CovarianceMatrix(0.5 * (result + result.transpose()));
}

std::vector<double> uniform_grid(double t_max, double dt) {
  if (!(t_max >= 0.0) || !(dt > 0.0) || !std::isfinite(t_max)) {
    throw std::invalid_argument("uniform_grid: need t_max >= 0 and dt > 0");
  }
  const auto n = static_cast<long>(std::ceil(t_max / dt - 1e-9));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n) + 1);
  grid.push_back(0.0);
  for (long k = 1; k <= n; ++k) {
    grid.push_back(static_cast<double>(k) * t_max / static_cast<double>(n));
  }
  return grid;
}

Trajectory entanglement_trajectory(const CovarianceMatrix& sigma0,
                                   const HamiltonianMatrix& h,
                                   const std::optional<DissipationSpec>& d,
                                   std::span<const double> t_grid,
                                   const TrajectoryOptions& options) {
  check_grid(t_grid);
  if (!d || d->lossless()) {
    return unitary_trajectory(sigma0, h, t_grid, options);
  }
  return dissipative_trajectory(sigma0, h, *d, t_grid, options);
}

std::optional<double> death_time(const CovarianceMatrix& sigma0,
                                 const HamiltonianMatrix& h,
                                 const DissipationSpec& d, double t_max,
                                 double tol, double coarse_dt) {
  if (!(t_max > 0.0) || !(tol > 0.0) || !(coarse_dt > 0.0)) {
    throw std::invalid_argument(
        "death_time: t_max, tol and coarse_dt must be > 0");
  }
  const std::vector<double> grid = uniform_grid(t_max, coarse_dt);
  TrajectoryOptions opts;
  opts.keep_sigma = true;
  const Trajectory traj = entanglement_trajectory(sigma0, h, d, grid, opts);
  const auto& recs = traj.records;
  if (recs.empty()) return std::nullopt;

  std::size_t peak = 0;
  for (std::size_t k = 1; k < recs.size(); ++k) {
    if (recs[k].log_negativity > recs[peak].log_negativity) peak = k;
  }
  if (!(recs[peak].log_negativity > 0.0)) return std::nullopt;

  std::size_t zero = peak + 1;
  while (zero < recs.size() && recs[zero].log_negativity > 0.0) ++zero;
  if (zero >= recs.size()) return std::nullopt;

  // E_N > 0 at lo, == 0 at hi.
  const double t_lo = recs[zero - 1].t;
  const CovarianceMatrix sigma_lo(*recs[zero - 1].sigma);
  const DriftDiffusion dd = drift_and_diffusion(h, d);
  const std::optional<SpectralLyapunov> spectral =
      d.lossless() ? std::nullopt : SpectralLyapunov::build(sigma0, dd);
  const std::optional<FactoredCovariance> unitary_start =
      d.lossless() ? std::optional<FactoredCovariance>(sigma0) : std::nullopt;
  auto entangled_at = [&](double t) {
    if (unitary_start) {
      return unitary_start->evolved(unitary_propagator(h, t)).log_negativity() > 0.0;
    }
    if (spectral) {
      const SpectralLyapunov::State state = spectral->at(t);
      return log_negativity_from_nu(nu_minus_pt(state.seralian, state.determinant)) > 0.0;
    }
    const Mat4 s = lyapunov_step(sigma_lo.matrix(), dd, t - t_lo,
                                 kQuadratureStepsPerUnitTime);
    return log_negativity(CovarianceMatrix(s)) > 0.0;
  };

  double lo = t_lo;
  double hi = recs[zero].t;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (entangled_at(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace xxosc
