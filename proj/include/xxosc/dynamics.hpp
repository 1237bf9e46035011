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

// Covariance propagation for the coupled pair: closed-form unitary and
// Lindblad (thermal-bath) dynamics, the per-mode rotator/squeezer maps, the
// resonant Mach-Zehnder factorization, entanglement trajectories and the
// entanglement death time.

#pragma once

#include "xxosc/model.hpp"
#include "xxosc/numerics.hpp"
#include "xxosc/states.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace xxosc {

/// Sigma entries above this stop a trajectory (super-critical growth).
inline constexpr double kOverflowLimit = 1e12;

/// Quadrature nodes per unit time for the diffusion integral.
inline constexpr int kQuadratureStepsPerUnitTime = 1000;

struct DissipationSpec {
  double gamma1;
  double gamma2;
  double nbar1;
  double nbar2;

  /// Requires all four >= 0.
  DissipationSpec(double gamma1, double gamma2, double nbar1, double nbar2);

  bool lossless() const { return gamma1 == 0.0 && gamma2 == 0.0; }
};

/// S(t) = exp(Omega H t), acting as r(t) = S(t) r(0).
Mat4 unitary_propagator(const HamiltonianMatrix& h, double t);

/// S(t) sigma0 S(t)^T.
CovarianceMatrix evolve_unitary(const CovarianceMatrix& sigma0,
                                const HamiltonianMatrix& h, double t);

/// Single-mode map for H_q = (1/2)(alpha_sq x^2 + beta_sq p^2) in the
/// orientation [[cos, -(b/a) sin], [(a/b) sin, cos]] (theta = a b t), which
/// is exp(-Omega h t), the inverse of the Heisenberg map. alpha_sq < 0
/// continues to cosh/sinh (squeezer), alpha_sq = 0 gives the shear
/// [[1, -beta_sq t], [0, 1]]. Throws std::invalid_argument if beta_sq <= 0.
Mat2 elliptical_mode_propagator(double alpha_sq, double beta_sq, double t);

/// Spectral-norm residual of the resonant factorization
///   S(-t) = S_T (P+(t) (+) P-(t)) S_T^{-1},
/// with S_T the 50:50 beam-splitter symplectic and P+- the rotator/squeezer
/// maps of the '+' and '-' modes. Throws std::invalid_argument off
/// resonance.
double mach_zehnder_residual(const OscillatorPair& osc, double t);
double mach_zehnder_residual(double omega, double g, double t);

struct DriftDiffusion {
  Mat4 drift;      // A = Omega H - Gamma / 2
  Mat4 diffusion;  // D = (+)_j gamma_j (nbar_j + 1/2) I
};

/// d sigma / dt = A sigma + sigma A^T + D.
DriftDiffusion drift_and_diffusion(const HamiltonianMatrix& h,
                                   const DissipationSpec& d);

/// Closed form K(t) sigma0 K(t)^T + int_0^t K(s) D K(s)^T ds, K = exp(A t).
/// The integral uses composite Simpson with `steps_per_unit` nodes per unit
/// time (at least 2).
CovarianceMatrix evolve_dissipative(
    const CovarianceMatrix& sigma0, const HamiltonianMatrix& h,
    const DissipationSpec& d, double t,
    int steps_per_unit = kQuadratureStepsPerUnitTime);

/// The same Lyapunov equation integrated with classical RK4 at step dt.
CovarianceMatrix evolve_dissipative_rk4(const CovarianceMatrix& sigma0,
                                        const HamiltonianMatrix& h,
                                        const DissipationSpec& d, double t,
                                        double dt);

/// Dissipative evolution in the eigenbasis of the drift, A = V diag(l) V^-1.
/// Writing sigma(t) = V P(t) V^T, each P_ij(t) is closed form. Det sigma and
/// the 2x2 block minors are assembled by Cauchy-Binet from P rescaled by
/// exp(max(Re l_i, 0) t), so no term cancels against a growing one. This
/// keeps E_N and purity accurate long after sigma entries are too large to
/// difference directly.
class SpectralLyapunov {
 public:
  struct State {
    double determinant;
    double seralian;
    Mat4 sigma;
  };

  /// Empty when A has (nearly) repeated eigenvalues or an eigenbasis with
  /// condition number above 1e8.
  static std::optional<SpectralLyapunov> build(const CovarianceMatrix& sigma0,
                                               const DriftDiffusion& dd);

  /// Requires t >= 0.
  State at(double t) const;

 private:
  using CMat4 = Eigen::Matrix4cd;
  using CVec4 = Eigen::Vector4cd;

  SpectralLyapunov(CVec4 lambda, CMat4 v, CMat4 p0, CMat4 q)
      : lambda_(std::move(lambda)), v_(std::move(v)), p0_(std::move(p0)),
        q_(std::move(q)) {}

  CVec4 lambda_;
  CMat4 v_;
  CMat4 p0_;
  CMat4 q_;
};

struct TrajectoryRecord {
  double t;
  double log_negativity;
  double seralian;
  double nu_minus;
  double purity;
  std::optional<Mat4> sigma;
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;
  bool truncated = false;
  double truncated_at = 0.0;  // first grid time whose sigma hit the limit
};

struct TrajectoryOptions {
  bool keep_sigma = false;
  double overflow_limit = kOverflowLimit;
  int workers = 1;  // unitary points are independent and may run in parallel
};

/// Grid 0, t_max/n, ..., t_max with n = ceil(t_max / dt).
std::vector<double> uniform_grid(double t_max, double dt);

/// Observables along a strictly increasing time grid. Without dissipation
/// (or with both gammas zero) every point is the closed-form unitary state;
/// otherwise points come from SpectralLyapunov, or from exact stepping of the
/// dissipative closed form when the drift is not safely diagonalizable. Stops at the first point whose sigma exceeds the overflow limit.
Trajectory entanglement_trajectory(const CovarianceMatrix& sigma0,
                                   const HamiltonianMatrix& h,
                                   const std::optional<DissipationSpec>& d,
                                   std::span<const double> t_grid,
                                   const TrajectoryOptions& options = {});

/// First time after the global log-negativity maximum on [0, t_max] at which
/// it returns to zero: a coarse scan at `coarse_dt` followed by bisection to
/// within `tol`. Empty if there is never any entanglement, if it has not
/// died by t_max, or if the state overflows first.
std::optional<double> death_time(const CovarianceMatrix& sigma0,
                                 const HamiltonianMatrix& h,
                                 const DissipationSpec& d, double t_max,
                                 double tol = 1e-6, double coarse_dt = 0.01);

}  // namespace xxosc
