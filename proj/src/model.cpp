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

#include "xxosc/model.hpp"

#include "xxosc/phase_space.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <complex>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace xxosc {

OscillatorPair::OscillatorPair(double omega1, double omega2, double g)
    : omega1_(omega1), omega2_(omega2), g_(g) {
  if (!std::isfinite(omega1) || !(omega1 > 0.0)) {
    throw std::invalid_argument("OscillatorPair: omega1 must be > 0");
  }
  if (!std::isfinite(omega2) || !(omega2 > 0.0)) {
    throw std::invalid_argument("OscillatorPair: omega2 must be > 0");
  }
  if (!std::isfinite(g) || !(g >= 0.0)) {
    throw std::invalid_argument("OscillatorPair: g must be >= 0");
  }
}

HamiltonianMatrix::HamiltonianMatrix(const Mat4& modewise) : h_(modewise) {
  require_finite(h_, "HamiltonianMatrix");
  if (h_ != h_.transpose()) {
    throw std::invalid_argument("HamiltonianMatrix: matrix is not symmetric");
  }
}

Mat4 HamiltonianMatrix::block() const { return to_block_basis(h_); }

Mat2 HamiltonianMatrix::x_block() const { return block().topLeftCorner<2, 2>(); }

Mat2 HamiltonianMatrix::p_block() const {
  return block().bottomRightCorner<2, 2>();
}

HamiltonianMatrix build_hamiltonian(const OscillatorPair& osc) {
  Mat4 h = Mat4::Zero();
  h(kX1, kX1) = osc.omega1();
  h(kP1, kP1) = osc.omega1();
  h(kX2, kX2) = osc.omega2();
  h(kP2, kP2) = osc.omega2();
  h(kX1, kX2) = osc.g();
  h(kX2, kX1) = osc.g();
  return HamiltonianMatrix(h);
}

double critical_coupling(const OscillatorPair& osc) {
  return std::sqrt(osc.omega1() * osc.omega2());
}

ModeEnergiesSq normal_mode_energies_sq(const OscillatorPair& osc) {
  const double w1 = osc.omega1();
  const double w2 = osc.omega2();
  const double g = osc.g();
  const double sum = w1 * w1 + w2 * w2;
  const double gc = critical_coupling(osc);
  const double root =
      std::sqrt(sum * sum + 4.0 * w1 * w2 * (g - gc) * (g + gc));
  // sum - root without cancellation; exactly zero at g = g_c.
  return {sum + root, 4.0 * w1 * w2 * (gc - g) * (gc + g) / (sum + root)};
}

SymplecticFrequencies symplectic_frequencies(const HamiltonianMatrix& h) {
  const Mat4 drift = symplectic_form() * h.modewise();
  const Eigen::EigenSolver<Mat4> solver(drift, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalInconsistency("symplectic_frequencies: eigensolver failed");
  }
  // lambda = +-i nu  ->  -lambda^2 = nu^2;  lambda = +-kappa  ->  -kappa^2.
  std::array<double, 4> nu_sq{};
  for (int k = 0; k < 4; ++k) {
    const std::complex<double> lambda = solver.eigenvalues()(k);
    nu_sq[k] = -(lambda * lambda).real();
  }
  std::sort(nu_sq.begin(), nu_sq.end());
  const double minus_sq = 0.5 * (nu_sq[0] + nu_sq[1]);
  const double plus_sq = 0.5 * (nu_sq[2] + nu_sq[3]);
  return {std::sqrt(std::max(plus_sq, 0.0)), minus_sq};
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::Subcritical:
      return "Subcritical";
    case Regime::Critical:
      return "Critical";
    case Regime::Supercritical:
      return "Supercritical";
  }
  return "Unknown";
}

Regime classify_regime(const OscillatorPair& osc) {
  const double gc = critical_coupling(osc);
  if (std::abs(osc.g() - gc) <= kRegimeTolerance * gc) return Regime::Critical;
  return osc.g() < gc ? Regime::Subcritical : Regime::Supercritical;
}

double DiagonalizerParams::angle() const { return std::sqrt(a * b); }

DiagonalizerParams diagonalizer_params(const OscillatorPair& osc,
                                       ZeroCoupling zero) {
  if (osc.g() == 0.0) {
    if (zero == ZeroCoupling::kThrow) {
      throw DegenerateInput(
          "diagonalizer_params: g = 0, the Hamiltonian is already diagonal");
    }
    return {0.0, 0.0, 1.0, 0.0};
  }
  const double w1 = osc.omega1();
  const double w2 = osc.omega2();
  double theta = std::numbers::pi / 4.0;
  if (!osc.resonant()) {
    theta = 0.5 * std::atan2(2.0 * osc.g() * critical_coupling(osc),
                             w1 * w1 - w2 * w2);
  }
  const double a = theta * std::sqrt(w2 / w1);
  const double b = theta * std::sqrt(w1 / w2);
  return {a, b, std::cos(theta), std::sin(theta)};
}

namespace {

void check_consistent(const DiagonalizerParams& p, const OscillatorPair& osc) {
  const double w1 = osc.omega1();
  const double w2 = osc.omega2();
  if (p.a == 0.0 && p.b == 0.0) {
    if (osc.g() != 0.0) {
      throw std::invalid_argument(
          "diagonalizing_symplectic: identity transform needs g = 0");
    }
    return;
  }
  if (!(p.a > 0.0) || !(p.b > 0.0)) {
    throw std::invalid_argument("diagonalizing_symplectic: A, B must be > 0");
  }
  if (std::abs(p.a / p.b - w2 / w1) > 1e-12 * (w2 / w1)) {
    throw std::invalid_argument(
        "diagonalizing_symplectic: A/B does not match omega2/omega1");
  }
  const double theta = p.angle();
  if (std::abs(p.c - std::cos(theta)) > 1e-12 ||
      std::abs(p.s - std::sin(theta)) > 1e-12) {
    throw std::invalid_argument(
        "diagonalizing_symplectic: c, s do not match sqrt(AB)");
  }
  const double lhs = (w1 * w1 - w2 * w2) * std::sin(2.0 * theta);
  const double rhs =
      2.0 * osc.g() * critical_coupling(osc) * std::cos(2.0 * theta);
  const double scale =
      std::abs(w1 * w1 - w2 * w2) + 2.0 * osc.g() * critical_coupling(osc);
  if (std::abs(lhs - rhs) > 1e-10 * scale) {
    throw std::invalid_argument(
        "diagonalizing_symplectic: tan(2 sqrt(AB)) condition not satisfied");
  }
}

}  // namespace

Mat4 diagonalizing_symplectic(const DiagonalizerParams& params,
                              const OscillatorPair& osc) {
  check_consistent(params, osc);
  // i[A x1 p2 - B x2 p1, r] expressed as a linear map on r.
  Mat4 generator = Mat4::Zero();
  generator(kX1, kX2) = -params.b;
  generator(kX2, kX1) = params.a;
  generator(kP1, kP2) = -params.a;
  generator(kP2, kP1) = params.b;
  return mat_exp(generator);
}

NormalModes diagonal_hamiltonian(const OscillatorPair& osc) {
  const double w1 = osc.omega1();
  const double w2 = osc.omega2();
  if (osc.g() == 0.0) {
    const ModeHamiltonian first{w1, w1, '+'};
    const ModeHamiltonian second{w2, w2, '-'};
    if (w1 >= w2) return {first, second};
    return {{w2, w2, '+'}, {w1, w1, '-'}};
  }
  if (osc.resonant()) {
    // c = s = 1/sqrt(2): the general expressions reduce to w +- g.
    return {{w1, w1 + osc.g(), '+'}, {w2, w2 - osc.g(), '-'}};
  }
  const DiagonalizerParams p = diagonalizer_params(osc);
  const double c = p.c;
  const double s = p.s;
  const double ggc = osc.g() * critical_coupling(osc);
  const double x_plus = w1 * c * c + (w2 * w2 / w1) * s * s + 2.0 * ggc * c * s / w1;
  const double x_minus = w2 * c * c + (w1 * w1 / w2) * s * s - 2.0 * ggc * c * s / w2;
  return {{w1, x_plus, '+'}, {w2, x_minus, '-'}};
}

HookianReduction hookian_reduce(const HookianSpec& spec) {
  if (!(spec.mass > 0.0) || !(spec.omega > 0.0) || !(spec.coupling > 0.0) ||
      !std::isfinite(spec.mass) || !std::isfinite(spec.omega) ||
      !std::isfinite(spec.coupling)) {
    throw std::invalid_argument("hookian_reduce: mass, omega, coupling must be > 0");
  }
  const double w2 = spec.omega * spec.omega;
  const double k2 = spec.coupling * spec.coupling;
  const double omega0 = std::sqrt(w2 + k2);
  const double G = k2 / (w2 + k2);
  // m K^2 X1 X2 with X = x / sqrt(m omega0) gives (K^2 / omega0) x1 x2.
  return {omega0, G, omega0 * G};
}

}  // namespace xxosc
