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

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace xxosc {
namespace {

// nu^2 from the 2x2 product Hp Hx in the block basis, solved as a quadratic.
std::pair<double, double> nu_sq_oracle(double w1, double w2, double g) {
  const double tr = w1 * w1 + w2 * w2;
  const double det = w1 * w2 * (w1 * w2 - g * g);
  const double disc = std::sqrt(tr * tr / 4.0 - det);
  return {tr / 2.0 + disc, tr / 2.0 - disc};
}

TEST(OscillatorPair, RejectsInvalidParameters) {
  EXPECT_THROW(OscillatorPair(0.0, 1.0, 0.5), std::invalid_argument);
  EXPECT_THROW(OscillatorPair(1.0, -1.0, 0.5), std::invalid_argument);
  EXPECT_THROW(OscillatorPair(1.0, 1.0, -0.1), std::invalid_argument);
  EXPECT_THROW(OscillatorPair(NAN, 1.0, 0.1), std::invalid_argument);
  EXPECT_THROW(OscillatorPair(1.0, INFINITY, 0.1), std::invalid_argument);
  EXPECT_NO_THROW(OscillatorPair(1.0, 1.0, 0.0));
}

TEST(BuildHamiltonian, UncoupledResonantIsIdentity) {
  const HamiltonianMatrix h = build_hamiltonian(OscillatorPair(1.0, 1.0, 0.0));
  EXPECT_EQ(max_abs(h.block() - Mat4::Identity()), 0.0);
}

TEST(BuildHamiltonian, BlocksBySubstitution) {
  const HamiltonianMatrix h = build_hamiltonian(OscillatorPair(5.0, 1.0, 2.0));
  Mat2 x;
  x << 5.0, 2.0, 2.0, 1.0;
  EXPECT_EQ(h.x_block(), x);
  EXPECT_EQ(h.p_block(), Mat2(Eigen::Vector2d(5.0, 1.0).asDiagonal()));
  EXPECT_EQ(h.modewise(), to_modewise_basis(h.block()));
  EXPECT_EQ(h.modewise(), oracle::hamiltonian(5.0, 1.0, 2.0));
}

TEST(HamiltonianMatrix, RejectsAsymmetric) {
  Mat4 m = Mat4::Identity();
  m(0, 1) = 1.0;
  EXPECT_THROW(HamiltonianMatrix{m}, std::invalid_argument);
}

TEST(CriticalCoupling, Examples) {
  EXPECT_EQ(critical_coupling(OscillatorPair(1.0, 1.0, 0.0)), 1.0);
  EXPECT_NEAR(critical_coupling(OscillatorPair(5.0, 1.0, 0.0)), 2.2360679774997896,
              1e-15);
  EXPECT_EQ(critical_coupling(OscillatorPair(4.0, 9.0, 0.0)), 6.0);
}

TEST(NormalModeEnergies, CriticalAndUncoupled) {
  EXPECT_EQ(normal_mode_energies_sq(OscillatorPair(1.0, 1.0, 1.0)).minus, 0.0);
  const ModeEnergiesSq e = normal_mode_energies_sq(OscillatorPair(1.0, 1.0, 0.0));
  EXPECT_NEAR(e.plus, 2.0, 1e-15);
  EXPECT_NEAR(e.minus, 2.0, 1e-15);
}

TEST(NormalModeEnergies, EqualTwiceSymplecticFrequencySquared) {
  for (const auto& [w1, w2, g] : {std::tuple{5.0, 1.0, 1.0}, std::tuple{5.0, 1.0, 3.0},
                                  std::tuple{2.0, 7.0, 0.3}}) {
    const OscillatorPair osc(w1, w2, g);
    const ModeEnergiesSq e = normal_mode_energies_sq(osc);
    const SymplecticFrequencies f = symplectic_frequencies(build_hamiltonian(osc));
    EXPECT_NEAR(e.plus, 2.0 * f.nu_plus * f.nu_plus, 1e-12 * e.plus);
    EXPECT_NEAR(e.minus, 2.0 * f.nu_minus_sq, 1e-12 * e.plus);
  }
}

TEST(SymplecticFrequencies, Uncoupled) {
  const SymplecticFrequencies f =
      symplectic_frequencies(build_hamiltonian(OscillatorPair(2.0, 2.0, 0.0)));
  EXPECT_NEAR(f.nu_plus, 2.0, 1e-14);
  EXPECT_NEAR(f.nu_minus_sq, 4.0, 1e-13);
}

TEST(SymplecticFrequencies, ResonantFormula) {
  const SymplecticFrequencies f =
      symplectic_frequencies(build_hamiltonian(OscillatorPair(1.0, 1.0, 0.5)));
  EXPECT_NEAR(f.nu_plus, std::sqrt(1.5), 1e-14);
  EXPECT_NEAR(f.nu_minus_sq, 0.5, 1e-14);
  const SymplecticFrequencies inverted =
      symplectic_frequencies(build_hamiltonian(OscillatorPair(1.0, 1.0, 1.2)));
  EXPECT_NEAR(inverted.nu_minus_sq, -0.2, 1e-14);
}

TEST(SymplecticFrequencies, MatchQuadraticOracle) {
  auto gen = oracle::rng(11);
  std::uniform_real_distribution<double> ratio(1.0, 20.0);
  std::uniform_real_distribution<double> coupling(0.05, 3.0);
  for (int k = 0; k < 500; ++k) {
    const double w1 = ratio(gen);
    const double g = coupling(gen) * std::sqrt(w1);
    const auto [plus, minus] = nu_sq_oracle(w1, 1.0, g);
    const SymplecticFrequencies f =
        symplectic_frequencies(build_hamiltonian(OscillatorPair(w1, 1.0, g)));
    EXPECT_NEAR(f.nu_plus * f.nu_plus, plus, 1e-11 * plus);
    EXPECT_NEAR(f.nu_minus_sq, minus, 1e-11 * plus);
  }
}

TEST(ClassifyRegime, Examples) {
  EXPECT_EQ(classify_regime(OscillatorPair(1.0, 1.0, 0.5)), Regime::Subcritical);
  EXPECT_EQ(classify_regime(OscillatorPair(5.0, 1.0, std::sqrt(5.0))),
            Regime::Critical);
  EXPECT_EQ(classify_regime(OscillatorPair(1.0, 1.0, 1.5)), Regime::Supercritical);
  EXPECT_EQ(to_string(Regime::Critical), "Critical");
}

TEST(ClassifyRegime, ToleranceBand) {
  EXPECT_EQ(classify_regime(OscillatorPair(1.0, 1.0, 1.0 + 0.5 * kRegimeTolerance)),
            Regime::Critical);
  EXPECT_EQ(classify_regime(OscillatorPair(1.0, 1.0, 1.0 + 2.0 * kRegimeTolerance)),
            Regime::Supercritical);
  EXPECT_EQ(classify_regime(OscillatorPair(1.0, 1.0, 1.0 - 2.0 * kRegimeTolerance)),
            Regime::Subcritical);
}

TEST(DiagonalizerParams, ResonantIsQuarterPi) {
  for (const double g : {0.1, 1.0, 4.0}) {
    const DiagonalizerParams p = diagonalizer_params(OscillatorPair(2.0, 2.0, g));
    EXPECT_EQ(p.a, std::numbers::pi / 4.0);
    EXPECT_EQ(p.b, std::numbers::pi / 4.0);
  }
}

TEST(DiagonalizerParams, SubstitutionExample) {
  const DiagonalizerParams p = diagonalizer_params(OscillatorPair(5.0, 1.0, 1.0));
  EXPECT_NEAR(p.angle(), 0.5 * std::atan(2.0 * std::sqrt(5.0) / 24.0), 1e-15);
  EXPECT_NEAR(p.a / p.b, 0.2, 1e-15);
}

TEST(DiagonalizerParams, DefiningIdentity) {
  auto gen = oracle::rng(3);
  std::uniform_real_distribution<double> u(0.2, 10.0);
  for (int k = 0; k < 200; ++k) {
    const double w1 = u(gen);
    const double w2 = u(gen);
    const double g = u(gen);
    const OscillatorPair osc(w1, w2, g);
    const DiagonalizerParams p = diagonalizer_params(osc);
    const double two_theta = 2.0 * p.angle();
    // tan(2 theta)(w1^2 - w2^2) = 2 g g_c, multiplied through by cos.
    EXPECT_NEAR(std::sin(two_theta) * (w1 * w1 - w2 * w2),
                2.0 * g * critical_coupling(osc) * std::cos(two_theta),
                1e-12 * (w1 * w1 + w2 * w2 + g * g));
  }
}

TEST(DiagonalizerParams, ZeroCouplingPolicy) {
  const OscillatorPair osc(3.0, 1.0, 0.0);
  EXPECT_THROW(diagonalizer_params(osc), DegenerateInput);
  const DiagonalizerParams p = diagonalizer_params(osc, ZeroCoupling::kIdentity);
  EXPECT_EQ(p.a, 0.0);
  EXPECT_EQ(max_abs(diagonalizing_symplectic(p, osc) - Mat4::Identity()), 0.0);
}

TEST(DiagonalizingSymplectic, BeamSplitterAtResonance) {
  const OscillatorPair osc(1.0, 1.0, 0.4);
  const Mat4 s = to_block_basis(diagonalizing_symplectic(diagonalizer_params(osc), osc));
  const Mat2 sx = s.topLeftCorner<2, 2>();
  const double h = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(sx(i, j)), h, 1e-15);
  }
  EXPECT_LT((sx * sx.transpose() - Mat2::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((s.topRightCorner<2, 2>().cwiseAbs().maxCoeff()), 1e-16);
}

TEST(DiagonalizingSymplectic, GenericIsSymplecticAndDiagonalizes) {
  const OscillatorPair osc(5.0, 1.0, 2.0);
  const Mat4 s = diagonalizing_symplectic(diagonalizer_params(osc), osc);
  EXPECT_LT(symplectic_residual(s), 1e-12);
  const Mat4 hp = s.transpose() * build_hamiltonian(osc).modewise() * s;
  EXPECT_LT(std::abs(hp(kX1, kX2)), 1e-10 * 5.0);
  EXPECT_LT(std::abs(hp(kP1, kP2)), 1e-10 * 5.0);
  EXPECT_LT(std::abs(hp(kX1, kP1)), 1e-10 * 5.0);
  EXPECT_LT(std::abs(hp(kX1, kP2)), 1e-10 * 5.0);
}

TEST(DiagonalizingSymplectic, RejectsInconsistentParameters) {
  const OscillatorPair osc(5.0, 1.0, 2.0);
  DiagonalizerParams p = diagonalizer_params(osc);
  DiagonalizerParams bad_ratio = p;
  bad_ratio.b *= 1.01;
  EXPECT_THROW(diagonalizing_symplectic(bad_ratio, osc), std::invalid_argument);
  DiagonalizerParams bad_angle{p.a * 1.1, p.b * 1.1, std::cos(1.1 * p.angle()),
                               std::sin(1.1 * p.angle())};
  EXPECT_THROW(diagonalizing_symplectic(bad_angle, osc), std::invalid_argument);
  EXPECT_THROW(
      diagonalizing_symplectic({0.0, 0.0, 1.0, 0.0}, osc), std::invalid_argument);
}

TEST(DiagonalHamiltonian, ResonantCoefficients) {
  const NormalModes m = diagonal_hamiltonian(OscillatorPair(2.0, 2.0, 0.7));
  EXPECT_EQ(m.minus.p_coeff, 2.0);
  EXPECT_NEAR(m.minus.x_coeff, 2.0 - 0.7, 1e-15);
  EXPECT_NEAR(m.plus.x_coeff, 2.0 + 0.7, 1e-15);
  EXPECT_EQ(diagonal_hamiltonian(OscillatorPair(1.0, 1.0, 1.0)).minus.x_coeff, 0.0);
}

TEST(DiagonalHamiltonian, MatchesTransformedDiagonal) {
  for (const auto& [w1, w2, g] : {std::tuple{5.0, 1.0, 1.0}, std::tuple{5.0, 1.0, 4.0},
                                  std::tuple{1.0, 3.0, 0.5}}) {
    const OscillatorPair osc(w1, w2, g);
    const Mat4 s = diagonalizing_symplectic(diagonalizer_params(osc), osc);
    const Mat4 hp = s.transpose() * build_hamiltonian(osc).modewise() * s;
    const NormalModes m = diagonal_hamiltonian(osc);
    const double scale = 1e-10 * build_hamiltonian(osc).modewise().norm();
    EXPECT_NEAR(m.plus.x_coeff, hp(kX1, kX1), scale);
    EXPECT_NEAR(m.plus.p_coeff, hp(kP1, kP1), scale);
    EXPECT_NEAR(m.minus.x_coeff, hp(kX2, kX2), scale);
    EXPECT_NEAR(m.minus.p_coeff, hp(kP2, kP2), scale);
    // The mode products are the symplectic spectrum.
    const SymplecticFrequencies f = symplectic_frequencies(build_hamiltonian(osc));
    EXPECT_NEAR(m.plus.frequency_sq(), f.nu_plus * f.nu_plus, 1e-10 * w1 * w1);
    EXPECT_NEAR(m.minus.frequency_sq(), f.nu_minus_sq, 1e-10 * w1 * w1);
  }
}

TEST(DiagonalHamiltonian, UncoupledOrdersByFrequency) {
  const NormalModes m = diagonal_hamiltonian(OscillatorPair(1.0, 3.0, 0.0));
  EXPECT_EQ(m.plus.p_coeff, 3.0);
  EXPECT_EQ(m.minus.x_coeff, 1.0);
}

TEST(HookianReduce, Examples) {
  const HookianReduction equal = hookian_reduce({1.0, 2.0, 2.0});
  EXPECT_NEAR(equal.G, 0.5, 1e-15);
  const HookianReduction weak = hookian_reduce({1.0, 1.0, 1e-6});
  EXPECT_LT(weak.G, 1e-11);
  EXPECT_NEAR(weak.omega0, 1.0, 1e-12);
  const HookianReduction strong = hookian_reduce({1.0, 1.0, 10.0});
  EXPECT_NEAR(strong.G, 100.0 / 101.0, 1e-15);
  // Equal bare frequencies: g_c = omega0.
  EXPECT_NEAR(strong.g_effective / strong.omega0, strong.G, 1e-15);
  EXPECT_LT(strong.g_effective, strong.omega0);
}

TEST(HookianReduce, ReproducesClassicalNormalModes) {
  // Springs to the walls (k = m w^2) and between the masses (k = m G^2):
  // classical modes are w (in phase) and sqrt(w^2 + 2 G^2) (out of phase).
  for (const double ratio : {1e-2, 0.3, 1.0, 4.0, 50.0}) {
    const double mass = 2.5;
    const double w = 1.7;
    const double k = ratio * w;
    const HookianReduction r = hookian_reduce({mass, w, k});
    const SymplecticFrequencies f = symplectic_frequencies(
        build_hamiltonian(OscillatorPair(r.omega0, r.omega0, r.g_effective)));
    EXPECT_NEAR(f.nu_minus_sq, w * w, 1e-12 * r.omega0 * r.omega0);
    EXPECT_NEAR(f.nu_plus * f.nu_plus, w * w + 2.0 * k * k, 1e-12 * r.omega0 * r.omega0);
  }
}

TEST(HookianReduce, RejectsInvalid) {
  EXPECT_THROW(hookian_reduce({0.0, 1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(hookian_reduce({1.0, -1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(hookian_reduce({1.0, 1.0, 0.0}), std::invalid_argument);
}

}  // namespace
}  // namespace xxosc
