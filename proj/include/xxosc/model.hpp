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

// Two x-x coupled oscillators, H = sum_j (w_j/2)(p_j^2 + x_j^2) + g x1 x2:
// Hamiltonian matrix, normal-mode spectrum, coupling regime, the
// diagonalizing symplectic transform, and the classical Hookian reduction.

#pragma once

#include "xxosc/numerics.hpp"

#include <string_view>

namespace xxosc {

/// Relative half-width of the band around g_c classified as critical.
inline constexpr double kRegimeTolerance = 1e-9;

class OscillatorPair {
 public:
  /// Requires omega1 > 0, omega2 > 0, g >= 0 (all finite).
  OscillatorPair(double omega1, double omega2, double g);

  double omega1() const { return omega1_; }
  double omega2() const { return omega2_; }
  double g() const { return g_; }
  bool resonant() const { return omega1_ == omega2_; }

 private:
  double omega1_;
  double omega2_;
  double g_;
};

/// Real symmetric 4x4 generator, stored in the mode-wise ordering
/// (x1, p1, x2, p2). Block accessors use (x1, x2 | p1, p2).
class HamiltonianMatrix {
 public:
  /// Throws std::invalid_argument unless `modewise` is finite and exactly
  /// symmetric.
  explicit HamiltonianMatrix(const Mat4& modewise);

  const Mat4& modewise() const { return h_; }
  Mat4 block() const;
  Mat2 x_block() const;
  Mat2 p_block() const;

 private:
  Mat4 h_;
};

HamiltonianMatrix build_hamiltonian(const OscillatorPair& osc);

/// g_c = sqrt(w1 w2).
double critical_coupling(const OscillatorPair& osc);

/// E+-^2 exactly as the closed form
///   w1^2 + w2^2 +- sqrt((w1^2 + w2^2)^2 + 4 w1 w2 (g^2 - w1 w2)).
/// This equals 2 nu+-^2 where nu are the symplectic frequencies; E-^2 < 0
/// marks the super-critical regime.
struct ModeEnergiesSq {
  double plus;
  double minus;
};
ModeEnergiesSq normal_mode_energies_sq(const OscillatorPair& osc);

/// Normal frequencies read off the eigenvalues of Omega H. A pair +-i nu
/// gives nu^2 > 0; a real pair +-kappa gives nu_minus_sq = -kappa^2.
struct SymplecticFrequencies {
  double nu_plus;
  double nu_minus_sq;
};
SymplecticFrequencies symplectic_frequencies(const HamiltonianMatrix& h);

enum class Regime { Subcritical, Critical, Supercritical };

std::string_view to_string(Regime regime);
Regime classify_regime(const OscillatorPair& osc);

/// Parameters of the generator A x1 p2 - B x2 p1 that diagonalizes H.
struct DiagonalizerParams {
  double a;
  double b;
  double c;  // cos sqrt(AB)
  double s;  // sin sqrt(AB)

  double angle() const;  // sqrt(AB)
};

enum class ZeroCoupling { kThrow, kIdentity };

/// Solves tan(2 sqrt(AB)) = 2 g g_c / (w1^2 - w2^2) with A/B = w2/w1, taking
/// 2 sqrt(AB) = atan2(2 g g_c, w1^2 - w2^2); A = B = pi/4 at resonance.
/// g = 0 throws DegenerateInput unless `zero` is kIdentity, which returns
/// A = B = 0.
DiagonalizerParams diagonalizer_params(const OscillatorPair& osc,
                                       ZeroCoupling zero = ZeroCoupling::kThrow);

/// Phase-space (mode-wise) matrix S of exp[i(A x1 p2 - B x2 p1)], built as
/// mat_exp of the generator it induces on the quadratures. S is symplectic
/// and S^T H S is diagonal; mode 1 of the result is the '+' mode.
/// Throws std::invalid_argument if `params` does not solve the conditions
/// for `osc`.
Mat4 diagonalizing_symplectic(const DiagonalizerParams& params,
                              const OscillatorPair& osc);

/// One normal mode, H_q = (1/2)(x_coeff x^2 + p_coeff p^2).
struct ModeHamiltonian {
  double p_coeff;
  double x_coeff;
  char label;  // '+' or '-'

  double frequency_sq() const { return p_coeff * x_coeff; }
};

struct NormalModes {
  ModeHamiltonian plus;
  ModeHamiltonian minus;
};

NormalModes diagonal_hamiltonian(const OscillatorPair& osc);

/// Classical Hookian pair: mass, common bare frequency, spring coupling rate.
struct HookianSpec {
  double mass;
  double omega;
  double coupling;
};

struct HookianReduction {
  double omega0;       // sqrt(omega^2 + coupling^2)
  double G;            // coupling^2 / (omega^2 + coupling^2)
  double g_effective;  // |x1 x2 coefficient| in dimensionless quadratures
};

HookianReduction hookian_reduce(const HookianSpec& spec);

}  // namespace xxosc
