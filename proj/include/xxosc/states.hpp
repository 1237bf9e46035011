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

// Zero-mean two-mode Gaussian states at the covariance level. Vacuum is
// sigma = I/2; entanglement follows from the partial-transpose symplectic
// spectrum (seralian, nu~_-, log-negativity).

#pragma once

#include "xxosc/numerics.hpp"

#include <Eigen/LU>

namespace xxosc {

/// Symmetric 4x4 covariance matrix in the mode-wise ordering
/// (x1, p1, x2, p2). Physicality is not enforced here; see check_physical.
class CovarianceMatrix {
 public:
  /// Throws std::invalid_argument if `sigma` has non-finite entries or is
  /// asymmetric beyond 1e-12 relative. The stored matrix is symmetrized.
  explicit CovarianceMatrix(const Mat4& sigma);

  const Mat4& matrix() const { return sigma_; }
  Mat2 block1() const { return sigma_.topLeftCorner<2, 2>(); }
  Mat2 block2() const { return sigma_.bottomRightCorner<2, 2>(); }
  Mat2 cross() const { return sigma_.topRightCorner<2, 2>(); }
  double determinant() const { return sigma_.determinant(); }

 private:
  Mat4 sigma_;
};

/// Mean excitations of the two modes.
struct ThermalSpec {
  double eta1;
  double eta2;

  /// Requires eta_j >= 0.
  ThermalSpec(double eta1, double eta2);

  /// eta_j = 1 / (exp(delta_j) - 1), delta_j = w_j / (k_B T_j) > 0.
  static ThermalSpec from_deltas(double delta1, double delta2);
};

double eta_from_delta(double delta);

/// diag((eta1 + 1/2) I, (eta2 + 1/2) I).
CovarianceMatrix thermal_covariance(const ThermalSpec& spec);

/// Det s1 + Det s2 - 2 Det gamma.
double seralian(const CovarianceMatrix& sigma);

/// Smallest partial-transpose symplectic eigenvalue from the seralian and
/// Det sigma. Throws NumericalInconsistency when Delta^2 - 4 det is
/// negative beyond round-off, or det <= 0.
double nu_minus_pt(double seralian, double det);
double nu_minus_pt(const CovarianceMatrix& sigma);

/// Values of -ln(2 nu~_-) at or below this are round-off on a separable
/// state and reported as exactly zero.
inline constexpr double kSeparabilityFloor = 1e-12;

/// max(0, -ln(2 nu~_-)), natural logarithm, with kSeparabilityFloor applied.
double log_negativity(const CovarianceMatrix& sigma);
double log_negativity_from_nu(double nu_minus);

/// Tr rho^2 = 1 / (4 sqrt(Det sigma)); 1 on the vacuum.
double purity(const CovarianceMatrix& sigma);
double purity_from_det(double det);

struct PhysicalityReport {
  bool physical;
  double nu_minus;  // smaller symplectic eigenvalue (NaN if undefined)
  double nu_plus;
};

/// Physical iff both symplectic eigenvalues are >= 1/2 - 1e-9.
PhysicalityReport check_physical(const CovarianceMatrix& sigma);

/// A covariance matrix kept as sigma = M M^T with M = S L0, where
/// sigma0 = L0 L0^T and S is a product of symplectic propagators.
///
/// Under strong symplectic growth sigma becomes so ill-conditioned that
/// Det sigma and nu~_- are lost when computed from sigma itself. Here
/// Det sigma is carried exactly (Det S = 1) and block determinants are
/// assembled from 2x2 minors of M (Cauchy-Binet), so the cancellation
/// happens at the scale of S rather than of S S^T.
class FactoredCovariance {
 public:
  /// Throws std::invalid_argument if sigma0 is not positive definite.
  explicit FactoredCovariance(const CovarianceMatrix& sigma0);

  /// State after applying a symplectic map: M -> S M. `symplectic` must
  /// satisfy S^T Omega S = Omega; this is not re-checked.
  FactoredCovariance evolved(const Mat4& symplectic) const;

  CovarianceMatrix covariance() const;
  const Mat4& factor() const { return factor_; }
  double determinant() const { return det_; }

  double seralian() const;
  double nu_minus_pt() const;
  double log_negativity() const;
  double purity() const;

 private:
  FactoredCovariance(const Mat4& factor, double det) : factor_(factor), det_(det) {}

  Mat4 factor_;
  double det_;
};

}  // namespace xxosc
