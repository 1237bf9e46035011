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

#include "xxosc/states.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace xxosc {

CovarianceMatrix::CovarianceMatrix(const Mat4& sigma) {
  require_finite(sigma, "CovarianceMatrix");
  const double asym = max_abs(sigma - sigma.transpose());
  if (asym > 1e-12 * std::max(1.0, max_abs(sigma))) {
    throw std::invalid_argument("CovarianceMatrix: matrix is not symmetric");
  }
  sigma_ = 0.5 * (sigma + sigma.transpose());
}

ThermalSpec::ThermalSpec(double eta1_in, double eta2_in)
    : eta1(eta1_in), eta2(eta2_in) {
  if (!std::isfinite(eta1) || !(eta1 >= 0.0) || !std::isfinite(eta2) ||
      !(eta2 >= 0.0)) {
    throw std::invalid_argument("ThermalSpec: mean excitations must be >= 0");
  }
}

ThermalSpec ThermalSpec::from_deltas(double delta1, double delta2) {
  return {eta_from_delta(delta1), eta_from_delta(delta2)};
}

double eta_from_delta(double delta) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("eta_from_delta: delta must be > 0");
  }
  return 1.0 / std::expm1(delta);
}

CovarianceMatrix thermal_covariance(const ThermalSpec& spec) {
  Mat4 sigma = Mat4::Zero();
  sigma.diagonal() << spec.eta1 + 0.5, spec.eta1 + 0.5, spec.eta2 + 0.5,
      spec.eta2 + 0.5;
  return CovarianceMatrix(sigma);
}

double seralian(const CovarianceMatrix& sigma) {
  return sigma.block1().determinant() + sigma.block2().determinant() -
         2.0 * sigma.cross().determinant();
}

double nu_minus_pt(double seralian, double det) {
  if (!(det > 0.0)) {
    throw NumericalInconsistency("nu_minus_pt: Det sigma must be > 0");
  }
  double disc = seralian * seralian - 4.0 * det;
  if (disc < 0.0) {
    if (disc < -1e-12 * std::max(1.0, seralian * seralian)) {
      throw NumericalInconsistency(
          "nu_minus_pt: Delta^2 < 4 Det sigma, covariance is unphysical");
    }
    disc = 0.0;
  }
  // (Delta - sqrt(disc)) / 2 rewritten without the cancellation.
  return std::sqrt(2.0 * det / (seralian + std::sqrt(disc)));
}

double nu_minus_pt(const CovarianceMatrix& sigma) {
  return nu_minus_pt(seralian(sigma), sigma.determinant());
}

double log_negativity_from_nu(double nu_minus) {
  const double en = -std::log(2.0 * nu_minus);
  return en > kSeparabilityFloor ? en : 0.0;
}

double log_negativity(const CovarianceMatrix& sigma) {
  return log_negativity_from_nu(nu_minus_pt(sigma));
}

double purity_from_det(double det) {
  if (!(det > 0.0)) {
    throw NumericalInconsistency("purity: Det sigma must be > 0");
  }
  return 1.0 / (4.0 * std::sqrt(det));
}

double purity(const CovarianceMatrix& sigma) {
  return purity_from_det(sigma.determinant());
}

PhysicalityReport check_physical(const CovarianceMatrix& sigma) {
  constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
  const double det = sigma.determinant();
  const double delta = sigma.block1().determinant() +
                       sigma.block2().determinant() +
                       2.0 * sigma.cross().determinant();
  const double disc = delta * delta - 4.0 * det;
  if (det <= 0.0 || delta <= 0.0 || disc < -1e-12 * std::max(1.0, delta * delta)) {
    return {false, kNan, kNan};
  }
  const double root = std::sqrt(std::max(disc, 0.0));
  const double nu_plus = std::sqrt(0.5 * (delta + root));
  const double nu_minus = std::sqrt(2.0 * det / (delta + root));
  // Positive definiteness of sigma is needed on top of the spectrum.
  const bool pd = sigma.matrix().llt().info() == Eigen::Success;
  return {pd && nu_minus >= 0.5 - 1e-9, nu_minus, nu_plus};
}

namespace {

// 2x2 minors of rows (r, s) over the six column pairs i < j.
std::array<double, 6> row_minors(const Mat4& m, int r, int s) {
  std::array<double, 6> out{};
  int k = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      out[k++] = m(r, i) * m(s, j) - m(r, j) * m(s, i);
    }
  }
  return out;
}

}  // namespace

FactoredCovariance::FactoredCovariance(const CovarianceMatrix& sigma0) {
  const Eigen::LLT<Mat4> llt(sigma0.matrix());
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument(
        "FactoredCovariance: covariance is not positive definite");
  }
  factor_ = llt.matrixL();
  const double diag_prod = factor_.diagonal().prod();
  det_ = diag_prod * diag_prod;
}

FactoredCovariance FactoredCovariance::evolved(const Mat4& symplectic) const {
  return {symplectic * factor_, det_};
}

CovarianceMatrix FactoredCovariance::covariance() const {
  return CovarianceMatrix(factor_ * factor_.transpose());
}

double FactoredCovariance::seralian() const {
  // Det s1 + Det s2 - 2 Det gamma = sum_k (top_k - bottom_k)^2 by
  // Cauchy-Binet on the row pairs (x1, p1) and (x2, p2) of M.
  const auto top = row_minors(factor_, 0, 1);
  const auto bottom = row_minors(factor_, 2, 3);
  double delta = 0.0;
  for (int k = 0; k < 6; ++k) {
    const double d = top[k] - bottom[k];
    delta += d * d;
  }
  return delta;
}

double FactoredCovariance::nu_minus_pt() const {
  return xxosc::nu_minus_pt(seralian(), det_);
}

double FactoredCovariance::log_negativity() const {
  return log_negativity_from_nu(nu_minus_pt());
}

double FactoredCovariance::purity() const { return purity_from_det(det_); }

}  // namespace xxosc
