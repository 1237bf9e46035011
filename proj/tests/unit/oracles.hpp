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

// Reference implementations used only by the tests. None of them call the
// library's exponential, quadrature or covariance code.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <random>

namespace xxosc::oracle {

using M4 = Eigen::Matrix4d;

// Truncated Taylor series with scaling and squaring.
template <typename Mat>
Mat taylor_exp(const Mat& a, int terms = 64) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::ldexp(1.0, squarings) > 0.5) ++squarings;
  const Mat b = a / std::ldexp(1.0, squarings);
  Mat sum = Mat::Identity(a.rows(), a.cols());
  Mat term = sum;
  for (int k = 1; k < terms; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

inline M4 omega() {
  M4 o = M4::Zero();
  o(0, 1) = 1.0;
  o(1, 0) = -1.0;
  o(2, 3) = 1.0;
  o(3, 2) = -1.0;
  return o;
}

// H for (w1/2)(x1^2 + p1^2) + (w2/2)(x2^2 + p2^2) + g x1 x2, order (x1,p1,x2,p2).
inline M4 hamiltonian(double w1, double w2, double g) {
  M4 h = M4::Zero();
  h(0, 0) = h(1, 1) = w1;
  h(2, 2) = h(3, 3) = w2;
  h(0, 2) = h(2, 0) = g;
  return h;
}

inline M4 thermal(double eta1, double eta2) {
  M4 s = M4::Zero();
  s.diagonal() << eta1 + 0.5, eta1 + 0.5, eta2 + 0.5, eta2 + 0.5;
  return s;
}

// Standard two-mode squeezed vacuum: (1/2)[[c I, s Z], [s Z, c I]], Z = diag(1,-1).
inline M4 tmsv(double r) {
  const double c = std::cosh(2.0 * r);
  const double s = std::sinh(2.0 * r);
  M4 m = M4::Zero();
  m.diagonal().setConstant(0.5 * c);
  m(0, 2) = m(2, 0) = 0.5 * s;
  m(1, 3) = m(3, 1) = -0.5 * s;
  return m;
}

// sigma(t) from the 8x8 block exponential exp([[A, D], [0, -A^T]] t).
inline M4 van_loan_sigma(const M4& a, const M4& d, const M4& sigma0, double t) {
  Eigen::Matrix<double, 8, 8> big = Eigen::Matrix<double, 8, 8>::Zero();
  big.topLeftCorner<4, 4>() = a;
  big.topRightCorner<4, 4>() = d;
  big.bottomRightCorner<4, 4>() = -a.transpose();
  const Eigen::Matrix<double, 8, 8> f = taylor_exp<Eigen::Matrix<double, 8, 8>>(big * t);
  const M4 f11 = f.topLeftCorner<4, 4>();
  const M4 f12 = f.topRightCorner<4, 4>();
  return f11 * sigma0 * f11.transpose() + f12 * f11.transpose();
}

// Drift and diffusion for local baths, built straight from the master equation.
inline void drift_diffusion(const M4& h, double g1, double g2, double n1, double n2,
                            M4& a, M4& d) {
  M4 gamma = M4::Zero();
  gamma.diagonal() << g1, g1, g2, g2;
  a = omega() * h - 0.5 * gamma;
  d = M4::Zero();
  d.diagonal() << g1 * (n1 + 0.5), g1 * (n1 + 0.5), g2 * (n2 + 0.5), g2 * (n2 + 0.5);
}

// Partial-transpose seralian and smallest symplectic eigenvalue, naive form.
inline double seralian(const M4& s) {
  return s.topLeftCorner<2, 2>().determinant() +
         s.bottomRightCorner<2, 2>().determinant() -
         2.0 * s.topRightCorner<2, 2>().determinant();
}

// Partial transposition flips p2; the symplectic spectrum of the result is
// |eig(i Omega sigma~)|.
inline double nu_minus_brute_force(const M4& s) {
  M4 flip = M4::Identity();
  flip(3, 3) = -1.0;
  const M4 pt = flip * s * flip;
  const Eigen::EigenSolver<M4> es(omega() * pt);
  double lo = 1e300;
  for (int k = 0; k < 4; ++k) lo = std::min(lo, std::abs(es.eigenvalues()(k).imag()));
  return lo;
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace xxosc::oracle
