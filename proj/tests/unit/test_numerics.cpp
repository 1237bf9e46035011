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

#include "xxosc/numerics.hpp"
#include "xxosc/phase_space.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <complex>
#include <limits>

namespace xxosc {
namespace {

TEST(MatExp, ZeroIsIdentity) {
  EXPECT_TRUE(mat_exp(Mat4::Zero()).isApprox(Mat4::Identity(), 0.0));
}

TEST(MatExp, DiagonalExponentiatesEntries) {
  Mat4 d = Mat4::Zero();
  d.diagonal() << 0.3, -1.2, 2.0, 0.0;
  const Mat4 e = mat_exp(d);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(e(i, i), std::exp(d(i, i)), 1e-14 * std::exp(d(i, i)));
  }
  EXPECT_NEAR((e - Mat4(e.diagonal().asDiagonal())).norm(), 0.0, 1e-15);
}

TEST(MatExp, BlockRotationMatchesTaylorSeries) {
  const double theta = 0.7;
  const Mat4 j = symplectic_form();
  const Mat4 e = mat_exp(theta * j);
  EXPECT_LT(max_abs(e - oracle::taylor_exp<Mat4>(theta * j)), 1e-14);
  EXPECT_NEAR(e(kX1, kX1), std::cos(theta), 1e-15);
  EXPECT_NEAR(e(kX1, kP1), std::sin(theta), 1e-15);
  EXPECT_NEAR(e(kP2, kX2), -std::sin(theta), 1e-15);
}

TEST(MatExp, RandomMatricesAgreeWithTaylorSeries) {
  auto gen = oracle::rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    Mat4 m;
    for (int i = 0; i < 16; ++i) m(i / 4, i % 4) = u(gen);
    const Mat4 ref = oracle::taylor_exp<Mat4>(m);
    EXPECT_LT(max_abs(mat_exp(m) - ref), 1e-12 * std::max(1.0, max_abs(ref)));
  }
}

TEST(MatExp, InverseProperty) {
  Mat4 m;
  m << 0.1, 1.0, 0.3, 0.0, -1.0, 0.2, 0.0, 0.4, 0.3, 0.0, -0.5, 1.0, 0.0, 0.4,
      -1.0, 0.0;
  EXPECT_LT(max_abs(mat_exp(m) * mat_exp(-m) - Mat4::Identity()), 1e-13);
}

TEST(MatExp, NonFiniteInputThrows) {
  Mat4 m = Mat4::Zero();
  m(1, 2) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(mat_exp(m), std::invalid_argument);
  m(1, 2) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(mat_exp(m), std::invalid_argument);
}

TEST(MatExp, OverflowThrows) {
  EXPECT_THROW(mat_exp(Mat4::Identity() * 1e4), NumericalInconsistency);
}

TEST(IntegrateMatrix, ConstantIsExact) {
  Mat4 c;
  c.setConstant(3.25);
  for (const int steps : {2, 3, 10, 101}) {
    const Mat4 r = integrate_matrix([&c](double) { return c; }, 0.0, 1.0, steps);
    EXPECT_LT(max_abs(r - c), 1e-14) << steps;
  }
}

TEST(IntegrateMatrix, LinearIsExact) {
  const Mat4 r = integrate_matrix(
      [](double t) { return Mat4(t * Mat4::Identity()); }, 0.0, 2.0, 100);
  EXPECT_LT(max_abs(r - 2.0 * Mat4::Identity()), 1e-13);
}

TEST(IntegrateMatrix, CubicIsExact) {
  const Mat4 r = integrate_matrix(
      [](double t) { return Mat4(Mat4::Constant(t * t * t)); }, -1.0, 3.0, 4);
  EXPECT_LT(max_abs(r - Mat4::Constant(20.0)), 1e-12);
}

TEST(IntegrateMatrix, EmptyIntervalIsZero) {
  const Mat4 r = integrate_matrix([](double) { return Mat4::Ones(); }, 1.5, 1.5, 10);
  EXPECT_EQ(max_abs(r), 0.0);
}

TEST(IntegrateMatrix, RejectsBadArguments) {
  auto f = [](double) { return Mat4::Identity(); };
  EXPECT_THROW(integrate_matrix(f, 0.0, 1.0, 1), std::invalid_argument);
  EXPECT_THROW(integrate_matrix(f, 1.0, 0.0, 10), std::invalid_argument);
}

// Closed-form Lyapunov integral from the eigen-decomposition of A.
Mat4 lyapunov_integral(const Mat4& a, const Mat4& d, double t) {
  using C = std::complex<double>;
  const Eigen::EigenSolver<Mat4> es(a);
  const Eigen::Matrix4cd v = es.eigenvectors();
  const Eigen::Vector4cd l = es.eigenvalues();
  const Eigen::Matrix4cd vi = v.inverse();
  Eigen::Matrix4cd q = vi * d.cast<C>() * vi.transpose();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const C z = l(i) + l(j);
      q(i, j) *= (std::exp(z * t) - 1.0) / z;
    }
  }
  return (v * q * v.transpose()).real();
}

TEST(IntegrateMatrix, LyapunovIntegralMatchesEigenOracle) {
  Mat4 a;
  a << -0.3, 1.0, 0.2, 0.0, -1.0, -0.3, 0.0, 0.0, 0.0, 0.0, -0.1, 2.0, -0.4,
      0.0, -2.0, -0.1;
  Mat4 d = Mat4::Zero();
  d.diagonal() << 0.5, 0.5, 0.2, 0.2;
  const double t = 3.0;
  const Mat4 num = integrate_matrix(
      [&](double s) {
        const Mat4 k = oracle::taylor_exp<Mat4>(a * s);
        return Mat4(k * d * k.transpose());
      },
      0.0, t, 3000);
  EXPECT_LT(max_abs(num - lyapunov_integral(a, d, t)), 1e-11);
}

TEST(Rk4, ZeroRhsLeavesStateUnchanged) {
  Mat4 x0;
  x0.setRandom();
  const Mat4 x = rk4_integrate([](double, const Mat4&) { return Mat4::Zero(); },
                               x0, 5.0, 0.1);
  EXPECT_EQ(max_abs(x - x0), 0.0);
}

TEST(Rk4, ScalarDecay) {
  const Mat4 x = rk4_integrate([](double, const Mat4& s) { return Mat4(-s); },
                               Mat4::Identity(), 1.0, 1e-3);
  EXPECT_LT(max_abs(x - std::exp(-1.0) * Mat4::Identity()), 1e-10);
}

TEST(Rk4, FinalStepLandsOnEndpoint) {
  // dx/dt = 1 integrates to exactly t whatever the step.
  const Mat4 x = rk4_integrate(
      [](double, const Mat4&) { return Mat4::Ones(); }, Mat4::Zero(), 1.0, 0.3);
  EXPECT_NEAR(x(0, 0), 1.0, 1e-15);
}

TEST(Rk4, TimeDependentRhs) {
  const Mat4 x = rk4_integrate(
      [](double t, const Mat4&) { return Mat4(Mat4::Constant(std::cos(t))); },
      Mat4::Zero(), 2.0, 1e-3);
  EXPECT_NEAR(x(2, 1), std::sin(2.0), 1e-12);
}

TEST(Rk4, RejectsBadArguments) {
  auto f = [](double, const Mat4& s) { return s; };
  EXPECT_THROW(rk4_integrate(f, Mat4::Identity(), 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(rk4_integrate(f, Mat4::Identity(), -1.0, 0.1), std::invalid_argument);
}

TEST(RequireFinite, Throws) {
  Mat4 m = Mat4::Identity();
  EXPECT_NO_THROW(require_finite(m, "ok"));
  m(0, 0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(require_finite(m, "bad"), std::invalid_argument);
}

TEST(PhaseSpace, BlockPermutationRoundTrips) {
  Mat4 m;
  m.setRandom();
  EXPECT_EQ(max_abs(to_modewise_basis(to_block_basis(m)) - m), 0.0);
  const Mat4 o = to_block_basis(symplectic_form());
  Mat4 expected = Mat4::Zero();
  expected.topRightCorner<2, 2>() = Mat2::Identity();
  expected.bottomLeftCorner<2, 2>() = -Mat2::Identity();
  EXPECT_EQ(max_abs(o - expected), 0.0);
}

}  // namespace
}  // namespace xxosc
