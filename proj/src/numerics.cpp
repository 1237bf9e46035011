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

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace xxosc {

void require_finite(const Mat4& m, const std::string& what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(what + ": matrix has non-finite entries");
  }
}

Mat4 mat_exp(const Mat4& m) {
  require_finite(m, "mat_exp");
  const Mat4 e = m.exp();
  if (!e.allFinite()) {
    throw NumericalInconsistency("mat_exp: result overflowed");
  }
  return e;
}

Mat4 integrate_matrix(const std::function<Mat4(double)>& f, double t0,
                      double t1, int steps) {
  if (steps < 2) {
    throw std::invalid_argument("integrate_matrix: steps must be >= 2");
  }
  if (!(t1 >= t0)) {
    throw std::invalid_argument("integrate_matrix: requires t1 >= t0");
  }
  if (steps % 2 != 0) ++steps;
  const double h = (t1 - t0) / steps;
  if (h == 0.0) return Mat4::Zero();

  Mat4 odd = Mat4::Zero();
  Mat4 even = Mat4::Zero();
  for (int k = 1; k < steps; ++k) {
    const double t = t0 + k * h;
    if (k % 2 != 0) {
      odd += f(t);
    } else {
      even += f(t);
    }
  }
  return (h / 3.0) * (f(t0) + 4.0 * odd + 2.0 * even + f(t1));
}

Mat4 rk4_integrate(const MatrixRhs& rhs, const Mat4& x0, double t, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("rk4_integrate: dt must be > 0");
  }
  if (!(t >= 0.0)) {
    throw std::invalid_argument("rk4_integrate: t must be >= 0");
  }
  const auto n = static_cast<long>(std::ceil(t / dt - 1e-9));
  Mat4 x = x0;
  double now = 0.0;
  for (long k = 0; k < n; ++k) {
    const double next = (k + 1 == n) ? t : (k + 1) * dt;
    const double h = next - now;
    const Mat4 k1 = rhs(now, x);
    const Mat4 k2 = rhs(now + 0.5 * h, x + 0.5 * h * k1);
    const Mat4 k3 = rhs(now + 0.5 * h, x + 0.5 * h * k2);
    const Mat4 k4 = rhs(now + h, x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    now = next;
  }
  return x;
}

}  // namespace xxosc
