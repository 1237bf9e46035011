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

#pragma once

#include <Eigen/Core>

#include <functional>
#include <stdexcept>
#include <string>

namespace xxosc {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;

/// Raised when a quantity that must be consistent by construction is not,
/// e.g. a covariance matrix whose partial-transpose spectrum is complex.
class NumericalInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for inputs that are valid numbers but leave an operation without
/// a unique answer (zero coupling handed to the diagonalizer).
class DegenerateInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws std::invalid_argument naming `what` if any entry is NaN or Inf.
void require_finite(const Mat4& m, const std::string& what);

/// Matrix exponential by scaling-and-squaring. Throws std::invalid_argument
/// on non-finite input and NumericalInconsistency if the result overflows.
Mat4 mat_exp(const Mat4& m);

/// Composite Simpson quadrature of a matrix-valued function on [t0, t1].
/// An odd `steps` is rounded up to the next even count. Requires steps >= 2
/// and t1 >= t0.
Mat4 integrate_matrix(const std::function<Mat4(double)>& f, double t0,
                      double t1, int steps);

using MatrixRhs = std::function<Mat4(double, const Mat4&)>;

/// Classical fourth-order Runge-Kutta for dX/dt = rhs(t, X) from 0 to t.
/// The final step is shortened so the result lands exactly on t.
Mat4 rk4_integrate(const MatrixRhs& rhs, const Mat4& x0, double t, double dt);

/// Largest absolute entry.
inline double max_abs(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace xxosc
