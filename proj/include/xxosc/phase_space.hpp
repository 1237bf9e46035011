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

// Phase-space conventions shared by every module.
//
// Canonical ordering is mode-wise, r = (x1, p1, x2, p2). The block ordering
// R = (x1, x2, p1, p2) is reached through block_permutation(): R = P r.
// The symplectic form is Omega = [[0,1],[-1,0]] (+) [[0,1],[-1,0]], so that
// [r_j, r_k] = i Omega_jk and a quadratic Hamiltonian (1/2) r^T H r drives
// dr/dt = Omega H r.

#pragma once

#include "xxosc/numerics.hpp"

namespace xxosc {

inline constexpr int kX1 = 0;
inline constexpr int kP1 = 1;
inline constexpr int kX2 = 2;
inline constexpr int kP2 = 3;

inline Mat4 symplectic_form() {
  Mat4 omega = Mat4::Zero();
  omega(kX1, kP1) = 1.0;
  omega(kP1, kX1) = -1.0;
  omega(kX2, kP2) = 1.0;
  omega(kP2, kX2) = -1.0;
  return omega;
}

/// Permutation P with (x1, x2, p1, p2) = P (x1, p1, x2, p2).
inline Mat4 block_permutation() {
  Mat4 p = Mat4::Zero();
  p(0, kX1) = 1.0;
  p(1, kX2) = 1.0;
  p(2, kP1) = 1.0;
  p(3, kP2) = 1.0;
  return p;
}

inline Mat4 to_block_basis(const Mat4& modewise) {
  const Mat4 p = block_permutation();
  return p * modewise * p.transpose();
}

inline Mat4 to_modewise_basis(const Mat4& block) {
  const Mat4 p = block_permutation();
  return p.transpose() * block * p;
}

/// max |S^T Omega S - Omega|.
inline double symplectic_residual(const Mat4& s) {
  const Mat4 omega = symplectic_form();
  return max_abs(s.transpose() * omega * s - omega);
}

}  // namespace xxosc
