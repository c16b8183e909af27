// Copyright 2026 The lsvd Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Shared helpers for the unit tests. Everything here is written out by hand
// so the tests do not lean on the library for their reference values.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "lsvd/types.hpp"

namespace lsvd::test {

using C = std::complex<double>;

inline std::array<CMat2, 4> paulis() {
  std::array<CMat2, 4> s;
  s[0] << 1, 0, 0, 1;
  s[1] << 0, 1, 1, 0;
  s[2] << 0, C(0, -1), C(0, 1), 0;
  s[3] << 1, 0, 0, -1;
  return s;
}

inline CMat4 kron2(const CMat2& a, const CMat2& b) {
  CMat4 k;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k2 = 0; k2 < 2; ++k2)
        for (int l = 0; l < 2; ++l) k(2 * i + k2, 2 * j + l) = a(i, j) * b(k2, l);
  return k;
}

// Lambda_{mu nu} = Tr[rho sigma_mu x sigma_nu], element by element.
inline Mat4 lambda_direct(const CMat4& rho) {
  const auto s = paulis();
  Mat4 m;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      const CMat4 p = kron2(s[mu], s[nu]);
      C t = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t += rho(i, j) * p(j, i);
      m(mu, nu) = t.real();
    }
  }
  return m;
}

inline Mat4 g_metric() { return Vec4(1, -1, -1, -1).asDiagonal(); }

inline Mat4 hand_boost(int axis, double eta) {
  Mat4 b = Mat4::Identity();
  b(0, 0) = b(axis, axis) = std::cosh(eta);
  b(0, axis) = b(axis, 0) = std::sinh(eta);
  return b;
}

inline Mat4 hand_rotation(int axis, double t) {
  const int i = axis % 3 + 1;
  const int j = (axis + 1) % 3 + 1;
  Mat4 r = Mat4::Identity();
  r(i, i) = r(j, j) = std::cos(t);
  r(i, j) = -std::sin(t);
  r(j, i) = std::sin(t);
  return r;
}

// Random element of SO(3,1)^+ as a product of axis boosts and rotations.
inline Mat4 random_lorentz(std::mt19937_64& rng, double max_rapidity = 1.5) {
  std::uniform_real_distribution<double> eta(-max_rapidity, max_rapidity);
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  Mat4 L = Mat4::Identity();
  for (int k = 0; k < 3; ++k) {
    L = L * hand_rotation(k + 1, ang(rng)) * hand_boost(k + 1, eta(rng));
  }
  return L;
}

inline double max_abs(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }

// Bell-diagonal density matrix from the Pauli diagonal (1, t1, t2, t3).
inline CMat4 bell_diagonal(double t1, double t2, double t3) {
  const auto s = paulis();
  CMat4 rho = kron2(s[0], s[0]);
  rho += t1 * kron2(s[1], s[1]) + t2 * kron2(s[2], s[2]) + t3 * kron2(s[3], s[3]);
  return rho / 4.0;
}

}  // namespace lsvd::test
