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

#ifndef LSVD_MINKOWSKI_HPP
#define LSVD_MINKOWSKI_HPP

#include <array>
#include <optional>

#include "lsvd/types.hpp"

namespace lsvd {

// Four-vectors live in R^4 with components (x0, x1, x2, x3); x0 is the
// time-like component under the metric G = diag(1, -1, -1, -1).
using FourVector = Vec4;

enum class VectorClass { Positive, Neutral, Negative };

std::string_view to_string(VectorClass c);

/// The Minkowski metric diag(1, -1, -1, -1).
const Mat4& metric();

/// x^T G y.
inline double minkowski_product(const Vec4& x, const Vec4& y) {
  return x(0) * y(0) - x(1) * y(1) - x(2) * y(2) - x(3) * y(3);
}

/// Squared Minkowski norm x^T G x.
inline double minkowski_norm(const Vec4& x) { return minkowski_product(x, x); }

/// Neutral when |x^T G x| <= tol * max(1, |x|^2); otherwise by the sign.
VectorClass classify_four_vector(const Vec4& x, double tol = kDefaultTol);

/// True iff ||L^T G L - G||_max <= tol, |det L - 1| <= tol and L00 > 0.
bool is_orthochronous_proper_lorentz(const Mat4& L, double tol = kDefaultTol);

/// max |L^T G L - G|; zero for an exact Lorentz matrix.
double lorentz_defect(const Mat4& L);

/// Four vectors x_mu with x_mu^T G x_nu = G_mu,nu.
struct Tetrad {
  std::array<Vec4, 4> vectors;

  Mat4 as_columns() const;
  Mat4 as_rows() const;
};

bool validate_g_orthogonal_tetrad(const Tetrad& t, double tol = kDefaultTol);

struct TriadCompletion {
  Tetrad tetrad;  // (y0~, y1, y2, y3~)
  double tau = 0.0;
  double kappa = 0.0;
  Vec4 y3;  // the auxiliary vector the tetrad was built from
};

/// Extends a G-orthogonal triad {y0 (neutral), y1, y2 (unit negative)} to a
/// G-orthonormal tetrad with y0~ = y3 + tau y0 and y3~ = y3 - kappa y0.
///
/// When `y3_hint` is absent the auxiliary vector is the normalized
/// G-projection of e0 onto the G-complement of {y1, y2}. That choice is the
/// completion with the smallest boost, so a triad taken from an already
/// canonical frame completes to the standard basis. A supplied hint is
/// projected onto the same complement first.
///
/// y0~ is returned future-pointing; if that needs a sign flip, y3~ is flipped
/// with it, so y0~ - y3~ stays parallel to y0.
TriadCompletion complete_tetrad_from_neutral_triad(
    const Vec4& y0, const Vec4& y1, const Vec4& y2, double tol = kDefaultTol,
    const std::optional<Vec4>& y3_hint = std::nullopt);

/// Lorentz matrix from a tetrad laid out as rows. If the determinant comes out
/// -1 the row `flip_row` (a negative member) is negated.
Mat4 lorentz_from_rows(const Tetrad& t, int flip_row = 3);

/// Pure boost of rapidity `eta` along spatial axis 1..3.
Mat4 boost(int axis, double eta);

/// Rotation by `angle` about spatial axis 1..3.
Mat4 rotation(int axis, double angle);

}  // namespace lsvd

#endif  // LSVD_MINKOWSKI_HPP
