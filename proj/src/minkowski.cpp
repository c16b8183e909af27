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

#include "lsvd/minkowski.hpp"

#include <cmath>
#include <sstream>

namespace lsvd {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::NotAState: return "NotAState";
    case ErrorKind::NotUnitDeterminant: return "NotUnitDeterminant";
    case ErrorKind::FilterAnnihilatesState: return "FilterAnnihilatesState";
    case ErrorKind::PositivityTransferViolated: return "PositivityTransferViolated";
    case ErrorKind::TriadNotGOrthogonal: return "TriadNotGOrthogonal";
    case ErrorKind::DegenerateCompletion: return "DegenerateCompletion";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::NormalizationFailure: return "NormalizationFailure";
    case ErrorKind::PoleEvaluation: return "PoleEvaluation";
    case ErrorKind::NotTypeI: return "NotTypeI";
    case ErrorKind::NotTypeII: return "NotTypeII";
    case ErrorKind::SingularTopEigenvalue: return "SingularTopEigenvalue";
    case ErrorKind::InvalidSigmaParameters: return "InvalidSigmaParameters";
    case ErrorKind::InvalidCanonicalParameters: return "InvalidCanonicalParameters";
    case ErrorKind::DegenerateProductGeometry: return "DegenerateProductGeometry";
  }
  return "Unknown";
}

std::string_view to_string(VectorClass c) {
  switch (c) {
    case VectorClass::Positive: return "Positive";
    case VectorClass::Neutral: return "Neutral";
    case VectorClass::Negative: return "Negative";
  }
  return "Unknown";
}

const Mat4& metric() {
  static const Mat4 g = Vec4(1.0, -1.0, -1.0, -1.0).asDiagonal();
  return g;
}

VectorClass classify_four_vector(const Vec4& x, double tol) {
  const double norm = minkowski_norm(x);
  if (std::abs(norm) <= tol * std::max(1.0, x.squaredNorm())) {
    return VectorClass::Neutral;
  }
  return norm > 0.0 ? VectorClass::Positive : VectorClass::Negative;
}

double lorentz_defect(const Mat4& L) {
  return (L.transpose() * metric() * L - metric()).cwiseAbs().maxCoeff();
}

bool is_orthochronous_proper_lorentz(const Mat4& L, double tol) {
  return lorentz_defect(L) <= tol && std::abs(L.determinant() - 1.0) <= tol &&
         L(0, 0) > 0.0;
}

Mat4 Tetrad::as_columns() const {
  Mat4 m;
  for (int i = 0; i < 4; ++i) m.col(i) = vectors[i];
  return m;
}

Mat4 Tetrad::as_rows() const { return as_columns().transpose(); }

bool validate_g_orthogonal_tetrad(const Tetrad& t, double tol) {
  const Mat4& g = metric();
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu; nu < 4; ++nu) {
      const double scale =
          std::max(1.0, t.vectors[mu].norm() * t.vectors[nu].norm());
      const double value = minkowski_product(t.vectors[mu], t.vectors[nu]);
      if (std::abs(value - g(mu, nu)) > tol * scale) return false;
    }
  }
  return true;
}

namespace {

// G-orthogonal projection onto the complement of span{y1, y2}.
Vec4 project_off(const Vec4& v, const Vec4& y1, const Vec4& y2) {
  Eigen::Matrix2d gram;
  gram << minkowski_product(y1, y1), minkowski_product(y1, y2),
      minkowski_product(y2, y1), minkowski_product(y2, y2);
  const Eigen::Vector2d rhs(minkowski_product(v, y1), minkowski_product(v, y2));
  const Eigen::Vector2d c = gram.partialPivLu().solve(rhs);
  return v - c(0) * y1 - c(1) * y2;
}

}  // namespace

TriadCompletion complete_tetrad_from_neutral_triad(
    const Vec4& y0, const Vec4& y1, const Vec4& y2, double tol,
    const std::optional<Vec4>& y3_hint) {
  auto off = [tol](const Vec4& a, const Vec4& b, double expected) {
    const double scale = std::max(1.0, a.norm() * b.norm());
    return std::abs(minkowski_product(a, b) - expected) > tol * scale;
  };
  if (y0.norm() == 0.0 || off(y0, y0, 0.0) || off(y0, y1, 0.0) ||
      off(y0, y2, 0.0) || off(y1, y1, -1.0) || off(y2, y2, -1.0) ||
      off(y1, y2, 0.0)) {
    std::ostringstream msg;
    msg << "triad is not G-orthogonal: y0.y0=" << minkowski_norm(y0)
        << " y0.y1=" << minkowski_product(y0, y1)
        << " y0.y2=" << minkowski_product(y0, y2)
        << " y1.y1=" << minkowski_norm(y1) << " y2.y2=" << minkowski_norm(y2)
        << " y1.y2=" << minkowski_product(y1, y2);
    throw Error(ErrorKind::TriadNotGOrthogonal, msg.str());
  }

  Vec4 y3;
  if (y3_hint) {
    y3 = project_off(*y3_hint, y1, y2);
  } else {
    y3 = project_off(Vec4::UnitX(), y1, y2);
    const double n = minkowski_norm(y3);
    if (n <= 0.0) {
      throw Error(ErrorKind::DegenerateCompletion,
                  "projection of e0 onto the triad complement is not positive");
    }
    y3 /= std::sqrt(n);
  }

  const double overlap = minkowski_product(y3, y0);
  if (std::abs(overlap) <= tol * std::max(1.0, y3.norm() * y0.norm())) {
    throw Error(ErrorKind::DegenerateCompletion,
                "auxiliary vector is G-orthogonal to the neutral vector");
  }
  const double y3y3 = minkowski_norm(y3);

  TriadCompletion out;
  out.y3 = y3;
  out.tau = (1.0 - y3y3) / (2.0 * overlap);
  out.kappa = (1.0 + y3y3) / (2.0 * overlap);
  Vec4 t0 = y3 + out.tau * y0;
  Vec4 t3 = y3 - out.kappa * y0;
  if (t0(0) < 0.0) {
    t0 = -t0;
    t3 = -t3;
  }
  out.tetrad.vectors = {t0, y1, y2, t3};
  return out;
}

Mat4 lorentz_from_rows(const Tetrad& t, int flip_row) {
  Mat4 L = t.as_rows();
  if (L.determinant() < 0.0) L.row(flip_row) *= -1.0;
  return L;
}

namespace {

void check_axis(int axis) {
  if (axis < 1 || axis > 3) {
    throw Error(ErrorKind::InvalidInput, "spatial axis must be 1, 2 or 3");
  }
}

}  // namespace

Mat4 boost(int axis, double eta) {
  check_axis(axis);
  Mat4 L = Mat4::Identity();
  L(0, 0) = L(axis, axis) = std::cosh(eta);
  L(0, axis) = L(axis, 0) = std::sinh(eta);
  return L;
}

Mat4 rotation(int axis, double angle) {
  check_axis(axis);
  Mat4 L = Mat4::Identity();
  const int i = axis % 3 + 1;
  const int j = (axis + 1) % 3 + 1;
  L(i, i) = L(j, j) = std::cos(angle);
  L(i, j) = -std::sin(angle);
  L(j, i) = std::sin(angle);
  return L;
}

}  // namespace lsvd
