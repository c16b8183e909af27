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

#include "lsvd/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lsvd {

namespace {

constexpr double kZeroEigen = 1e-12;
constexpr double kPipelineTol = 1e-8;

double lorentz_residual(const Mat4& L) {
  return std::max(lorentz_defect(L), std::abs(L.determinant() - 1.0));
}

// Fills rows of L_B that could not be obtained from Lambda (vanishing
// eigenvalue) with G-orthonormal spacelike vectors.
void complete_rows(std::array<Vec4, 4>& rows, std::array<bool, 4>& known) {
  for (int i = 1; i < 4; ++i) {
    if (known[i]) continue;
    Vec4 best = Vec4::Zero();
    double best_n = 0.0;
    for (int s = 0; s < 4; ++s) {
      Vec4 x = Vec4::Unit(s);
      for (int j = 0; j < 4; ++j) {
        if (!known[j]) continue;
        x -= (minkowski_product(rows[j], x) / minkowski_norm(rows[j])) * rows[j];
      }
      const double n = minkowski_norm(x);
      if (n < best_n) {
        best = x;
        best_n = n;
      }
    }
    if (!(best_n < -1e-8)) {
      throw Error(ErrorKind::NumericalFailure,
                  "cannot complete the right Lorentz factor");
    }
    rows[i] = best / std::sqrt(-best_n);
    known[i] = true;
  }
}

// G-Gram-Schmidt over the rows in the given order, run twice.
__extension__ typedef __float128 Quad;
using QVec = std::array<Quad, 4>;

Quad qproduct(const QVec& x, const QVec& y) {
  return x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3];
}

Quad qsqrt(Quad x) {
  Quad r = std::sqrt(static_cast<double>(x));
  for (int i = 0; i < 3; ++i) r = 0.5 * (r + x / r);
  return r;
}

// G-Gram-Schmidt on the rows in quad precision, so the rounded result is
// Lorentz up to the representation error of its entries.
Mat4 polish_lorentz(const Mat4& L, const std::array<int, 4>& order) {
  std::array<QVec, 4> rows;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rows[i][j] = L(i, j);
  for (int pass = 0; pass < 2; ++pass) {
    for (int k = 0; k < 4; ++k) {
      QVec& x = rows[order[k]];
      for (int j = 0; j < k; ++j) {
        const QVec& y = rows[order[j]];
        const Quad c = qproduct(y, x) / qproduct(y, y);
        for (int m = 0; m < 4; ++m) x[m] -= c * y[m];
      }
      Quad n = qproduct(x, x);
      if (n < 0) n = -n;
      const Quad r = qsqrt(n);
      for (int m = 0; m < 4; ++m) x[m] /= r;
    }
  }
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = static_cast<double>(rows[i][j]);
  return out;
}

Mat4 rows_to_matrix(const std::array<Vec4, 4>& rows) {
  Mat4 L;
  for (int i = 0; i < 4; ++i) L.row(i) = rows[i].transpose();
  return L;
}

struct Type2Frames {
  Mat4 left = Mat4::Identity();
  Mat4 right = Mat4::Identity();
  double phi0 = 0.0;
  double r1 = 0.0;
};

// Left factor with rows (t0, a1, a2, t3). The right factor has b0, b3 from
// G X^T t0, G X^T t3; b1, b2 span their complement, rotated by the 2x2
// orthogonal fit that makes left X right^T diagonal there with signs (+, -).
Type2Frames type2_frames(const Mat4& X, const Mat4& omega, const Vec4& t0,
                         const Vec4& a1, const Vec4& a2, const Vec4& t3,
                         double l0) {
  const Mat4& G = metric();
  Type2Frames f;
  f.left.row(0) = t0.transpose();
  f.left.row(1) = a1.transpose();
  f.left.row(2) = a2.transpose();
  f.left.row(3) = t3.transpose();
  if (f.left.determinant() < 0.0) f.left.row(2) *= -1.0;
  f.left = polish_lorentz(f.left, {1, 2, 0, 3});
  const Vec4 p0 = f.left.row(0).transpose();
  const Vec4 p3 = f.left.row(3).transpose();

  f.phi0 = p0.dot(omega * p0);
  if (!(f.phi0 > 0.0)) {
    throw Error(ErrorKind::NumericalFailure, "phi0 is not positive");
  }
  const double sphi = std::sqrt(f.phi0);
  const double r0 = l0 / f.phi0;

  std::array<Vec4, 4> b;
  std::array<bool, 4> known{true, false, false, true};
  b[0] = G * X.transpose() * p0 / sphi;
  b[3] = ((1.0 - r0) * b[0] - G * X.transpose() * p3 / sphi) / r0;
  complete_rows(b, known);
  if (rows_to_matrix(b).determinant() < 0.0) b[2] = -b[2];

  Eigen::Matrix2d T;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      T(i, j) = f.left.row(i + 1).dot(X * b[j + 1]);
  const Eigen::Matrix2d S = Eigen::Vector2d(1.0, -1.0).asDiagonal();
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(S * T, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix2d U = svd.matrixU();
  const Eigen::Matrix2d V = svd.matrixV();
  Eigen::Vector2d sv = svd.singularValues();
  if ((U * V.transpose()).determinant() < 0.0) {
    if (sv(1) > 1e-6 * sphi) {
      throw Error(ErrorKind::InvalidCanonicalParameters,
                  "non-diagonal form requires det Lambda < 0");
    }
    U.col(1) *= -1.0;
    sv(1) = -sv(1);
  }
  const Eigen::Matrix2d Q = U * V.transpose();
  const Vec4 c1 = b[1];
  const Vec4 c2 = b[2];
  b[1] = Q(0, 0) * c1 + Q(0, 1) * c2;
  b[2] = Q(1, 0) * c1 + Q(1, 1) * c2;
  f.r1 = std::max(0.5 * (sv(0) + sv(1)), 0.0) / sphi;
  f.right = polish_lorentz(rows_to_matrix(b), {0, 3, 1, 2});
  return f;
}

CanonicalResult finish(Family family, const RealParametrization& lam,
                       const Mat4& left, const Mat4& right, const Mat4& form,
                       double tol) {
  CanonicalResult r;
  r.family = family;
  r.left_lorentz = left;
  r.right_lorentz = right;
  const Mat4 M = left * lam.m * right.transpose();
  r.normalization_scale = M(0, 0);
  r.canonical_lambda = RealParametrization(form);
  r.canonical_rho = pauli_sum(form);
  r.residuals.factorization = (M / M(0, 0) - form).cwiseAbs().maxCoeff();
  r.residuals.left_lorentz = lorentz_residual(left);
  r.residuals.right_lorentz = lorentz_residual(right);
  r.residuals.rho_min_eigenvalue = is_valid_state(r.canonical_rho, tol).min_eigenvalue;
  return r;
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::TypeI: return "TypeI";
    case Family::TypeII_A: return "TypeII_A";
    case Family::TypeII_B: return "TypeII_B";
    case Family::DegenerateProduct: return "DegenerateProduct";
  }
  return "?";
}

Mat4 type1_form(const Vec3& xi) {
  return Vec4(1.0, xi(0), xi(1), xi(2)).asDiagonal();
}

Mat4 type2_form_a(double r0, double r1) {
  Mat4 m = Mat4::Zero();
  m(0, 0) = 1.0;
  m(1, 1) = r1;
  m(2, 2) = -r1;
  m(3, 0) = 1.0 - r0;
  m(3, 3) = r0;
  return m;
}

Mat4 type2_form_b(double s0, double s1) {
  return type2_form_a(s0, s1).transpose();
}

CanonicalResult type1_canonical(const RealParametrization& lam,
                                const GEigenSystem& sys_a,
                                const GEigenSystem& sys_b, double tol) {
  if (classify_canonical_type(sys_a) != CanonicalType::TypeI) {
    throw Error(ErrorKind::NotTypeI, "top eigenvector is not positive");
  }
  const Vec4 l = sys_a.eigenvalues;
  if (l(0) <= tol) {
    throw Error(ErrorKind::SingularTopEigenvalue, "top eigenvalue vanishes");
  }
  const Mat4& G = metric();
  Mat4 left;
  for (int i = 0; i < 4; ++i) left.row(i) = sys_a.eigenvectors[i].transpose();
  if (left.determinant() < 0.0) left.row(3) *= -1.0;
  left = polish_lorentz(left, {0, 1, 2, 3});

  // b0 from the top eigenvector; b1..b3 are the complement rotated so that
  // left X right^T is diagonal, fitted in order of decreasing eigenvalue.
  std::array<Vec4, 4> b;
  std::array<bool, 4> known{true, false, false, false};
  b[0] = G * lam.m.transpose() * left.row(0).transpose() / std::sqrt(l(0));
  complete_rows(b, known);
  Mat3 T;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      T(i, j) = left.row(i + 1).dot(lam.m * b[j + 1]);
  Mat3 Q;
  for (int i = 0; i < 3; ++i) {
    Vec3 q = T.row(i).transpose();
    for (int k = 0; k < i; ++k) q -= Q.row(k).dot(q) * Q.row(k).transpose();
    if (q.norm() <= 1e-3 * std::max(T.row(i).norm(), 1e-300)) {
      // Pure noise: any unit vector orthogonal to the fitted rows.
      for (int s = 0; s < 3; ++s) {
        q = Vec3::Unit(s);
        for (int k = 0; k < i; ++k) q -= Q.row(k).dot(q) * Q.row(k).transpose();
        if (q.norm() > 0.5) break;
      }
    }
    q.normalize();
    if (T.row(i).dot(q) < 0.0) q = -q;
    Q.row(i) = q.transpose();
  }
  const std::array<Vec4, 3> c{b[1], b[2], b[3]};
  for (int i = 0; i < 3; ++i)
    b[i + 1] = Q(i, 0) * c[0] + Q(i, 1) * c[1] + Q(i, 2) * c[2];
  Mat4 right = rows_to_matrix(b);
  if (right.determinant() < 0.0) right.row(3) *= -1.0;
  right = polish_lorentz(right, {0, 1, 2, 3});

  const Mat4 M = left * lam.m * right.transpose();
  CanonicalParameters p;
  p.lambdas = l;
  p.det_sign = (l(3) > kZeroEigen * l(0) && M(3, 3) < 0.0) ? -1 : 1;
  Vec3 xi;
  for (int i = 0; i < 3; ++i) xi(i) = std::abs(M(i + 1, i + 1)) / M(0, 0);
  xi(2) *= p.det_sign;

  CanonicalResult r = finish(Family::TypeI, lam, left, right, type1_form(xi), tol);
  r.parameters = p;
  const Mat4 target = Vec4(l(0), -l(1), -l(2), -l(3)).asDiagonal();
  const double sa = std::max(1.0, sys_a.omega.cwiseAbs().maxCoeff());
  const double sb = std::max(1.0, sys_b.omega.cwiseAbs().maxCoeff());
  r.residuals.omega_form = std::max(
      (left * sys_a.omega * left.transpose() - target).cwiseAbs().maxCoeff() / sa,
      (right * sys_b.omega * right.transpose() - target).cwiseAbs().maxCoeff() / sb);
  return r;
}

CanonicalResult type2_canonical(const RealParametrization& lam, Side side,
                                double tol) {
  const Mat4& G = metric();
  const Mat4 X = side == Side::A ? lam.m : Mat4(lam.m.transpose());
  Mat4 omega = X * G * X.transpose();
  omega = 0.5 * (omega + omega.transpose());
  const GEigenSystem sys = g_eigensystem(omega, tol);
  if (classify_canonical_type(sys) != CanonicalType::TypeII) {
    throw Error(ErrorKind::NotTypeII, "top eigenvector is not neutral");
  }
  const double l0 = sys.eigenvalues(0);
  if (l0 <= tol) {
    throw Error(ErrorKind::SingularTopEigenvalue, "top eigenvalue vanishes");
  }
  const Vec4& u0 = sys.eigenvectors[0];
  const Vec4& a1 = sys.eigenvectors[2];
  const Vec4& a2 = sys.eigenvectors[3];
  const TriadCompletion comp =
      complete_tetrad_from_neutral_triad(u0, a1, a2, 1e-8, std::nullopt);
  Vec4 t0 = comp.tetrad.vectors[0];
  Vec4 t3 = comp.tetrad.vectors[3];
  Type2Frames f = type2_frames(X, omega, t0, a1, a2, t3, l0);

  if (side == Side::A) {
    // Re-boost within the (t0, t3) plane so that the right factor's time
    // row is the projection of e0 onto its own (b0, b3) plane.
    const double r0 = l0 / f.phi0;
    const double b00 = f.right(0, 0);
    const double b30 = f.right(3, 0);
    const double D = std::sqrt(b00 * b00 - b30 * b30);
    const double ch = b00 / D;
    const double sh = -b30 / D;
    const double x = ch + sh * (1.0 - r0) / r0;
    const double y = -sh / r0;
    if (x - std::abs(y) > 1e-9 * (std::abs(x) + std::abs(y))) {
      const double n = std::sqrt((x - y) * (x + y));
      const Vec4 n0 = (x * t0 + y * t3) / n;
      const Vec4 n3 = (y * t0 + x * t3) / n;
      t0 = n0;
      t3 = n3;
      f = type2_frames(X, omega, t0, a1, a2, t3, l0);
    }
  }

  const double r0 = l0 / f.phi0;
  const double r1 = f.r1;
  const double slack = 1e-8;
  if (r1 * r1 > r0 + slack || r0 > 1.0 + slack || r0 < 0.0) {
    std::ostringstream m;
    m << "non-diagonal parameters out of range: r0=" << r0 << " r1=" << r1;
    throw Error(ErrorKind::InvalidCanonicalParameters, m.str());
  }

  Mat4 arrow = Mat4::Zero();
  arrow(0, 0) = f.phi0;
  arrow(0, 3) = arrow(3, 0) = f.phi0 - l0;
  arrow(3, 3) = f.phi0 - 2.0 * l0;
  arrow(1, 1) = -sys.eigenvalues(2);
  arrow(2, 2) = -sys.eigenvalues(3);
  const double om_scale = std::max(1.0, omega.cwiseAbs().maxCoeff());
  const double omega_res =
      (f.left * omega * f.left.transpose() - arrow).cwiseAbs().maxCoeff() / om_scale;

  CanonicalResult r;
  if (side == Side::A) {
    r = finish(Family::TypeII_A, lam, f.left, f.right, type2_form_a(r0, r1), tol);
  } else {
    r = finish(Family::TypeII_B, lam, f.right, f.left, type2_form_b(r0, r1), tol);
  }
  r.parameters.lambdas = sys.eigenvalues;
  r.parameters.r0 = r0;
  r.parameters.r1 = r1;
  r.parameters.phi0 = f.phi0;
  r.residuals.omega_form = omega_res;
  return r;
}

CanonicalDecomposition canonicalize_lambda(const RealParametrization& lam,
                                           double tol) {
  CanonicalDecomposition d;
  d.lambda = lam;
  const OmegaPair om = omega_matrices(lam);
  d.sys_a = g_eigensystem(om.omega_a, tol);
  d.sys_b = g_eigensystem(om.omega_b, tol);
  const CanonicalType ta = classify_canonical_type(d.sys_a);
  const CanonicalType tb = classify_canonical_type(d.sys_b);
  if (ta != tb) {
    std::ostringstream m;
    m << "sides disagree on the canonical type: A " << to_string(ta) << ", B "
      << to_string(tb);
    throw Error(ErrorKind::NumericalFailure, m.str());
  }
  d.type = ta;
  switch (ta) {
    case CanonicalType::TypeI:
      d.primary = type1_canonical(lam, d.sys_a, d.sys_b, tol);
      break;
    case CanonicalType::TypeII:
      d.primary = type2_canonical(lam, Side::A, tol);
      d.b_side = type2_canonical(lam, Side::B, tol);
      break;
    case CanonicalType::DegenerateProduct: {
      CanonicalResult& r = d.primary;
      r.family = Family::DegenerateProduct;
      r.canonical_lambda = lam;
      r.canonical_rho = pauli_sum(lam.m);
      r.parameters.lambdas = d.sys_a.eigenvalues;
      r.residuals.rho_min_eigenvalue =
          is_valid_state(r.canonical_rho, tol).min_eigenvalue;
      break;
    }
  }
  return d;
}

CanonicalDecomposition canonicalize(const CMat4& rho, double tol) {
  return canonicalize_lambda(lambda_from_rho(rho, tol), tol);
}

CMat4 canonical_density(const CanonicalResult& result, double tol) {
  const CanonicalParameters& p = result.parameters;
  Mat4 form;
  switch (result.family) {
    case Family::DegenerateProduct:
      throw Error(ErrorKind::InvalidCanonicalParameters,
                  "degenerate product states have no canonical form");
    case Family::TypeI: {
      if (!(p.lambdas(0) > 0.0)) {
        throw Error(ErrorKind::InvalidCanonicalParameters,
                    "top eigenvalue must be positive");
      }
      Vec3 xi;
      for (int i = 0; i < 3; ++i) {
        if (p.lambdas(i + 1) < -tol * p.lambdas(0)) {
          throw Error(ErrorKind::InvalidCanonicalParameters,
                      "negative eigenvalue in the diagonal form");
        }
        xi(i) = std::sqrt(std::max(p.lambdas(i + 1), 0.0) / p.lambdas(0));
      }
      xi(2) *= p.det_sign < 0 ? -1.0 : 1.0;
      form = type1_form(xi);
      break;
    }
    case Family::TypeII_A:
    case Family::TypeII_B: {
      if (p.r1 < -tol || p.r1 * p.r1 > p.r0 + tol || p.r0 > 1.0 + tol) {
        std::ostringstream m;
        m << "require 0 <= r1^2 <= r0 <= 1, got r0=" << p.r0 << " r1=" << p.r1;
        throw Error(ErrorKind::InvalidCanonicalParameters, m.str());
      }
      form = result.family == Family::TypeII_A ? type2_form_a(p.r0, p.r1)
                                               : type2_form_b(p.r0, p.r1);
      break;
    }
  }
  const CMat4 rho = pauli_sum(form);
  const StateReport rep = is_valid_state(rho, tol);
  if (!rep.valid) {
    std::ostringstream m;
    m << "canonical density is not a state (min eigenvalue "
      << rep.min_eigenvalue << ")";
    throw Error(ErrorKind::InvalidCanonicalParameters, m.str());
  }
  return rho;
}

SigmaState sigma_from_bcd(const SigmaParameters& p, double tol) {
  const double b = p.b, c = p.c, d = p.d;
  std::vector<std::string> bad;
  auto need = [&](bool ok, const char* what) {
    if (!ok) bad.emplace_back(what);
  };
  need(std::isfinite(b) && std::isfinite(c) && std::isfinite(d),
       "parameters must be finite");
  need((1.0 + c) * (1.0 - b) >= d * d - tol, "(1+c)(1-b) >= d^2");
  need(b - c >= -tol, "b - c >= 0");
  need(b - c <= 2.0 + tol, "b - c <= 2");
  need(std::abs(b) <= 1.0 + tol, "-1 <= b <= 1");
  need(std::abs(c) <= 1.0 + tol, "-1 <= c <= 1");
  need(std::abs(d) <= 1.0 + tol, "-1 <= d <= 1");
  if (!bad.empty()) {
    std::string msg = "invalid (b, c, d):";
    for (const auto& s : bad) msg += " violates " + s + ";";
    throw Error(ErrorKind::InvalidSigmaParameters, msg);
  }
  Mat4 s = Mat4::Zero();
  s(0, 0) = 1.0;
  s(0, 3) = b;
  s(1, 1) = d;
  s(2, 2) = -d;
  s(3, 0) = c;
  s(3, 3) = 1.0 + c - b;
  SigmaState out{RealParametrization(s), pauli_sum(s)};
  const RealParametrization back = lambda_from_rho(out.rho, std::max(tol, 1e-12));
  if ((back.m - s).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorKind::NumericalFailure, "Sigma round trip failed");
  }
  return out;
}

SigmaCheck sigma_equivalence_check(const SigmaParameters& p, double tol) {
  const double b = p.b, c = p.c, d = p.d;
  const SigmaState st = sigma_from_bcd(p, tol);
  if (std::abs(b - c) <= tol || std::abs(std::abs(b) - 1.0) <= tol ||
      std::abs(std::abs(c) - 1.0) <= tol) {
    throw Error(ErrorKind::InvalidSigmaParameters,
                "equivalence check requires b != c and b, c != +-1");
  }
  SigmaCheck out;
  auto fail = [&](const std::string& s) {
    out.ok = false;
    out.failures.push_back(s);
  };
  const Mat4& S = st.sigma.m;
  const double l0 = (1.0 + c) * (1.0 - b);
  const double l1 = d * d;
  out.expected_eigenvalues = Vec4(l0, l0, l1, l1);

  const OmegaPair om = omega_matrices(st.sigma);
  const GEigenSystem sa = g_eigensystem(om.omega_a, tol);
  const GEigenSystem sb = g_eigensystem(om.omega_b, tol);
  out.eigenvalues_a = sa.eigenvalues;
  out.eigenvalues_b = sb.eigenvalues;
  out.eigenvalue_error =
      std::max((sa.eigenvalues - out.expected_eigenvalues).cwiseAbs().maxCoeff(),
               (sb.eigenvalues - out.expected_eigenvalues).cwiseAbs().maxCoeff()) /
      l0;
  if (out.eigenvalue_error > tol) fail("G-eigenvalues differ from the closed form");

  const double sc = std::sqrt(1.0 - c * c);
  out.boost_b = Mat4::Identity();
  out.boost_b(0, 0) = out.boost_b(3, 3) = 1.0 / sc;
  out.boost_b(0, 3) = out.boost_b(3, 0) = -c / sc;
  const Mat4 lb = out.boost_b * S;
  out.lambda_b_closed = lb / lb(0, 0);
  out.lambda_b_expected = Mat4::Zero();
  out.lambda_b_expected(0, 0) = 1.0;
  out.lambda_b_expected(0, 3) = (b - c) / (1.0 - c);
  out.lambda_b_expected(1, 1) = d / sc;
  out.lambda_b_expected(2, 2) = -d / sc;
  out.lambda_b_expected(3, 3) = (1.0 - b) / (1.0 - c);
  out.closed_b_error =
      (out.lambda_b_closed - out.lambda_b_expected).cwiseAbs().maxCoeff();
  if (!is_orthochronous_proper_lorentz(out.boost_b, 1e-12)) {
    fail("B-side boost is not an orthochronous proper Lorentz matrix");
  }
  if (out.closed_b_error > tol) fail("closed-form B-side canonical mismatch");

  out.s0_expected = l0 / (1.0 - c * c);
  out.s1_expected = std::abs(d) / sc;

  const double q = 1.0 + c - 2.0 * b;
  out.closed_a_applicable = q > tol;
  if (out.closed_a_applicable) {
    const double n = std::sqrt((1.0 + c) * q);
    out.boost_a = Mat4::Identity();
    out.boost_a(0, 0) = out.boost_a(3, 3) = (1.0 - b + c) / n;
    out.boost_a(0, 3) = out.boost_a(3, 0) = -b / n;
    const Mat4 flip = Vec4(1.0, 1.0, -1.0, -1.0).asDiagonal();
    const Mat4 la = out.boost_a * S;
    out.lambda_a_closed = flip * (la / la(0, 0)) * flip;
    const double g = std::sqrt(q / (l0 * (1.0 - b)));
    Mat4 e = Mat4::Zero();
    e(0, 0) = 1.0;
    e(1, 1) = d * g;
    e(2, 2) = -d * g;
    e(3, 0) = (c - b) / (1.0 - b);
    e(3, 3) = (1.0 - 2.0 * b + c) / (1.0 - b);
    out.lambda_a_expected = flip * e * flip;
    out.closed_a_error =
        (out.lambda_a_closed - out.lambda_a_expected).cwiseAbs().maxCoeff();
    if (!is_orthochronous_proper_lorentz(out.boost_a, 1e-12)) {
      fail("A-side boost is not an orthochronous proper Lorentz matrix");
    }
    if (out.closed_a_error > tol) fail("closed-form A-side canonical mismatch");
    out.r0_expected = q / (1.0 - b);
    out.r1_expected = std::abs(d) * g;
  }

  const CanonicalDecomposition dec = canonicalize_lambda(st.sigma, tol);
  out.pipeline_family = dec.primary.family;
  if (dec.primary.family != Family::TypeII_A || !dec.b_side) {
    fail("pipeline did not produce a non-diagonal canonical form");
    return out;
  }
  out.s0_pipeline = dec.b_side->parameters.r0;
  out.s1_pipeline = dec.b_side->parameters.r1;
  out.r0_pipeline = dec.primary.parameters.r0;
  out.r1_pipeline = dec.primary.parameters.r1;
  out.pipeline_s_error = std::max(std::abs(out.s0_pipeline - out.s0_expected),
                                  std::abs(out.s1_pipeline - out.s1_expected));
  if (out.pipeline_s_error > kPipelineTol) fail("pipeline (s0, s1) mismatch");
  if (out.closed_a_applicable) {
    out.pipeline_r_error = std::max(std::abs(out.r0_pipeline - out.r0_expected),
                                    std::abs(out.r1_pipeline - out.r1_expected));
    if (out.pipeline_r_error > kPipelineTol) fail("pipeline (r0, r1) mismatch");
  }
  const double k = l1 / l0;
  out.invariant_error =
      std::max(std::abs(out.r1_pipeline * out.r1_pipeline / out.r0_pipeline - k),
               std::abs(out.s1_pipeline * out.s1_pipeline / out.s0_pipeline - k));
  if (out.invariant_error > kPipelineTol) fail("orbit invariant r1^2/r0 mismatch");
  return out;
}

}  // namespace lsvd
