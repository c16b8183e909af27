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

#ifndef LSVD_CANONICAL_HPP
#define LSVD_CANONICAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "lsvd/geigen.hpp"
#include "lsvd/qstate.hpp"
#include "lsvd/types.hpp"

namespace lsvd {

enum class Family { TypeI, TypeII_A, TypeII_B, DegenerateProduct };

std::string_view to_string(Family f);

enum class Side { A, B };

struct CanonicalParameters {
  Vec4 lambdas = Vec4::Zero();  // G-eigenvalues, descending
  int det_sign = 1;             // TypeI: sign of the (3,3) entry
  double r0 = 0.0;              // TypeII: r0 on side A, s0 on side B
  double r1 = 0.0;              // TypeII: r1 on side A, s1 on side B
  double phi0 = 0.0;            // TypeII: phi0 on side A, chi0 on side B
};

struct CanonicalResiduals {
  double factorization = 0.0;  // |L_A Lambda L_B^T / (.)_00 - Lambda^c|_max
  double omega_form = 0.0;     // deviation of L Omega L^T from its canonical form
  double left_lorentz = 0.0;   // max(|L^T G L - G|, |det L - 1|)
  double right_lorentz = 0.0;
  double rho_min_eigenvalue = 0.0;
};

struct CanonicalResult {
  Family family = Family::DegenerateProduct;
  RealParametrization canonical_lambda;
  CMat4 canonical_rho = CMat4::Zero();
  Mat4 left_lorentz = Mat4::Identity();
  Mat4 right_lorentz = Mat4::Identity();
  CanonicalParameters parameters;
  double normalization_scale = 1.0;  // (L_A Lambda L_B^T)_00
  CanonicalResiduals residuals;
};

struct CanonicalDecomposition {
  CanonicalType type = CanonicalType::DegenerateProduct;
  RealParametrization lambda;
  GEigenSystem sys_a;
  GEigenSystem sys_b;
  CanonicalResult primary;              // TypeI, TypeII_A or DegenerateProduct
  std::optional<CanonicalResult> b_side;  // TypeII only
};

/// diag(1, xi1, xi2, xi3).
Mat4 type1_form(const Vec3& xi);
/// [[1,0,0,0],[0,r1,0,0],[0,0,-r1,0],[1-r0,0,0,r0]].
Mat4 type2_form_a(double r0, double r1);
/// [[1,0,0,1-s0],[0,s1,0,0],[0,0,-s1,0],[0,0,0,s0]].
Mat4 type2_form_b(double s0, double s1);

/// Diagonal canonical form from the eigenvector tetrad of G Omega_A.
CanonicalResult type1_canonical(const RealParametrization& lam,
                                const GEigenSystem& sys_a,
                                const GEigenSystem& sys_b,
                                double tol = kDefaultTol);

/// Non-diagonal canonical form on side A or B.
///
/// The neutral triad of the top level is completed to a tetrad; of the
/// one-parameter family of completions the one whose right (Bob) Lorentz
/// factor has the smallest boost is taken. On side A that optimum can lie
/// outside the family, in which case the completion closest to the time
/// axis on side A is used instead.
CanonicalResult type2_canonical(const RealParametrization& lam, Side side,
                                double tol = kDefaultTol);

CanonicalDecomposition canonicalize_lambda(const RealParametrization& lam,
                                           double tol = kDefaultTol);

CanonicalDecomposition canonicalize(const CMat4& rho, double tol = kDefaultTol);

/// Density matrix of a canonical form rebuilt from its parameters alone.
CMat4 canonical_density(const CanonicalResult& result,
                        double tol = kDefaultTol);

struct SigmaParameters {
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
};

struct SigmaState {
  RealParametrization sigma;
  CMat4 rho;
};

/// Sigma = [[1,0,0,b],[0,d,0,0],[0,0,-d,0],[c,0,0,1+c-b]] and its state.
SigmaState sigma_from_bcd(const SigmaParameters& p, double tol = kDefaultTol);

struct SigmaCheck {
  bool ok = true;
  std::vector<std::string> failures;

  Vec4 expected_eigenvalues = Vec4::Zero();
  Vec4 eigenvalues_a = Vec4::Zero();
  Vec4 eigenvalues_b = Vec4::Zero();
  double eigenvalue_error = 0.0;  // relative

  Mat4 boost_b = Mat4::Identity();      // L_A taking Sigma to the B form
  Mat4 lambda_b_closed = Mat4::Zero();  // L_A Sigma / (.)_00
  Mat4 lambda_b_expected = Mat4::Zero();
  double closed_b_error = 0.0;

  bool closed_a_applicable = false;     // 1 + c - 2b > 0
  Mat4 boost_a = Mat4::Identity();
  Mat4 lambda_a_closed = Mat4::Zero();  // after the diag(1,1,-1,-1) normalization
  Mat4 lambda_a_expected = Mat4::Zero();
  double closed_a_error = 0.0;

  double s0_expected = 0.0, s1_expected = 0.0;
  double s0_pipeline = 0.0, s1_pipeline = 0.0;
  double r0_expected = 0.0, r1_expected = 0.0;
  double r0_pipeline = 0.0, r1_pipeline = 0.0;
  double pipeline_s_error = 0.0;
  double pipeline_r_error = 0.0;   // only when closed_a_applicable
  double invariant_error = 0.0;    // |r1^2/r0 - lambda1/lambda0|
  Family pipeline_family = Family::DegenerateProduct;
};

SigmaCheck sigma_equivalence_check(const SigmaParameters& p,
                                   double tol = kDefaultTol);

}  // namespace lsvd

#endif  // LSVD_CANONICAL_HPP
