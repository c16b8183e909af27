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

#ifndef LSVD_GEIGEN_HPP
#define LSVD_GEIGEN_HPP

#include <array>
#include <string>
#include <vector>

#include "lsvd/minkowski.hpp"
#include "lsvd/qstate.hpp"
#include "lsvd/types.hpp"

namespace lsvd {

/// Omega_A = Lambda G Lambda^T and Omega_B = Lambda^T G Lambda.
struct OmegaPair {
  Mat4 omega_a = Mat4::Zero();
  Mat4 omega_b = Mat4::Zero();
  double symmetry_defect = 0.0;  // before symmetrization
};

OmegaPair omega_matrices(const RealParametrization& lam);

/// A run of eigenvalues treated as one degenerate level.
struct EigenCluster {
  int begin = 0;
  int size = 1;
  double value = 0.0;
  int null_dimension = 1;  // dim ker(Omega - value G)
  bool jordan = false;     // fewer eigenvectors than multiplicity
};

/// Eigen-decomposition of G Omega for real symmetric Omega.
///
/// Eigenvalues are sorted descending. Eigenvectors satisfy
/// x^T G x in {+1, 0, -1} and x_0 >= 0 (largest component positive if x_0
/// vanishes). When the top level is a Jordan block, slot 1 repeats the
/// neutral vector of slot 0 and `independent_vectors` is 3.
struct GEigenSystem {
  Vec4 eigenvalues = Vec4::Zero();
  std::array<Vec4, 4> eigenvectors{};
  Vec4 norms = Vec4::Zero();  // x^T G x
  VectorClass top_class = VectorClass::Positive;
  int degeneracy = 1;
  int independent_vectors = 4;
  bool jordan_top = false;
  bool degenerate_product = false;
  double max_imaginary = 0.0;
  double max_residual = 0.0;  // max ||G Omega x - lambda x|| / (|x| |Omega|)
  std::vector<EigenCluster> clusters;
  Mat4 omega = Mat4::Zero();
};

/// Eigenvalues closer than kClusterTol * max|Omega_ij| form one cluster.
inline constexpr double kClusterTol = 1e-5;

GEigenSystem g_eigensystem(const Mat4& omega, double tol = kDefaultTol);

enum class CanonicalType { TypeI, TypeII, DegenerateProduct };

std::string_view to_string(CanonicalType t);

CanonicalType classify_canonical_type(const GEigenSystem& sys);

/// Arrow-form data of Omega = [[n0, n~^T], [n~, A]] after rotating A to
/// diag(alpha) with a proper rotation R (n = R n~).
struct SpectralOracle {
  double n0 = 0.0;
  Vec3 n = Vec3::Zero();
  Vec3 alpha = Vec3::Zero();
  Mat3 rotation = Mat3::Identity();
  Mat4 omega = Mat4::Zero();
};

SpectralOracle spectral_oracle(const Mat4& omega);

/// h(lambda) = n0 - lambda - sum n_i^2 / (lambda + alpha_i).
double h_function(const SpectralOracle& o, double lambda,
                  double tol = kDefaultTol);
double h_derivative(const SpectralOracle& o, double lambda,
                    double tol = kDefaultTol);

/// phi(lambda) = det(Omega - lambda G).
double char_phi(const Mat4& omega, double lambda);
/// psi(lambda) = det(A + lambda I).
double char_psi(const Mat4& omega, double lambda);

/// All roots of phi located through h by bracketing and bisection,
/// sorted descending. Poles with vanishing weight are returned as roots.
std::vector<double> h_roots(const SpectralOracle& o);

struct DerivativeCheckEntry {
  int index = 0;
  double lambda = 0.0;
  double h_prime = 0.0;
  double xgx = 0.0;  // x^T G x in the gauge x_0 = 1
  bool checked = false;
  bool ok = true;
};

struct DerivativeCheck {
  bool ok = true;
  std::vector<DerivativeCheckEntry> entries;
  std::vector<std::string> diagnostics;
};

/// Sign and magnitude check of x^T G x = -h'(lambda) with x_0 = 1.
DerivativeCheck h_derivative_norm_check(const SpectralOracle& o,
                                        const GEigenSystem& sys,
                                        double tol = 1e-6);

/// Tr[(G Omega)^n] for n = 1..4.
Vec4 power_traces(const Mat4& omega);

/// Same traces formed from Lambda in quad precision; side_b selects Omega_B.
Vec4 power_traces(const RealParametrization& lam, bool side_b = false);

/// Tr[(G Omega_A)^n], n = 1..4.
Vec4 lorentz_invariants(const RealParametrization& lam);

}  // namespace lsvd

#endif  // LSVD_GEIGEN_HPP
