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

#ifndef LSVD_QSTATE_HPP
#define LSVD_QSTATE_HPP

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lsvd/minkowski.hpp"
#include "lsvd/types.hpp"

namespace lsvd {

/// Pauli matrices in the order (sigma_0 = 1, sigma_1, sigma_2, sigma_3).
const std::array<CMat2, 4>& pauli();

/// Real 4x4 parametrization Lambda_{mu nu} = Tr[rho (sigma_mu x sigma_nu)].
///
/// First column holds (1, a), the Bloch vector of qubit A; first row holds
/// (1, b^T) for qubit B; the lower-right block is the correlation matrix T.
struct RealParametrization {
  Mat4 m = Mat4::Zero();

  RealParametrization() = default;
  explicit RealParametrization(const Mat4& matrix) : m(matrix) {}

  Vec3 bloch_a() const { return m.block<3, 1>(1, 0); }
  Vec3 bloch_b() const { return m.block<1, 3>(0, 1).transpose(); }
  Mat3 correlation() const { return m.block<3, 3>(1, 1); }

  RealParametrization transposed() const {
    return RealParametrization(m.transpose());
  }
};

struct StateReport {
  bool valid = false;
  double hermiticity_defect = 0.0;
  double trace_defect = 0.0;
  double min_eigenvalue = 0.0;
  Vec4 eigenvalues = Vec4::Zero();  // ascending
  int rank = 0;
  std::vector<std::string> problems;
};

/// Hermiticity, trace and positivity report for a 4x4 complex matrix.
/// Rank counts eigenvalues above 1e-9 times the largest one.
StateReport is_valid_state(const CMat4& rho, double tol = kDefaultTol);

RealParametrization lambda_from_rho(const CMat4& rho, double tol = kDefaultTol);

struct Reconstruction {
  CMat4 rho;
  double min_eigenvalue = 0.0;
};

/// Inverse of lambda_from_rho; throws NotAState when the Pauli sum has an
/// eigenvalue below -tol.
Reconstruction rho_from_lambda(const RealParametrization& lam,
                               double tol = kDefaultTol);

/// The plain Pauli sum (1/4) sum Lambda_{mu nu} sigma_mu x sigma_nu, no checks.
CMat4 pauli_sum(const Mat4& lambda);

/// SL(2,C) -> SO(3,1): L_{alpha mu} = (1/2) Tr[sigma_alpha A sigma_mu A^dag].
Mat4 sl2c_to_lorentz(const CMat2& A, double tol = kDefaultTol);

struct FilteredState {
  CMat4 rho;
  double trace = 0.0;  // normalization discarded by the filter
};

/// (A x B) rho (A x B)^dag normalized to unit trace.
FilteredState apply_slocc(const CMat4& rho, const CMat2& A, const CMat2& B,
                          double tol = kDefaultTol);

enum class SteerDirection { AtoB, BtoA };

/// q = Lambda^T p (AtoB) or q = Lambda p (BtoA) for a non-negative operator
/// vector p. Throws PositivityTransferViolated if q leaves the forward cone.
Vec4 steer(const RealParametrization& lam, const Vec4& p, SteerDirection dir,
           double tol = kDefaultTol);

/// Seeded Ginibre-induced state M M^dag / Tr(M M^dag), M a 4 x rank matrix.
CMat4 random_state(int rank, std::uint64_t seed);

/// Haar-ish random element of SL(2,C) (Gaussian entries rescaled to det 1).
CMat2 random_sl2c(std::mt19937_64& rng);

/// Werner state p |Phi+><Phi+| + (1 - p) I/4.
CMat4 werner_state(double p);

/// |Phi+> = (|00> + |11>)/sqrt(2) as a projector.
CMat4 phi_plus();

}  // namespace lsvd

#endif  // LSVD_QSTATE_HPP
