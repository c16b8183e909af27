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

#include "lsvd/qstate.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace lsvd {

const std::array<CMat2, 4>& pauli() {
  static const std::array<CMat2, 4> sigma = [] {
    const Complex i(0.0, 1.0);
    std::array<CMat2, 4> s;
    s[0] << 1.0, 0.0, 0.0, 1.0;
    s[1] << 0.0, 1.0, 1.0, 0.0;
    s[2] << 0.0, -i, i, 0.0;
    s[3] << 1.0, 0.0, 0.0, -1.0;
    return s;
  }();
  return sigma;
}

namespace {

CMat4 kron(const CMat2& a, const CMat2& b) {
  CMat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

const std::array<CMat4, 16>& pauli_products() {
  static const std::array<CMat4, 16> basis = [] {
    std::array<CMat4, 16> out;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu)
        out[4 * mu + nu] = kron(pauli()[mu], pauli()[nu]);
    return out;
  }();
  return basis;
}

}  // namespace

StateReport is_valid_state(const CMat4& rho, double tol) {
  StateReport r;
  r.hermiticity_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  r.trace_defect = std::abs(rho.trace() - Complex(1.0, 0.0));

  const CMat4 herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat4> es(herm, Eigen::EigenvaluesOnly);
  r.eigenvalues = es.eigenvalues();
  r.min_eigenvalue = r.eigenvalues(0);
  const double top = r.eigenvalues(3);
  for (int i = 0; i < 4; ++i)
    if (top > 0.0 && r.eigenvalues(i) > 1e-9 * top) ++r.rank;

  if (!rho.allFinite()) r.problems.emplace_back("non-finite entries");
  if (r.hermiticity_defect > tol * std::max(1.0, rho.cwiseAbs().maxCoeff())) {
    std::ostringstream m;
    m << "hermiticity defect " << r.hermiticity_defect;
    r.problems.push_back(m.str());
  }
  if (r.trace_defect > tol) {
    std::ostringstream m;
    m << "trace defect " << r.trace_defect << " (trace " << rho.trace().real()
      << ")";
    r.problems.push_back(m.str());
  }
  if (r.min_eigenvalue < -tol) {
    std::ostringstream m;
    m << "negative eigenvalue " << r.min_eigenvalue;
    r.problems.push_back(m.str());
  }
  r.valid = r.problems.empty();
  return r;
}

RealParametrization lambda_from_rho(const CMat4& rho, double tol) {
  const StateReport report = is_valid_state(rho, tol);
  if (!report.valid) {
    std::string msg = "not a valid two-qubit state: ";
    for (std::size_t i = 0; i < report.problems.size(); ++i) {
      msg += (i ? "; " : "") + report.problems[i];
    }
    throw Error(ErrorKind::InvalidState, msg);
  }
  Mat4 m;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      m(mu, nu) = (rho * pauli_products()[4 * mu + nu]).trace().real();
  m /= m(0, 0);
  return RealParametrization(m);
}

CMat4 pauli_sum(const Mat4& lambda) {
  CMat4 rho = CMat4::Zero();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      rho += lambda(mu, nu) * pauli_products()[4 * mu + nu];
  return 0.25 * rho;
}

Reconstruction rho_from_lambda(const RealParametrization& lam, double tol) {
  if (std::abs(lam.m(0, 0) - 1.0) > tol) {
    throw Error(ErrorKind::InvalidInput, "Lambda_00 must equal 1");
  }
  Reconstruction out;
  out.rho = pauli_sum(lam.m);
  Eigen::SelfAdjointEigenSolver<CMat4> es(out.rho, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = es.eigenvalues()(0);
  if (out.min_eigenvalue < -tol) {
    std::ostringstream m;
    m << "Lambda is not a physical state: minimum eigenvalue "
      << out.min_eigenvalue;
    throw Error(ErrorKind::NotAState, m.str());
  }
  return out;
}

Mat4 sl2c_to_lorentz(const CMat2& A, double tol) {
  const Complex det = A.determinant();
  if (std::abs(det - Complex(1.0, 0.0)) > tol) {
    std::ostringstream m;
    m << "det A = " << det << " is not 1";
    throw Error(ErrorKind::NotUnitDeterminant, m.str());
  }
  const auto& s = pauli();
  Mat4 L;
  for (int a = 0; a < 4; ++a)
    for (int mu = 0; mu < 4; ++mu)
      L(a, mu) = 0.5 * (s[a] * A * s[mu] * A.adjoint()).trace().real();
  return L;
}

FilteredState apply_slocc(const CMat4& rho, const CMat2& A, const CMat2& B,
                          double tol) {
  const CMat4 k = kron(A, B);
  FilteredState out;
  out.rho = k * rho * k.adjoint();
  out.trace = out.rho.trace().real();
  if (!(out.trace > tol)) {
    throw Error(ErrorKind::FilterAnnihilatesState,
                "local filter leaves a state of vanishing trace");
  }
  out.rho /= out.trace;
  return out;
}

Vec4 steer(const RealParametrization& lam, const Vec4& p, SteerDirection dir,
           double tol) {
  if (!(p(0) > 0.0) || minkowski_norm(p) < -tol * std::max(1.0, p.squaredNorm())) {
    throw Error(ErrorKind::InvalidInput,
                "steering input is not a non-negative operator vector");
  }
  const Vec4 q = dir == SteerDirection::AtoB ? Vec4(lam.m.transpose() * p)
                                             : Vec4(lam.m * p);
  const double scale = std::max(1.0, q.squaredNorm());
  if (q(0) < -tol * std::sqrt(scale) || minkowski_norm(q) < -tol * scale) {
    std::ostringstream m;
    m << "steered vector left the forward cone: q0=" << q(0)
      << " q.Gq=" << minkowski_norm(q);
    throw Error(ErrorKind::PositivityTransferViolated, m.str());
  }
  return q;
}

CMat4 random_state(int rank, std::uint64_t seed) {
  if (rank < 1 || rank > 4) {
    throw Error(ErrorKind::InvalidInput, "rank must lie in 1..4");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd m(4, rank);
  for (int j = 0; j < rank; ++j)
    for (int i = 0; i < 4; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  CMat4 rho = m * m.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  return rho / rho.trace().real();
}

CMat2 random_sl2c(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    CMat2 a;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const double re = normal(rng);
        const double im = normal(rng);
        a(i, j) = Complex(re, im);
      }
    const Complex det = a.determinant();
    if (std::abs(det) < 1e-3) continue;
    return a / std::sqrt(det);
  }
}

CMat4 phi_plus() {
  Eigen::Vector4cd v(1.0, 0.0, 0.0, 1.0);
  v /= std::sqrt(2.0);
  return v * v.adjoint();
}

CMat4 werner_state(double p) {
  return p * phi_plus() + (1.0 - p) * 0.25 * CMat4::Identity();
}

}  // namespace lsvd
