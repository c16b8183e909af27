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

#include "lsvd/geigen.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace lsvd {

namespace {

using Basis = Eigen::Matrix<double, 4, Eigen::Dynamic>;

constexpr double kNullTol = 1e-8;
constexpr double kNeutralTol = 1e-6;

void fix_sign(Vec4& x) {
  const double n = x.norm();
  if (std::abs(x(0)) > 1e-12 * n) {
    if (x(0) < 0.0) x = -x;
    return;
  }
  Eigen::Index i = 0;
  x.cwiseAbs().maxCoeff(&i);
  if (x(i) < 0.0) x = -x;
}

// G-orthonormal vectors spanning the column space of N, seeded by the
// G-projections of the standard axes (e0 first when a positive vector is
// wanted first).
std::vector<Vec4> g_orthonormal_basis(const Basis& N, int count,
                                      bool positive_first) {
  const Mat4& G = metric();
  const Eigen::MatrixXd H = N.transpose() * G * N;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> hs(H);
  const Eigen::VectorXd h = hs.eigenvalues();
  const Eigen::MatrixXd W = hs.eigenvectors();
  Eigen::MatrixXd Hinv = Eigen::MatrixXd::Zero(H.rows(), H.cols());
  for (Eigen::Index k = 0; k < h.size(); ++k)
    if (std::abs(h(k)) > kNeutralTol) Hinv += W.col(k) * W.col(k).transpose() / h(k);

  std::vector<Vec4> seeds;
  if (positive_first) {
    seeds.push_back(Vec4::Unit(0));
    seeds.push_back(N * W.col(h.size() - 1));
  }
  for (int k = 1; k < 4; ++k) seeds.push_back(Vec4::Unit(k));
  if (!positive_first) seeds.push_back(Vec4::Unit(0));
  for (Eigen::Index k = 0; k < h.size(); ++k) seeds.push_back(N * W.col(k));

  std::vector<Vec4> chosen;
  for (const Vec4& v : seeds) {
    if (static_cast<int>(chosen.size()) == count) break;
    Vec4 x = N * (Hinv * (N.transpose() * G * v));
    for (const Vec4& y : chosen)
      x -= (minkowski_product(y, x) / minkowski_product(y, y)) * y;
    const double len = x.norm();
    if (len < 1e-8) continue;
    const double nrm = minkowski_norm(x);
    if (std::abs(nrm) <= kNeutralTol * len * len) continue;
    if (positive_first && chosen.empty() && nrm <= 0.0) continue;
    x /= std::sqrt(std::abs(nrm));
    chosen.push_back(x);
  }
  return chosen;
}

struct NullSpace {
  Basis vectors;           // sorted by |mu| ascending
  Eigen::Vector4d mu;      // matching |eigenvalues| of Omega - lambda G
  int dimension = 0;
};

NullSpace null_space(const Mat4& omega, double lambda, double scale) {
  const Mat4 S = omega - lambda * metric();
  Eigen::SelfAdjointEigenSolver<Mat4> es(S);
  std::array<int, 4> idx{0, 1, 2, 3};
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::abs(es.eigenvalues()(a)) < std::abs(es.eigenvalues()(b));
  });
  NullSpace ns;
  ns.vectors.resize(4, 4);
  for (int k = 0; k < 4; ++k) {
    ns.vectors.col(k) = es.eigenvectors().col(idx[k]);
    ns.mu(k) = std::abs(es.eigenvalues()(idx[k]));
    if (ns.mu(k) <= kNullTol * scale) ++ns.dimension;
  }
  return ns;
}

}  // namespace

OmegaPair omega_matrices(const RealParametrization& lam) {
  const Mat4& G = metric();
  const Mat4 a = lam.m * G * lam.m.transpose();
  const Mat4 b = lam.m.transpose() * G * lam.m;
  OmegaPair out;
  out.symmetry_defect = std::max((a - a.transpose()).cwiseAbs().maxCoeff(),
                                 (b - b.transpose()).cwiseAbs().maxCoeff());
  out.omega_a = 0.5 * (a + a.transpose());
  out.omega_b = 0.5 * (b + b.transpose());
  return out;
}

GEigenSystem g_eigensystem(const Mat4& omega_in, double tol) {
  if (!omega_in.allFinite()) {
    throw Error(ErrorKind::NumericalFailure, "Omega has non-finite entries");
  }
  const Mat4& G = metric();
  GEigenSystem sys;
  sys.omega = 0.5 * (omega_in + omega_in.transpose());
  const Mat4& omega = sys.omega;
  const double scale = omega.cwiseAbs().maxCoeff();

  auto degenerate = [&](const Vec4& values) {
    sys.eigenvalues = values;
    for (int k = 0; k < 4; ++k) {
      sys.eigenvectors[k] = Vec4::Unit(k);
      sys.norms(k) = G(k, k);
    }
    sys.top_class = VectorClass::Positive;
    sys.degeneracy = 4;
    sys.degenerate_product = true;
    sys.clusters = {EigenCluster{0, 4, 0.0, 4, false}};
    Vec4 r = Vec4::Zero();
    for (int k = 0; k < 4; ++k)
      r(k) = (G * omega * sys.eigenvectors[k] - values(k) * sys.eigenvectors[k]).norm();
    sys.max_residual = r.maxCoeff() / std::max(scale, 1.0);
    return sys;
  };
  if (scale <= tol) return degenerate(Vec4::Zero());

  Eigen::EigenSolver<Mat4> es(G * omega, false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::NumericalFailure, "eigenvalue iteration failed");
  }
  std::array<Complex, 4> vals;
  for (int k = 0; k < 4; ++k) vals[k] = es.eigenvalues()(k);
  std::sort(vals.begin(), vals.end(),
            [](const Complex& a, const Complex& b) { return a.real() > b.real(); });
  Vec4 re;
  for (int k = 0; k < 4; ++k) {
    re(k) = vals[k].real();
    sys.max_imaginary = std::max(sys.max_imaginary, std::abs(vals[k].imag()));
  }
  const double gap_tol = kClusterTol * scale;
  if (sys.max_imaginary > gap_tol) {
    std::ostringstream m;
    m << "G Omega has complex eigenvalues (imaginary part "
      << sys.max_imaginary << ")";
    throw Error(ErrorKind::NumericalFailure, m.str());
  }
  if (re(0) <= tol) return degenerate(re);

  // Group into clusters.
  std::vector<EigenCluster> clusters;
  for (int k = 0; k < 4; ++k) {
    if (clusters.empty() || re(k - 1) - re(k) > gap_tol) {
      clusters.push_back(EigenCluster{k, 1, 0.0, 0, false});
    } else {
      ++clusters.back().size;
    }
  }
  // A split Jordan pair at the top shows up as an isolated eigenvalue whose
  // null vector is neutral.
  if (clusters.size() > 1 && clusters[0].size == 1 &&
      re(0) - re(1) <= 1e2 * gap_tol) {
    const Vec4 x = null_space(omega, re(0), scale).vectors.col(0);
    if (std::abs(minkowski_norm(x)) <= 1e-4 * x.squaredNorm()) {
      clusters[0].size += clusters[1].size;
      clusters.erase(clusters.begin() + 1);
    }
  }

  auto split = [&](const EigenCluster& c) {
    std::vector<EigenCluster> out;
    for (int k = c.begin; k < c.begin + c.size; ++k)
      out.push_back(EigenCluster{k, 1, re(k), 1, false});
    return out;
  };

  std::vector<EigenCluster> final_clusters;
  for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
    EigenCluster c = clusters[ci];
    double sum = 0.0;
    for (int k = c.begin; k < c.begin + c.size; ++k) sum += re(k);
    c.value = sum / c.size;
    if (c.size == 1) {
      final_clusters.push_back(c);
      continue;
    }
    const NullSpace ns = null_space(omega, c.value, scale);
    c.null_dimension = ns.dimension;
    if (ns.dimension >= c.size) {
      const Basis N = ns.vectors.leftCols(c.size);
      const auto basis = g_orthonormal_basis(N, c.size, c.begin == 0);
      if (static_cast<int>(basis.size()) == c.size) {
        for (int k = 0; k < c.size; ++k) {
          Vec4 x = basis[k];
          fix_sign(x);
          sys.eigenvectors[c.begin + k] = x;
          sys.eigenvalues(c.begin + k) = c.value;
        }
        final_clusters.push_back(c);
        continue;
      }
    } else if (c.begin == 0 && ns.dimension >= 1) {
      const Basis N = ns.vectors.leftCols(ns.dimension);
      const Eigen::MatrixXd H = N.transpose() * G * N;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> hs(H);
      const Eigen::VectorXd h = hs.eigenvalues();
      const Eigen::Index top = h.size() - 1;
      const int negatives = static_cast<int>(
          (h.array() < -kNeutralTol).count());
      if (std::abs(h(top)) <= kNeutralTol && negatives >= c.size - 2 &&
          c.size - ns.dimension == 1) {
        Vec4 u = N * hs.eigenvectors().col(top);
        u /= u(0);
        sys.eigenvectors[0] = u;
        sys.eigenvectors[1] = u;
        if (c.size > 2) {
          const Basis Nn = N * hs.eigenvectors().leftCols(negatives);
          const auto basis = g_orthonormal_basis(Nn, c.size - 2, false);
          if (static_cast<int>(basis.size()) != c.size - 2) {
            throw Error(ErrorKind::NormalizationFailure,
                        "cannot G-normalize the negative part of the top level");
          }
          for (int k = 0; k < c.size - 2; ++k) {
            Vec4 x = basis[k];
            fix_sign(x);
            sys.eigenvectors[2 + k] = x;
          }
        }
        for (int k = 0; k < c.size; ++k) sys.eigenvalues(k) = c.value;
        c.jordan = true;
        sys.jordan_top = true;
        sys.independent_vectors = 4 - (c.size - ns.dimension);
        final_clusters.push_back(c);
        continue;
      }
    }
    for (const auto& s : split(c)) final_clusters.push_back(s);
  }

  // Singletons: individual null vectors, G-orthogonalized against neighbours
  // of the same original cluster, eigenvalue refined by the Rayleigh quotient.
  for (std::size_t ci = 0; ci < final_clusters.size(); ++ci) {
    EigenCluster& c = final_clusters[ci];
    if (c.size != 1) continue;
    const NullSpace ns = null_space(omega, re(c.begin), scale);
    c.null_dimension = ns.dimension;
    Vec4 x = ns.vectors.col(0);
    for (std::size_t pj = 0; pj < ci; ++pj) {
      const EigenCluster& p = final_clusters[pj];
      if (p.size != 1 || re(p.begin) - re(c.begin) > gap_tol) continue;
      const Vec4& y = sys.eigenvectors[p.begin];
      x -= (minkowski_product(y, x) / sys.norms(p.begin)) * y;
    }
    const double nrm = minkowski_norm(x);
    if (std::abs(nrm) <= kNeutralTol * x.squaredNorm()) {
      if (c.begin == 0) {
        throw Error(ErrorKind::NumericalFailure,
                    "isolated top eigenvalue with a neutral eigenvector");
      }
      std::ostringstream m;
      m << "eigenvector " << c.begin << " is near-neutral (x^T G x = " << nrm
        << ", |x| = " << x.norm() << ")";
      throw Error(ErrorKind::NormalizationFailure, m.str());
    }
    x /= std::sqrt(std::abs(nrm));
    fix_sign(x);
    sys.eigenvectors[c.begin] = x;
    sys.norms(c.begin) = nrm > 0.0 ? 1.0 : -1.0;
    c.value = x.dot(omega * x) / minkowski_norm(x);
    sys.eigenvalues(c.begin) = c.value;
  }

  for (int k = 0; k < 4; ++k) {
    const double n = minkowski_norm(sys.eigenvectors[k]);
    sys.norms(k) = std::abs(n) <= kNeutralTol * sys.eigenvectors[k].squaredNorm()
                       ? 0.0
                       : (n > 0.0 ? 1.0 : -1.0);
  }
  // Rayleigh refinement may reorder nearly equal singletons.
  for (int k = 1; k < 4; ++k) {
    if (sys.eigenvalues(k) > sys.eigenvalues(k - 1) &&
        sys.eigenvalues(k) - sys.eigenvalues(k - 1) <= gap_tol &&
        !(sys.jordan_top && k == 1)) {
      std::swap(sys.eigenvalues(k), sys.eigenvalues(k - 1));
      std::swap(sys.eigenvectors[k], sys.eigenvectors[k - 1]);
      std::swap(sys.norms(k), sys.norms(k - 1));
    }
  }

  sys.clusters = final_clusters;
  sys.degeneracy = 1;
  for (int k = 1; k < 4; ++k)
    if (sys.eigenvalues(0) - sys.eigenvalues(k) <= gap_tol)
      ++sys.degeneracy;
  sys.top_class = sys.norms(0) > 0.0   ? VectorClass::Positive
                  : sys.norms(0) == 0.0 ? VectorClass::Neutral
                                        : VectorClass::Negative;
  if (sys.top_class == VectorClass::Negative) {
    throw Error(ErrorKind::NumericalFailure,
                "top eigenvector is negative; Omega is not a state matrix");
  }
  for (int k = 0; k < 4; ++k) {
    const Vec4& x = sys.eigenvectors[k];
    const double r = (G * omega * x - sys.eigenvalues(k) * x).norm() / (x.norm() * scale);
    sys.max_residual = std::max(sys.max_residual, r);
  }
  return sys;
}

std::string_view to_string(CanonicalType t) {
  switch (t) {
    case CanonicalType::TypeI: return "TypeI";
    case CanonicalType::TypeII: return "TypeII";
    case CanonicalType::DegenerateProduct: return "DegenerateProduct";
  }
  return "?";
}

CanonicalType classify_canonical_type(const GEigenSystem& sys) {
  if (sys.degenerate_product) return CanonicalType::DegenerateProduct;
  if (sys.top_class == VectorClass::Neutral) return CanonicalType::TypeII;
  return CanonicalType::TypeI;
}

SpectralOracle spectral_oracle(const Mat4& omega_in) {
  SpectralOracle o;
  o.omega = 0.5 * (omega_in + omega_in.transpose());
  o.n0 = o.omega(0, 0);
  const Vec3 nt = o.omega.block<3, 1>(1, 0);
  const Mat3 A = o.omega.block<3, 3>(1, 1);
  Eigen::SelfAdjointEigenSolver<Mat3> es;
  es.computeDirect(A);
  Mat3 V = es.eigenvectors();
  Vec3 a = es.eigenvalues();
  const double ascale = std::max(1.0, A.cwiseAbs().maxCoeff());
  const double defect = std::max(
      (V * a.asDiagonal() * V.transpose() - A).cwiseAbs().maxCoeff() / ascale,
      (V.transpose() * V - Mat3::Identity()).cwiseAbs().maxCoeff());
  if (defect > 1e-13) {
    es.compute(A);
    V = es.eigenvectors();
    a = es.eigenvalues();
  }
  if (V.determinant() < 0.0) V.col(2) = -V.col(2);
  o.rotation = V.transpose();
  o.alpha = a;
  o.n = o.rotation * nt;
  return o;
}

double h_function(const SpectralOracle& o, double lambda, double tol) {
  double h = o.n0 - lambda;
  for (int i = 0; i < 3; ++i) {
    if (o.n(i) == 0.0) continue;
    const double d = lambda + o.alpha(i);
    if (std::abs(d) <= tol * std::max(1.0, std::abs(o.alpha(i)))) {
      throw Error(ErrorKind::PoleEvaluation, "h evaluated at a pole");
    }
    h -= o.n(i) * o.n(i) / d;
  }
  return h;
}

double h_derivative(const SpectralOracle& o, double lambda, double tol) {
  double hp = -1.0;
  for (int i = 0; i < 3; ++i) {
    if (o.n(i) == 0.0) continue;
    const double d = lambda + o.alpha(i);
    if (std::abs(d) <= tol * std::max(1.0, std::abs(o.alpha(i)))) {
      throw Error(ErrorKind::PoleEvaluation, "h' evaluated at a pole");
    }
    hp += o.n(i) * o.n(i) / (d * d);
  }
  return hp;
}

double char_phi(const Mat4& omega, double lambda) {
  return (omega - lambda * metric()).determinant();
}

double char_psi(const Mat4& omega, double lambda) {
  return (omega.block<3, 3>(1, 1) + lambda * Mat3::Identity()).determinant();
}

namespace {

template <class F>
double bisect(F f, double a, double b, int sign_a) {
  for (int it = 0; it < 400; ++it) {
    const double m = 0.5 * (a + b);
    if (!(m > a && m < b)) break;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0 ? 1 : -1) == sign_a) a = m; else b = m;
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<double> h_roots(const SpectralOracle& o) {
  const double scale = std::max(
      {std::abs(o.n0), o.alpha.cwiseAbs().maxCoeff(), o.n.norm(),
       std::numeric_limits<double>::min()});
  std::array<int, 3> idx{0, 1, 2};
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return o.alpha(a) > o.alpha(b); });
  std::vector<double> roots;
  std::vector<double> P, W;
  for (int i : idx) {
    const double p = -o.alpha(i);
    const double w = o.n(i) * o.n(i);
    if (!P.empty() && std::abs(p - P.back()) <= 1e-12 * scale) {
      W.back() += w;
      roots.push_back(p);
    } else {
      P.push_back(p);
      W.push_back(w);
    }
  }
  for (std::size_t k = 0; k < P.size();) {
    if (std::sqrt(W[k]) <= 1e-10 * scale) {
      roots.push_back(P[k]);
      P.erase(P.begin() + k);
      W.erase(W.begin() + k);
    } else {
      ++k;
    }
  }
  auto h = [&](double l) {
    double v = o.n0 - l;
    for (std::size_t k = 0; k < P.size(); ++k) v -= W[k] / (l - P[k]);
    return v;
  };
  auto hp = [&](double l) {
    double v = -1.0;
    for (std::size_t k = 0; k < P.size(); ++k) v += W[k] / ((l - P[k]) * (l - P[k]));
    return v;
  };
  if (P.empty()) {
    roots.push_back(o.n0);
  } else {
    for (std::size_t k = 0; k + 1 < P.size(); ++k)
      roots.push_back(bisect(h, P[k], P[k + 1], -1));
    const double t = std::sqrt(std::accumulate(W.begin(), W.end(), 0.0));
    const double flat = 1e-12 * scale;

    const double pm = P.back();
    const double top = bisect(hp, pm, pm + t, +1);
    const double hmax = h(top);
    if (hmax > flat) {
      roots.push_back(bisect(h, pm, top, -1));
      roots.push_back(bisect(h, top, std::max(o.n0, top) + 1.0, +1));
    } else if (hmax >= -flat) {
      roots.push_back(top);
      roots.push_back(top);
    }

    const double p1 = P.front();
    const double low = bisect(hp, p1 - t, p1, -1);
    const double hmin = h(low);
    if (hmin < -flat) {
      roots.push_back(bisect(h, std::min(o.n0, low) - 1.0, low, +1));
      roots.push_back(bisect(h, low, p1, -1));
    } else if (hmin <= flat) {
      roots.push_back(low);
      roots.push_back(low);
    }
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

DerivativeCheck h_derivative_norm_check(const SpectralOracle& o,
                                        const GEigenSystem& sys, double tol) {
  DerivativeCheck out;
  std::vector<int> cluster_size(4, 1);
  for (const auto& c : sys.clusters)
    for (int k = c.begin; k < c.begin + c.size; ++k) cluster_size[k] = c.size;
  for (int k = 0; k < 4; ++k) {
    DerivativeCheckEntry e;
    e.index = k;
    e.lambda = sys.eigenvalues(k);
    const Vec4& x = sys.eigenvectors[k];
    const bool jordan_head = sys.jordan_top && k == 0;
    if (sys.degenerate_product || (sys.jordan_top && k == 1) ||
        (cluster_size[k] > 1 && !jordan_head) ||
        std::abs(x(0)) <= 1e-8 * x.norm()) {
      out.entries.push_back(e);
      continue;
    }
    try {
      e.h_prime = h_derivative(o, e.lambda, 1e-12);
    } catch (const Error&) {
      out.entries.push_back(e);
      continue;
    }
    const Vec4 xg = x / x(0);
    e.xgx = minkowski_norm(xg);
    e.checked = true;
    const double slack = tol * std::max(1.0, std::abs(e.h_prime));
    const bool sign_ok = k == 0 ? e.h_prime <= slack : e.h_prime >= -slack;
    const bool magnitude_ok = std::abs(e.xgx + e.h_prime) <= slack;
    e.ok = sign_ok && magnitude_ok;
    if (!e.ok) {
      out.ok = false;
      std::ostringstream m;
      m << "eigenvalue " << k << " (" << e.lambda << "): h' = " << e.h_prime
        << ", x^T G x = " << e.xgx;
      out.diagnostics.push_back(m.str());
    }
    out.entries.push_back(e);
  }
  return out;
}

Vec4 power_traces(const Mat4& omega) {
  const Mat4 M = metric() * omega;
  Mat4 P = M;
  Vec4 out;
  for (int n = 0; n < 4; ++n) {
    out(n) = P.trace();
    P = P * M;
  }
  return out;
}

namespace {

__extension__ typedef __float128 Quad;
using QMat = std::array<std::array<Quad, 4>, 4>;

QMat qmul(const QMat& a, const QMat& b) {
  QMat c{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      Quad s = 0;
      for (int k = 0; k < 4; ++k) s += a[i][k] * b[k][j];
      c[i][j] = s;
    }
  }
  return c;
}

}  // namespace

Vec4 power_traces(const RealParametrization& lam, bool side_b) {
  const Mat4 X = side_b ? Mat4(lam.m.transpose()) : lam.m;
  QMat gx{}, gxt{};
  for (int i = 0; i < 4; ++i) {
    const Quad g = i == 0 ? 1 : -1;
    for (int j = 0; j < 4; ++j) {
      gx[i][j] = g * static_cast<Quad>(X(i, j));
      gxt[i][j] = g * static_cast<Quad>(X(j, i));
    }
  }
  const QMat M = qmul(gx, gxt);
  QMat P = M;
  Vec4 out;
  for (int n = 0; n < 4; ++n) {
    Quad t = 0;
    for (int i = 0; i < 4; ++i) t += P[i][i];
    out(n) = static_cast<double>(t);
    P = qmul(P, M);
  }
  return out;
}

Vec4 lorentz_invariants(const RealParametrization& lam) { return power_traces(lam); }

}  // namespace lsvd
