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

// Acceptance suite. Prints one PASS/FAIL line per criterion, followed by
// indented measurements, and exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lsvd/canonical.hpp"
#include "lsvd/geigen.hpp"
#include "lsvd/geometry.hpp"
#include "lsvd/minkowski.hpp"
#include "lsvd/qstate.hpp"

using namespace lsvd;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (notes.size() < 40) notes.push_back("violation: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double max_abs(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }

// Lambda of a type II canonical state taken through a random filter pair.
struct Drawn {
  CMat4 rho;
  CMat4 filtered;
};

// A negative r1_fraction draws r1 / sqrt(r0) uniformly.
Drawn type2_draw(std::mt19937_64& rng, double r1_fraction = -1.0) {
  std::uniform_real_distribution<double> u(0.05, 0.95);
  CanonicalResult r;
  r.family = Family::TypeII_A;
  r.parameters.r0 = u(rng);
  r.parameters.r1 = std::sqrt(r.parameters.r0) * (r1_fraction < 0.0 ? u(rng) : r1_fraction);
  const CMat4 rho = canonical_density(r);
  const CMat2 a = random_sl2c(rng);
  const CMat2 b = random_sl2c(rng);
  return {rho, apply_slocc(rho, a, b).rho};
}

std::vector<CMat4> random_states(int per_rank, std::uint64_t base) {
  std::vector<CMat4> out;
  for (int rank = 1; rank <= 4; ++rank) {
    for (int k = 0; k < per_rank; ++k) {
      out.push_back(random_state(rank, base + static_cast<std::uint64_t>(rank) * 1000003u +
                                           static_cast<std::uint64_t>(k)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Outcome spectrum_suite() {
  Outcome o;
  const std::vector<CMat4> states = random_states(2500, 1);
  double min_ev = 1e300, max_im = 0.0;
  int neutral = 0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    try {
      const OmegaPair om = omega_matrices(lambda_from_rho(states[i]));
      for (const Mat4* w : {&om.omega_a, &om.omega_b}) {
        const GEigenSystem s = g_eigensystem(*w);
        min_ev = std::min(min_ev, s.eigenvalues.minCoeff());
        max_im = std::max(max_im, s.max_imaginary);
        o.require(s.eigenvalues.minCoeff() >= -1e-9, "negative eigenvalue, state " + std::to_string(i));
        o.require(s.max_imaginary <= 1e-9, "complex eigenvalue, state " + std::to_string(i));
        o.require(s.top_class != VectorClass::Negative, "negative top vector, state " + std::to_string(i));
        if (s.top_class == VectorClass::Neutral) {
          ++neutral;
          o.require(s.degeneracy >= 2, "simple neutral top, state " + std::to_string(i));
        }
      }
    } catch (const Error& e) {
      o.require(false, std::string("state ") + std::to_string(i) + ": " + e.what());
    }
  }
  o.note("states " + std::to_string(states.size()) + " (2500 per rank), two eigensystems each");
  o.note(fmt("min eigenvalue %.3e, max imaginary part %.3e", min_ev, max_im));
  o.note("neutral top vectors " + std::to_string(neutral));
  return o;
}

Outcome invariance_suite() {
  Outcome o;
  std::mt19937_64 rng(2026);
  double worst_trace = 0.0, worst_param = 0.0, worst_ratio = 0.0;
  auto traces = [&](const RealParametrization& lam) {
    const Vec4 a = power_traces(lam);
    const Vec4 b = power_traces(lam, true);
    for (int n = 0; n < 4; ++n) {
      const double den = std::max(std::abs(a(n)), std::abs(b(n)));
      const double rel = den > 0.0 ? std::abs(a(n) - b(n)) / den : 0.0;
      worst_trace = std::max(worst_trace, rel);
      o.require(rel <= 1e-8, fmt("trace mismatch %.3e at n = %g", rel, n + 1));
    }
  };
  int type1 = 0, type2 = 0;
  for (int k = 0; k < 1000; ++k) {
    const bool second = k % 4 == 3;
    CMat4 rho, moved;
    if (second) {
      const Drawn d = type2_draw(rng);
      rho = d.rho;
      moved = d.filtered;
    } else {
      rho = random_state(1 + k % 4, 70000 + static_cast<std::uint64_t>(k));
      moved = apply_slocc(rho, random_sl2c(rng), random_sl2c(rng)).rho;
    }
    try {
      const RealParametrization before = lambda_from_rho(rho);
      const RealParametrization after = lambda_from_rho(moved);
      traces(before);
      traces(after);
      const CanonicalDecomposition c0 = canonicalize_lambda(before);
      const CanonicalDecomposition c1 = canonicalize_lambda(after);
      o.require(c0.type == c1.type, "family changed under a filter, draw " + std::to_string(k));
      if (c0.type == CanonicalType::TypeI) {
        ++type1;
        const double e = (c0.primary.canonical_lambda.m.diagonal() -
                          c1.primary.canonical_lambda.m.diagonal()).cwiseAbs().maxCoeff();
        worst_param = std::max(worst_param, e);
        o.require(e <= 1e-7, fmt("type I parameters moved by %.3e", e));
      } else if (c0.type == CanonicalType::TypeII) {
        ++type2;
        const auto ratio = [](const CanonicalParameters& p) { return p.r1 * p.r1 / p.r0; };
        const double e = std::max(std::abs(ratio(c0.primary.parameters) - ratio(c1.primary.parameters)),
                                  std::abs(ratio(c0.b_side->parameters) - ratio(c1.b_side->parameters)));
        worst_ratio = std::max(worst_ratio, e);
        o.require(e <= 1e-7, fmt("type II invariant moved by %.3e", e));
      }
    } catch (const Error& e) {
      o.require(false, "draw " + std::to_string(k) + ": " + e.what());
    }
  }
  o.note("draws 1000 (" + std::to_string(type1) + " type I, " + std::to_string(type2) + " type II)");
  o.note(fmt("power traces: worst relative mismatch %.3e (quad-precision traces)", worst_trace));
  o.note(fmt("type I canonical diagonal: worst change %.3e", worst_param));
  o.note(fmt("type II r1^2/r0 on both sides: worst change %.3e", worst_ratio));
  return o;
}

void reconstruction_check(Outcome& o, const RealParametrization& lam, const CanonicalResult& r,
                          double& worst_f, double& worst_l, const std::string& tag) {
  Mat4 m = r.left_lorentz * lam.m * r.right_lorentz.transpose();
  m /= m(0, 0);
  const double f = max_abs(m - r.canonical_lambda.m);
  worst_f = std::max(worst_f, f);
  worst_l = std::max({worst_l, r.residuals.left_lorentz, r.residuals.right_lorentz});
  o.require(f <= 1e-8, tag + fmt(": factorization %.3e", f));
  o.require(is_orthochronous_proper_lorentz(r.left_lorentz, 1e-9), tag + fmt(": left factor defect %.3e", r.residuals.left_lorentz));
  o.require(is_orthochronous_proper_lorentz(r.right_lorentz, 1e-9), tag + fmt(": right factor defect %.3e", r.residuals.right_lorentz));
  o.require(is_valid_state(r.canonical_rho).valid, tag + ": canonical rho not a state");
}

Outcome reconstruction_suite() {
  Outcome o;
  double worst_f = 0.0, worst_l = 0.0;
  int count = 0;
  auto run = [&](const RealParametrization& lam, const std::string& tag) {
    try {
      const CanonicalDecomposition d = canonicalize_lambda(lam);
      if (d.type == CanonicalType::DegenerateProduct) return;
      reconstruction_check(o, lam, d.primary, worst_f, worst_l, tag);
      if (d.b_side) reconstruction_check(o, lam, *d.b_side, worst_f, worst_l, tag + " (B)");
      ++count;
    } catch (const Error& e) {
      o.require(false, tag + ": " + e.what());
    }
  };
  const std::vector<CMat4> states = random_states(2500, 1);
  for (std::size_t i = 0; i < states.size(); ++i) {
    run(lambda_from_rho(states[i]), "random state " + std::to_string(i));
  }
  std::mt19937_64 rng(99);
  for (int k = 0; k < 1000; ++k) {
    const CMat4 rho = random_state(1 + k % 4, 70000 + static_cast<std::uint64_t>(k));
    run(lambda_from_rho(apply_slocc(rho, random_sl2c(rng), random_sl2c(rng)).rho),
        "filtered state " + std::to_string(k));
  }
  for (int k = 0; k < 500; ++k) {
    const Drawn d = type2_draw(rng);
    run(lambda_from_rho(d.rho), "type II canonical " + std::to_string(k));
    run(lambda_from_rho(d.filtered), "type II filtered " + std::to_string(k));
  }
  std::uniform_real_distribution<double> u(-0.99, 0.99);
  int sigma = 0;
  while (sigma < 500) {
    const SigmaParameters p{u(rng), u(rng), u(rng)};
    try {
      const SigmaState s = sigma_from_bcd(p);
      run(s.sigma, fmt("sigma b=%.4f c=%.4f", p.b, p.c));
      ++sigma;
    } catch (const Error&) {
    }
  }
  std::mt19937_64 edge_rng(101);
  for (int k = 0; k < 500; ++k) {
    const Drawn d = type2_draw(edge_rng, k % 2 == 0 ? 0.0 : 1.0);
    run(lambda_from_rho(d.filtered),
        (k % 2 == 0 ? "filtered type II, r1 = 0, " : "filtered type II, r1^2 = r0, ") +
            std::to_string(k));
  }
  o.note("decompositions " + std::to_string(count) +
         ": 10000 random states, 1000 filtered random states, 500 type II forms, "
         "500 filtered type II states, 500 sigma states, "
         "500 filtered boundary type II states");
  o.note(fmt("worst factorization %.3e, worst Lorentz defect %.3e", worst_f, worst_l));
  return o;
}

Outcome sigma_suite() {
  Outcome o;
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(-0.999, 0.999);
  int done = 0, applicable = 0;
  double we = 0, wa = 0, wb = 0, ws = 0;
  while (done < 1000) {
    const SigmaParameters p{u(rng), u(rng), u(rng)};
    if (p.b - p.c < 1e-3) continue;
    try {
      sigma_from_bcd(p);
    } catch (const Error&) {
      continue;
    }
    ++done;
    try {
      const SigmaCheck c = sigma_equivalence_check(p, 1e-10);
      for (const std::string& f : c.failures) o.require(false, f);
      o.require(c.ok, fmt("check failed at b=%.6f c=%.6f", p.b, p.c));
      // restate the thresholds here
      o.require(c.eigenvalue_error <= 1e-10, "eigenvalues");
      o.require(c.closed_b_error <= 1e-10, "closed form B");
      o.require(c.pipeline_s_error <= 1e-8, "pipeline s0, s1");
      if (c.closed_a_applicable) {
        ++applicable;
        o.require(c.closed_a_error <= 1e-10, "closed form A");
        wa = std::max(wa, c.closed_a_error);
      }
      we = std::max(we, c.eigenvalue_error);
      wb = std::max(wb, c.closed_b_error);
      ws = std::max(ws, c.pipeline_s_error);
    } catch (const Error& e) {
      o.require(false, e.what());
    }
  }
  const SigmaCheck spot = sigma_equivalence_check({0.5, 0.1, 0.3});
  o.require(std::abs(spot.s0_pipeline - 5.0 / 9.0) <= 1e-8, fmt("spot s0 = %.10f", spot.s0_pipeline));
  o.require(std::abs(spot.s1_pipeline - 0.301511) <= 5e-7, fmt("spot s1 = %.10f", spot.s1_pipeline));
  o.note("triples 1000, closed form A applicable (1 + c - 2b > 0) in " + std::to_string(applicable));
  o.note(fmt("worst: eigenvalues %.3e, closed form B %.3e", we, wb));
  o.note(fmt("worst: closed form A %.3e, pipeline (s0, s1) %.3e", wa, ws));
  o.note(fmt("spot (0.5, 0.1, 0.3): s0 = %.10f, s1 = %.10f", spot.s0_pipeline, spot.s1_pipeline));
  return o;
}

Outcome fixed_point_suite() {
  Outcome o;
  const RealParametrization lam(type2_form_a(0.64, 0.6));
  const CanonicalDecomposition d = canonicalize_lambda(lam);
  const GEigenSystem& s = d.sys_a;
  o.require(d.type == CanonicalType::TypeII, "not type II");
  o.require(d.primary.family == Family::TypeII_A, "not the A form");
  o.require(std::abs(s.eigenvalues(0) - 0.64) <= 1e-9 && std::abs(s.eigenvalues(1) - 0.64) <= 1e-9,
            "top eigenvalue not a double 0.64");
  o.require(s.degeneracy >= 2, "top eigenvalue not degenerate");
  o.require(s.top_class == VectorClass::Neutral, "top vector not neutral");
  const double dr0 = std::abs(d.primary.parameters.r0 - 0.64);
  const double dr1 = std::abs(d.primary.parameters.r1 - 0.6);
  o.require(dr0 <= 1e-9 && dr1 <= 1e-9, fmt("parameters moved by %.3e, %.3e", dr0, dr1));
  const double again = max_abs(d.primary.canonical_lambda.m - lam.m);
  o.require(again <= 1e-9, fmt("canonical form moved by %.3e", again));
  o.note(fmt("eigenvalues %.12f, %.12f", s.eigenvalues(0), s.eigenvalues(1)));
  o.note(fmt("eigenvalues %.12f, %.12f", s.eigenvalues(2), s.eigenvalues(3)));
  o.note(fmt("r0 = %.12f, r1 = %.12f", d.primary.parameters.r0, d.primary.parameters.r1));
  return o;
}

Outcome geometry_suite() {
  Outcome o;
  double worst = 0.0;
  int surfaces = 0;
  auto surface = [&](const CanonicalResult& r) {
    const SteeringEllipsoid e = steering_ellipsoid(r);
    for (const Vec3& y : sample_steered_surface(r.canonical_lambda, e.direction, 500)) {
      worst = std::max(worst, ellipsoid_residual(e, y));
    }
    ++surfaces;
  };
  for (std::uint64_t k = 0; k < 200; ++k) {
    surface(canonicalize(random_state(1 + static_cast<int>(k % 4), 5000 + k)).primary);
  }
  std::mt19937_64 rng(606);
  for (int k = 0; k < 200; ++k) {
    const Drawn dr = type2_draw(rng);
    const CanonicalDecomposition d = canonicalize(dr.filtered);
    surface(d.primary);
    if (d.b_side) surface(*d.b_side);
  }
  o.require(worst <= 1e-8, fmt("surface residual %.3e", worst));

  const CanonicalResult w = canonicalize(werner_state(0.5)).primary;
  const SteeringEllipsoid we = steering_ellipsoid(w);
  double radius = 0.0;
  for (const Vec3& y : sample_steered_surface(w.canonical_lambda, we.direction, 500)) {
    radius = std::max(radius, std::abs(y.norm() - 0.5));
  }
  o.require(radius <= 1e-8 && (we.semi_axes - Vec3(0.5, 0.5, 0.5)).norm() <= 1e-8,
            fmt("Werner radius off by %.3e", radius));

  const SteeringEllipsoid t = steering_ellipsoid(canonicalize_lambda(RealParametrization(type2_form_a(0.64, 0.6))).primary);
  const double dc = (t.center - Vec3(0, 0, 0.36)).norm();
  const double da = (t.semi_axes - Vec3(0.6, 0.6, 0.64)).norm();
  o.require(dc <= 1e-8 && da <= 1e-8, fmt("fixed point spheroid off by %.3e, %.3e", dc, da));
  o.note("surfaces " + std::to_string(surfaces) + " x 500 points");
  o.note(fmt("worst surface residual %.3e, Werner radius error %.3e", worst, radius));
  o.note(fmt("fixed point: center z = %.12f, axes z = %.12f", t.center(2), t.semi_axes(2)));
  return o;
}

Outcome oracle_suite() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> pick(-1.0, 2.0);
  double worst_root = 0.0, worst_ratio = 0.0;
  int points = 0;
  for (int k = 0; k < 1000; ++k) {
    const CMat4 rho = random_state(4, 300000 + static_cast<std::uint64_t>(k));
    const Mat4 omega = omega_matrices(lambda_from_rho(rho)).omega_a;
    try {
      const GEigenSystem s = g_eigensystem(omega);
      const SpectralOracle so = spectral_oracle(omega);
      const std::vector<double> roots = h_roots(so);
      o.require(roots.size() == 4, "root count " + std::to_string(roots.size()));
      for (std::size_t i = 0; i < std::min<std::size_t>(roots.size(), 4); ++i) {
        const double e = std::abs(roots[i] - s.eigenvalues(static_cast<int>(i)));
        worst_root = std::max(worst_root, e);
        o.require(e <= 1e-8, fmt("root differs by %.3e", e));
      }
      int taken = 0;
      while (taken < 10) {
        const double l = pick(rng);
        bool near_pole = false;
        for (int i = 0; i < 3; ++i) near_pole = near_pole || std::abs(l + so.alpha(i)) < 1e-6;
        if (near_pole) continue;
        ++taken;
        ++points;
        const double h = h_function(so, l);
        const double r = char_phi(omega, l) / char_psi(omega, l);
        const double rel = std::abs(h - r) / std::max(std::abs(h), std::abs(r));
        worst_ratio = std::max(worst_ratio, rel);
        o.require(rel <= 1e-9, fmt("h versus phi/psi %.3e at lambda %.6f", rel, l));
      }
    } catch (const Error& e) {
      o.require(false, e.what());
    }
  }
  o.note("full-rank states 1000, evaluation points " + std::to_string(points));
  o.note(fmt("worst root difference %.3e, worst h versus phi/psi %.3e", worst_root, worst_ratio));
  return o;
}

Outcome homomorphism_suite() {
  Outcome o;
  std::mt19937_64 rng(8080);
  double worst_h = 0.0, worst_rt = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const CMat2 a = random_sl2c(rng);
    const CMat2 b = random_sl2c(rng);
    const double e = max_abs(sl2c_to_lorentz(a * b, 1e-9) - sl2c_to_lorentz(a) * sl2c_to_lorentz(b));
    worst_h = std::max(worst_h, e);
    o.require(e <= 1e-10, fmt("homomorphism defect %.3e", e));

    const CMat4 rho = random_state(1 + k % 4, 400000 + static_cast<std::uint64_t>(k));
    const double rt = (rho_from_lambda(lambda_from_rho(rho)).rho - rho).cwiseAbs().maxCoeff();
    worst_rt = std::max(worst_rt, rt);
    o.require(rt <= 1e-10, fmt("round trip defect %.3e", rt));
  }
  o.note(fmt("draws 1000: worst homomorphism defect %.3e, worst round trip %.3e", worst_h, worst_rt));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "spectrum suite: real, non-negative spectra and admissible top vectors", spectrum_suite},
      {2, "invariance suite: trace invariants and canonical parameters under filters", invariance_suite},
      {3, "canonical reconstruction: factorization, Lorentz factors, canonical state", reconstruction_suite},
      {4, "sigma family: closed-form eigenvalues, boosts and pipeline parameters", sigma_suite},
      {5, "type II fixed point (0.64, 0.6)", fixed_point_suite},
      {6, "geometry: sampled surfaces, Werner sphere, fixed-point spheroid", geometry_suite},
      {7, "h-function oracle: roots and determinant ratio", oracle_suite},
      {8, "spinor homomorphism and state round trip", homomorphism_suite},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    const Outcome o = c.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs);
    for (const std::string& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
