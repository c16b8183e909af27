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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "lsvd/canonical.hpp"
#include "lsvd/geigen.hpp"
#include "lsvd/geometry.hpp"
#include "lsvd/io.hpp"
#include "lsvd/minkowski.hpp"
#include "lsvd/qstate.hpp"

namespace py = pybind11;
using namespace lsvd;

namespace {

PyObject* error_type = nullptr;

std::string str(std::string_view s) { return std::string(s); }

py::dict result_dict(const CanonicalResult& r) {
  const CanonicalParameters& p = r.parameters;
  py::dict params;
  params["lambdas"] = p.lambdas;
  switch (r.family) {
    case Family::TypeI:
      params["det_sign"] = p.det_sign;
      break;
    case Family::TypeII_A:
      params["r0"] = p.r0;
      params["r1"] = p.r1;
      params["phi0"] = p.phi0;
      break;
    case Family::TypeII_B:
      params["s0"] = p.r0;
      params["s1"] = p.r1;
      params["chi0"] = p.phi0;
      break;
    case Family::DegenerateProduct:
      break;
  }
  py::dict res;
  res["factorization"] = r.residuals.factorization;
  res["omega_form"] = r.residuals.omega_form;
  res["left_lorentz"] = r.residuals.left_lorentz;
  res["right_lorentz"] = r.residuals.right_lorentz;
  res["rho_min_eigenvalue"] = r.residuals.rho_min_eigenvalue;

  py::dict d;
  d["family"] = str(to_string(r.family));
  d["lambda_canonical"] = r.canonical_lambda.m;
  d["rho_canonical"] = r.canonical_rho;
  d["left_lorentz"] = r.left_lorentz;
  d["right_lorentz"] = r.right_lorentz;
  d["normalization_scale"] = r.normalization_scale;
  d["parameters"] = params;
  d["residuals"] = res;
  return d;
}

py::dict system_dict(const GEigenSystem& s) {
  Mat4 vectors;
  for (int k = 0; k < 4; ++k) vectors.col(k) = s.eigenvectors[k];
  py::dict d;
  d["eigenvalues"] = s.eigenvalues;
  d["eigenvectors"] = vectors;
  d["norms"] = s.norms;
  d["top_class"] = str(to_string(s.top_class));
  d["degeneracy"] = s.degeneracy;
  d["independent_vectors"] = s.independent_vectors;
  d["jordan_top"] = s.jordan_top;
  d["degenerate_product"] = s.degenerate_product;
  d["max_residual"] = s.max_residual;
  return d;
}

SteerDirection direction_of(const std::string& s) {
  if (s == "AtoB") return SteerDirection::AtoB;
  if (s == "BtoA") return SteerDirection::BtoA;
  throw Error(ErrorKind::InvalidInput, "direction must be AtoB or BtoA");
}

const CanonicalResult& pick(const CanonicalDecomposition& d,
                            const std::string& side) {
  if (side != "A" && side != "B") {
    throw Error(ErrorKind::InvalidInput, "side must be A or B");
  }
  return (side == "B" && d.b_side) ? *d.b_side : d.primary;
}

}  // namespace

PYBIND11_MODULE(_lsvd, m) {
  m.doc() = "Lorentz singular value decomposition of two-qubit states.";

  static py::exception<Error> exc(m, "Error", PyExc_ValueError);
  error_type = exc.ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(error_type)(e.what());
      inst.attr("kind") = str(to_string(e.kind()));
      PyErr_SetObject(error_type, inst.ptr());
    }
  });

  m.attr("DEFAULT_TOL") = kDefaultTol;

  m.def("lambda_from_rho",
        [](const CMat4& rho, double tol) { return lambda_from_rho(rho, tol).m; },
        py::arg("rho"), py::arg("tol") = kDefaultTol,
        "Real 4x4 matrix Tr[rho sigma_mu x sigma_nu].");
  m.def("rho_from_lambda",
        [](const Mat4& lam, double tol) {
          return rho_from_lambda(RealParametrization(lam), tol).rho;
        },
        py::arg("lam"), py::arg("tol") = kDefaultTol);
  m.def("is_valid_state",
        [](const CMat4& rho, double tol) {
          const StateReport r = is_valid_state(rho, tol);
          py::dict d;
          d["valid"] = r.valid;
          d["eigenvalues"] = r.eigenvalues;
          d["min_eigenvalue"] = r.min_eigenvalue;
          d["rank"] = r.rank;
          d["problems"] = r.problems;
          return d;
        },
        py::arg("rho"), py::arg("tol") = kDefaultTol);
  m.def("random_state", &random_state, py::arg("rank") = 4,
        py::arg("seed") = 0);
  m.def("werner_state", &werner_state, py::arg("p"));
  m.def("phi_plus", &phi_plus);
  m.def("apply_slocc",
        [](const CMat4& rho, const CMat2& a, const CMat2& b, double tol) {
          return apply_slocc(rho, a, b, tol).rho;
        },
        py::arg("rho"), py::arg("a"), py::arg("b"),
        py::arg("tol") = kDefaultTol);
  m.def("sl2c_to_lorentz", &sl2c_to_lorentz, py::arg("a"),
        py::arg("tol") = kDefaultTol);

  m.def("metric", &metric);
  m.def("boost", &boost, py::arg("axis"), py::arg("eta"));
  m.def("rotation", &rotation, py::arg("axis"), py::arg("angle"));
  m.def("lorentz_defect", &lorentz_defect, py::arg("L"));
  m.def("classify_four_vector",
        [](const Vec4& x, double tol) {
          return str(to_string(classify_four_vector(x, tol)));
        },
        py::arg("x"), py::arg("tol") = kDefaultTol);

  m.def("omega_matrices",
        [](const Mat4& lam) {
          const OmegaPair p = omega_matrices(RealParametrization(lam));
          return py::make_tuple(p.omega_a, p.omega_b);
        },
        py::arg("lam"));
  m.def("g_eigensystem",
        [](const Mat4& omega, double tol) {
          return system_dict(g_eigensystem(omega, tol));
        },
        py::arg("omega"), py::arg("tol") = kDefaultTol);
  m.def("lorentz_invariants",
        [](const Mat4& lam) { return lorentz_invariants(RealParametrization(lam)); },
        py::arg("lam"));
  m.def("h_function",
        [](const Mat4& omega, double lambda) {
          return h_function(spectral_oracle(omega), lambda);
        },
        py::arg("omega"), py::arg("lambda_"));
  m.def("h_roots",
        [](const Mat4& omega) { return h_roots(spectral_oracle(omega)); },
        py::arg("omega"));

  m.def("canonicalize",
        [](const CMat4& rho, double tol) {
          const CanonicalDecomposition d = canonicalize(rho, tol);
          py::dict out;
          out["type"] = str(to_string(d.type));
          out["system_a"] = system_dict(d.sys_a);
          out["system_b"] = system_dict(d.sys_b);
          out["primary"] = result_dict(d.primary);
          out["b_side"] = d.b_side ? py::object(result_dict(*d.b_side))
                                   : py::object(py::none());
          return out;
        },
        py::arg("rho"), py::arg("tol") = kDefaultTol);
  m.def("classify",
        [](const CMat4& rho, double tol) {
          return str(to_string(canonicalize(rho, tol).type));
        },
        py::arg("rho"), py::arg("tol") = kDefaultTol);
  m.def("report_json",
        [](const CMat4& rho, double tol) {
          return io::dump(io::report_document(canonicalize(rho, tol)));
        },
        py::arg("rho"), py::arg("tol") = kDefaultTol,
        "Canonicalization report in the CLI JSON layout.");

  m.def("sigma_state",
        [](double b, double c, double d, double tol) {
          return sigma_from_bcd(SigmaParameters{b, c, d}, tol).rho;
        },
        py::arg("b"), py::arg("c"), py::arg("d"), py::arg("tol") = kDefaultTol);
  m.def("sigma_check",
        [](double b, double c, double d, double tol) {
          const SigmaCheck s = sigma_equivalence_check(SigmaParameters{b, c, d}, tol);
          py::dict out;
          out["ok"] = s.ok;
          out["failures"] = s.failures;
          out["expected_eigenvalues"] = s.expected_eigenvalues;
          out["eigenvalues_a"] = s.eigenvalues_a;
          out["eigenvalues_b"] = s.eigenvalues_b;
          out["eigenvalue_error"] = s.eigenvalue_error;
          out["closed_b_error"] = s.closed_b_error;
          out["closed_a_applicable"] = s.closed_a_applicable;
          out["closed_a_error"] = s.closed_a_error;
          out["s0"] = py::make_tuple(s.s0_expected, s.s0_pipeline);
          out["s1"] = py::make_tuple(s.s1_expected, s.s1_pipeline);
          out["r0"] = py::make_tuple(s.r0_expected, s.r0_pipeline);
          out["r1"] = py::make_tuple(s.r1_expected, s.r1_pipeline);
          out["invariant_error"] = s.invariant_error;
          out["pipeline_family"] = str(to_string(s.pipeline_family));
          return out;
        },
        py::arg("b"), py::arg("c"), py::arg("d"), py::arg("tol") = kDefaultTol);

  m.def("steering_ellipsoid",
        [](const CMat4& rho, const std::string& side, double tol) {
          const CanonicalDecomposition d = canonicalize(rho, tol);
          const SteeringEllipsoid e = steering_ellipsoid(pick(d, side));
          py::dict out;
          out["family"] = str(to_string(e.family));
          out["center"] = e.center;
          out["semi_axes"] = e.semi_axes;
          out["axis_frame"] = e.axis_frame;
          out["direction"] = str(to_string(e.direction));
          return out;
        },
        py::arg("rho"), py::arg("side") = "A", py::arg("tol") = kDefaultTol,
        "Ellipsoid of the canonical form.");
  m.def("sample_surface",
        [](const CMat4& rho, const std::string& direction, int count,
           double tol) {
          const auto pts = sample_steered_surface(lambda_from_rho(rho, tol),
                                                  direction_of(direction),
                                                  count, tol);
          Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor> out(
              static_cast<Eigen::Index>(pts.size()), 3);
          for (std::size_t k = 0; k < pts.size(); ++k)
            out.row(static_cast<Eigen::Index>(k)) = pts[k].transpose();
          return out;
        },
        py::arg("rho"), py::arg("direction") = "BtoA", py::arg("count") = 500,
        py::arg("tol") = kDefaultTol,
        "Bloch vectors steered from a Fibonacci sphere, one per row.");
}
