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

#include "lsvd/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace lsvd::io {

namespace {

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void dump_into(std::string& out, const Json& j, int indent, int depth) {
  const int width = std::max(indent, 0);
  const std::string pad(static_cast<std::size_t>(width * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(width * depth), ' ');
  switch (j.type()) {
    case Json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool pairs = std::all_of(j.begin(), j.end(), [](const Json& e) {
        return e.is_array() && e.size() <= 2 && std::all_of(e.begin(), e.end(), is_scalar);
      });
      const bool flat = indent < 0 || pairs || std::all_of(j.begin(), j.end(), is_scalar);
      if (flat) {
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_into(out, j[i], indent, depth + 1);
        }
        out += ']';
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad;
        dump_into(out, j[i], indent, depth + 1);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      out += close + ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      if (indent < 0) {
        out += '{';
        for (auto it = j.begin(); it != j.end(); ++it) {
          if (it != j.begin()) out += ", ";
          out += Json(it.key()).dump() + ": ";
          dump_into(out, it.value(), indent, depth + 1);
        }
        out += '}';
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad + Json(it.key()).dump() + ": ";
        dump_into(out, it.value(), indent, depth + 1);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      out += close + '}';
      return;
    }
    default:
      out += j.dump();
  }
}

Mat4 read_real4(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 4) {
    throw Error(ErrorKind::InvalidInput, std::string(what) + " must be a 4x4 array");
  }
  Mat4 m;
  for (int r = 0; r < 4; ++r) {
    if (!j[r].is_array() || j[r].size() != 4) {
      throw Error(ErrorKind::InvalidInput, std::string(what) + " must be a 4x4 array");
    }
    for (int c = 0; c < 4; ++c) {
      if (!j[r][c].is_number()) {
        throw Error(ErrorKind::InvalidInput, std::string(what) + " entries must be numbers");
      }
      m(r, c) = j[r][c].get<double>();
    }
  }
  return m;
}

CMat4 read_complex4(const Json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw Error(ErrorKind::InvalidInput, "rho must be a 4x4 array of [re, im] pairs");
  }
  CMat4 m;
  for (int r = 0; r < 4; ++r) {
    if (!j[r].is_array() || j[r].size() != 4) {
      throw Error(ErrorKind::InvalidInput, "rho must be a 4x4 array of [re, im] pairs");
    }
    for (int c = 0; c < 4; ++c) {
      const Json& e = j[r][c];
      if (e.is_number()) {
        m(r, c) = Complex(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw Error(ErrorKind::InvalidInput, "rho entries must be [re, im] pairs");
      }
    }
  }
  return m;
}

Family parse_family(const std::string& s) {
  if (s == "TypeI") return Family::TypeI;
  if (s == "TypeII_A") return Family::TypeII_A;
  if (s == "TypeII_B") return Family::TypeII_B;
  if (s == "DegenerateProduct") return Family::DegenerateProduct;
  throw Error(ErrorKind::InvalidInput, "unknown family '" + s + "'");
}

double number_at(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw Error(ErrorKind::InvalidInput, std::string("missing number '") + key + "'");
  }
  return j[key].get<double>();
}

}  // namespace

Json conventions() {
  Json c;
  c["pauli"] = "sigma_0 = I, sigma_1 = X, sigma_2 = Y, sigma_3 = Z (standard matrices)";
  c["basis"] = "|00>, |01>, |10>, |11>; qubit A is the left tensor factor";
  c["lambda"] = "Lambda[mu][nu] = Tr[rho (sigma_mu x sigma_nu)], row index on A";
  c["metric"] = "G = diag(1, -1, -1, -1)";
  c["complex"] = "[re, im]";
  c["layout"] = "row-major";
  return c;
}

std::string format_number(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump(const Json& j, int indent) {
  std::string out;
  dump_into(out, j, indent, 0);
  out += '\n';
  return out;
}

Json to_json(const Mat4& m) {
  Json a = Json::array();
  for (int r = 0; r < 4; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 4; ++c) row.push_back(m(r, c));
    a.push_back(row);
  }
  return a;
}

Json to_json(const CMat4& m) {
  Json a = Json::array();
  for (int r = 0; r < 4; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 4; ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    a.push_back(row);
  }
  return a;
}

Json to_json(const Vec3& v) { return Json::array({v(0), v(1), v(2)}); }
Json to_json(const Vec4& v) { return Json::array({v(0), v(1), v(2), v(3)}); }

Json state_document(const CMat4& rho) {
  Json j;
  j["conventions"] = conventions();
  j["rho"] = to_json(rho);
  return j;
}

CMat4 parse_state(const Json& j, double tol) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "state document must be an object");
  const bool has_rho = j.contains("rho");
  const bool has_lambda = j.contains("lambda");
  if (has_rho == has_lambda) {
    throw Error(ErrorKind::InvalidInput,
                "state document needs exactly one of \"rho\" or \"lambda\"");
  }
  if (has_rho) return read_complex4(j["rho"]);
  return rho_from_lambda(RealParametrization(read_real4(j["lambda"], "lambda")), tol).rho;
}

Json result_json(const CanonicalResult& r) {
  Json j;
  j["family"] = std::string(to_string(r.family));
  j["lambdaCanonical"] = to_json(r.canonical_lambda.m);
  j["rhoCanonical"] = to_json(r.canonical_rho);
  j["leftLorentz"] = to_json(r.left_lorentz);
  j["rightLorentz"] = to_json(r.right_lorentz);
  j["normalizationScale"] = r.normalization_scale;
  Json p;
  p["lambdas"] = to_json(r.parameters.lambdas);
  switch (r.family) {
    case Family::TypeI:
      p["detSign"] = r.parameters.det_sign;
      break;
    case Family::TypeII_A:
      p["r0"] = r.parameters.r0;
      p["r1"] = r.parameters.r1;
      p["phi0"] = r.parameters.phi0;
      break;
    case Family::TypeII_B:
      p["s0"] = r.parameters.r0;
      p["s1"] = r.parameters.r1;
      p["chi0"] = r.parameters.phi0;
      break;
    case Family::DegenerateProduct:
      break;
  }
  j["parameters"] = p;
  Json res;
  res["factorization"] = r.residuals.factorization;
  res["omegaForm"] = r.residuals.omega_form;
  res["leftLorentz"] = r.residuals.left_lorentz;
  res["rightLorentz"] = r.residuals.right_lorentz;
  res["rhoMinEigenvalue"] = r.residuals.rho_min_eigenvalue;
  j["residuals"] = res;
  return j;
}

Json report_document(const CanonicalDecomposition& d) {
  Json j;
  j["conventions"] = conventions();
  j["type"] = std::string(to_string(d.type));
  const Json primary = result_json(d.primary);
  for (auto it = primary.begin(); it != primary.end(); ++it) j[it.key()] = it.value();
  Json ev;
  ev["A"] = to_json(d.sys_a.eigenvalues);
  ev["B"] = to_json(d.sys_b.eigenvalues);
  j["eigenvalues"] = ev;
  if (d.b_side) j["bSide"] = result_json(*d.b_side);
  return j;
}

bool is_report(const Json& j) {
  return j.is_object() && j.contains("family") && j.contains("lambdaCanonical");
}

CanonicalResult parse_report(const Json& j) {
  if (!is_report(j)) throw Error(ErrorKind::InvalidInput, "not a canonical report");
  if (!j["family"].is_string()) throw Error(ErrorKind::InvalidInput, "family must be a string");
  CanonicalResult r;
  r.family = parse_family(j["family"].get<std::string>());
  r.canonical_lambda = RealParametrization(read_real4(j["lambdaCanonical"], "lambdaCanonical"));
  r.canonical_rho = pauli_sum(r.canonical_lambda.m);
  if (j.contains("leftLorentz")) r.left_lorentz = read_real4(j["leftLorentz"], "leftLorentz");
  if (j.contains("rightLorentz")) r.right_lorentz = read_real4(j["rightLorentz"], "rightLorentz");
  if (!j.contains("parameters") || !j["parameters"].is_object()) {
    throw Error(ErrorKind::InvalidInput, "report lacks parameters");
  }
  const Json& p = j["parameters"];
  if (p.contains("lambdas")) {
    const Json& l = p["lambdas"];
    if (!l.is_array() || l.size() != 4) throw Error(ErrorKind::InvalidInput, "lambdas must have 4 entries");
    for (int i = 0; i < 4; ++i) r.parameters.lambdas(i) = l[i].get<double>();
  }
  switch (r.family) {
    case Family::TypeI:
      r.parameters.det_sign = p.value("detSign", 1) < 0 ? -1 : 1;
      break;
    case Family::TypeII_A:
      r.parameters.r0 = number_at(p, "r0");
      r.parameters.r1 = number_at(p, "r1");
      r.parameters.phi0 = p.value("phi0", 0.0);
      break;
    case Family::TypeII_B:
      r.parameters.r0 = number_at(p, "s0");
      r.parameters.r1 = number_at(p, "s1");
      r.parameters.phi0 = p.value("chi0", 0.0);
      break;
    case Family::DegenerateProduct:
      break;
  }
  return r;
}

Json ellipsoid_json(const SteeringEllipsoid& e) {
  Json j;
  j["conventions"] = conventions();
  j["family"] = std::string(to_string(e.family));
  j["center"] = to_json(e.center);
  j["semiAxes"] = to_json(e.semi_axes);
  Json frame = Json::array();
  for (int r = 0; r < 3; ++r) frame.push_back(to_json(Vec3(e.axis_frame.row(r).transpose())));
  j["axisFrame"] = frame;
  j["direction"] = std::string(to_string(e.direction));
  return j;
}

std::string points_csv(const std::vector<Vec3>& points) {
  std::string out = "x,y,z\n";
  char buf[96];
  for (const Vec3& p : points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p(0), p(1), p(2));
    out += buf;
  }
  return out;
}

Json error_json(ErrorKind kind, const std::string& message) {
  Json e;
  e["kind"] = std::string(to_string(kind));
  e["message"] = message;
  Json j;
  j["error"] = e;
  return j;
}

}  // namespace lsvd::io
