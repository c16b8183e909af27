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

#include "lsvd/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "lsvd/canonical.hpp"
#include "lsvd/geigen.hpp"
#include "lsvd/geometry.hpp"
#include "lsvd/io.hpp"
#include "lsvd/minkowski.hpp"
#include "lsvd/qstate.hpp"

namespace lsvd::cli {

namespace {

namespace fs = std::filesystem;
using io::Json;

struct Options {
  std::string input = "-";
  std::string output;
  std::string batch;
  double tol = std::numeric_limits<double>::quiet_NaN();
  bool json = false;
  std::string csv;
  int count = 500;
  bool raw = false;
  std::string side = "A";
  double b = 0.0, c = 0.0, d = 0.0;
  int rank = 4;
  std::uint64_t seed = 0;
};

struct Output {
  Json doc;
  std::string text;  // used instead of doc unless --json
  int code = kExitOk;
  std::string failure;  // set with kExitVerify
};

using InputCommand = Output (*)(const Json&, const Options&, double);

double resolve_tol(const Options& o) {
  double tol = kDefaultTol;
  if (!std::isnan(o.tol)) {
    tol = o.tol;
  } else if (const char* env = std::getenv("CANON_TOL"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    tol = std::strtod(env, &end);
    if (end == env || *end != '\0') {
      throw Error(ErrorKind::InvalidInput, std::string("CANON_TOL is not a number: ") + env);
    }
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw Error(ErrorKind::InvalidInput, "tolerance must be a positive number");
  }
  return tol;
}

Json read_json(std::istream& s, const std::string& name) {
  std::stringstream buf;
  buf << s.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, name + ": " + e.what());
  }
}

Json read_json_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidInput, "cannot open " + p.string());
  return read_json(f, p.string());
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
  f << content;
  if (!f) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
}

std::string fmt(double x, const char* spec = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

std::string vector_text(const Vec4& v) {
  std::string s = "[";
  for (int i = 0; i < 4; ++i) {
    if (i) s += ", ";
    s += fmt(std::abs(v(i)) < 1e-14 ? 0.0 : v(i));
  }
  return s + "]";
}

double max_abs(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }

// ---- commands taking a state document ----

Output classify(const Json& doc, const Options&, double tol) {
  const CMat4 rho = io::parse_state(doc, tol);
  const RealParametrization lam = lambda_from_rho(rho, tol);
  const OmegaPair om = omega_matrices(lam);
  const GEigenSystem a = g_eigensystem(om.omega_a, tol);
  const GEigenSystem b = g_eigensystem(om.omega_b, tol);
  const CanonicalType type = classify_canonical_type(a);

  Output r;
  r.doc["conventions"] = io::conventions();
  r.doc["type"] = std::string(to_string(type));
  Json ev;
  ev["A"] = io::to_json(a.eigenvalues);
  ev["B"] = io::to_json(b.eigenvalues);
  r.doc["eigenvalues"] = ev;
  r.doc["topClass"] = std::string(to_string(a.top_class));
  r.doc["degeneracy"] = a.degeneracy;
  r.doc["rank"] = is_valid_state(rho, tol).rank;
  r.text = std::string(to_string(type)) + ", eigenvalues " + vector_text(a.eigenvalues) + "\n";
  return r;
}

Output canonicalize_cmd(const Json& doc, const Options&, double tol) {
  Output r;
  r.doc = io::report_document(canonicalize(io::parse_state(doc, tol), tol));
  return r;
}

Output ellipsoid_cmd(const Json& doc, const Options& o, double tol) {
  if (o.side != "A" && o.side != "B") {
    throw Error(ErrorKind::InvalidInput, "--side must be A or B");
  }
  CanonicalResult result;
  RealParametrization raw;
  const bool report = io::is_report(doc);
  if (report) {
    if (o.raw) throw Error(ErrorKind::InvalidInput, "--raw needs a state, not a report");
    const bool b_side = o.side == "B" && doc.contains("bSide");
    result = io::parse_report(b_side ? doc["bSide"] : doc);
  } else {
    const CMat4 rho = io::parse_state(doc, tol);
    raw = lambda_from_rho(rho, tol);
    const CanonicalDecomposition d = canonicalize_lambda(raw, tol);
    result = (o.side == "B" && d.b_side) ? *d.b_side : d.primary;
  }
  const SteeringEllipsoid e = steering_ellipsoid(result);

  Output r;
  r.doc = io::ellipsoid_json(e);
  if (!o.csv.empty()) {
    const RealParametrization& lam = o.raw ? raw : result.canonical_lambda;
    const std::vector<Vec3> pts = sample_steered_surface(lam, e.direction, o.count, tol);
    r.doc["samples"] = pts.size();
    if (!o.raw) {
      double worst = 0.0;
      for (const Vec3& y : pts) worst = std::max(worst, ellipsoid_residual(e, y));
      r.doc["sampleResidual"] = worst;
    }
    write_file(o.csv, io::points_csv(pts));
  }
  return r;
}

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool ok = true;
};

Check bounded(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, std::isfinite(value) && value <= threshold};
}

void lorentz_checks(std::vector<Check>& checks, const std::string& prefix,
                    const CanonicalResult& r, double tol) {
  const double ka = std::max(1.0, max_abs(r.left_lorentz));
  const double kb = std::max(1.0, max_abs(r.right_lorentz));
  const double ta = 1e-9 * ka * ka;
  const double tb = 1e-9 * kb * kb;
  Check left = bounded(prefix + "leftLorentz", r.residuals.left_lorentz, ta);
  left.ok = left.ok && is_orthochronous_proper_lorentz(r.left_lorentz, ta);
  Check right = bounded(prefix + "rightLorentz", r.residuals.right_lorentz, tb);
  right.ok = right.ok && is_orthochronous_proper_lorentz(r.right_lorentz, tb);
  checks.push_back(left);
  checks.push_back(right);
  checks.push_back(bounded(prefix + "factorization", r.residuals.factorization, 1e-8 * ka * kb));
  const StateReport canon = is_valid_state(r.canonical_rho, tol);
  checks.push_back({prefix + "canonicalRhoValid", canon.valid ? 0.0 : 1.0, 0.0, canon.valid});
}

Output verify(const Json& doc, const Options&, double tol) {
  const CMat4 rho = io::parse_state(doc, tol);
  const RealParametrization lam = lambda_from_rho(rho, tol);
  std::vector<Check> checks;

  const CMat4 unit = rho / rho.trace().real();
  const Reconstruction back = rho_from_lambda(lam, tol);
  checks.push_back(bounded("roundTrip", (back.rho - unit).cwiseAbs().maxCoeff(), 1e-10));

  const CanonicalDecomposition d = canonicalize_lambda(lam, tol);
  const Mat4& omega = d.sys_a.omega;
  const double scale = std::max(max_abs(omega), 1e-12);
  checks.push_back(bounded(
      "spectrumEquality",
      (d.sys_a.eigenvalues - d.sys_b.eigenvalues).cwiseAbs().maxCoeff() / scale, 1e-8));

  const Vec4 ta = power_traces(lam);
  const Vec4 tb = power_traces(lam, true);
  double trace_rel = 0.0;
  for (int n = 0; n < 4; ++n) {
    const double den = std::max(std::abs(ta(n)), std::abs(tb(n)));
    if (den > 0.0) trace_rel = std::max(trace_rel, std::abs(ta(n) - tb(n)) / den);
  }
  checks.push_back(bounded("powerTraces", trace_rel, 1e-8));

  if (!d.sys_a.degenerate_product) {
    double root_err = std::numeric_limits<double>::infinity();
    bool deriv_ok = false;
    try {
      const SpectralOracle o = spectral_oracle(omega);
      const std::vector<double> roots = h_roots(o);
      if (roots.size() == 4) {
        root_err = 0.0;
        for (int i = 0; i < 4; ++i) {
          root_err = std::max(root_err, std::abs(roots[static_cast<std::size_t>(i)] -
                                                 d.sys_a.eigenvalues(i)));
        }
        root_err /= scale;
      }
      deriv_ok = h_derivative_norm_check(o, d.sys_a).ok;
    } catch (const Error&) {
      deriv_ok = false;
    }
    checks.push_back(bounded("oracleRoots", root_err, 1e-8));
    checks.push_back({"derivativeNorms", deriv_ok ? 0.0 : 1.0, 0.0, deriv_ok});
  }

  lorentz_checks(checks, "", d.primary, tol);
  if (d.b_side) lorentz_checks(checks, "bSide.", *d.b_side, tol);

  Output r;
  r.doc["conventions"] = io::conventions();
  r.doc["type"] = std::string(to_string(d.type));
  bool ok = true;
  Json list = Json::array();
  std::string failed;
  for (const Check& c : checks) {
    Json j;
    j["name"] = c.name;
    j["value"] = c.value;
    j["threshold"] = c.threshold;
    j["ok"] = c.ok;
    list.push_back(j);
    if (!c.ok) {
      ok = false;
      failed += (failed.empty() ? "" : ", ") + c.name;
    }
  }
  r.doc["ok"] = ok;
  r.doc["checks"] = list;
  if (!ok) {
    r.code = kExitVerify;
    r.failure = "failed checks: " + failed;
  }
  return r;
}

// ---- commands without a state input ----

Output sigma_cmd(const Options& o, double tol) {
  const SigmaCheck c = sigma_equivalence_check({o.b, o.c, o.d}, tol);

  Output r;
  Json& j = r.doc;
  j["conventions"] = io::conventions();
  j["parameters"] = Json{{"b", o.b}, {"c", o.c}, {"d", o.d}};
  j["ok"] = c.ok;
  j["failures"] = c.failures;
  j["eigenvalues"] = Json{{"expected", io::to_json(c.expected_eigenvalues)},
                          {"A", io::to_json(c.eigenvalues_a)},
                          {"B", io::to_json(c.eigenvalues_b)},
                          {"relativeError", c.eigenvalue_error}};
  j["closedFormB"] = Json{{"boost", io::to_json(c.boost_b)},
                          {"lambda", io::to_json(c.lambda_b_closed)},
                          {"expected", io::to_json(c.lambda_b_expected)},
                          {"error", c.closed_b_error}};
  Json a;
  a["applicable"] = c.closed_a_applicable;
  if (c.closed_a_applicable) {
    a["boost"] = io::to_json(c.boost_a);
    a["lambda"] = io::to_json(c.lambda_a_closed);
    a["expected"] = io::to_json(c.lambda_a_expected);
    a["error"] = c.closed_a_error;
  }
  j["closedFormA"] = a;
  Json p;
  p["family"] = std::string(to_string(c.pipeline_family));
  p["s0Expected"] = c.s0_expected;
  p["s1Expected"] = c.s1_expected;
  p["s0"] = c.s0_pipeline;
  p["s1"] = c.s1_pipeline;
  p["sError"] = c.pipeline_s_error;
  p["r0"] = c.r0_pipeline;
  p["r1"] = c.r1_pipeline;
  if (c.closed_a_applicable) {
    p["r0Expected"] = c.r0_expected;
    p["r1Expected"] = c.r1_expected;
    p["rError"] = c.pipeline_r_error;
  }
  p["invariantError"] = c.invariant_error;
  j["pipeline"] = p;

  std::string t;
  auto row = [&t](const std::string& q, const std::string& e, const std::string& v,
                  const std::string& err) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-20s %-20s %-20s %s\n", q.c_str(), e.c_str(), v.c_str(),
                  err.c_str());
    t += buf;
  };
  t += "sigma (b, c, d) = (" + fmt(o.b) + ", " + fmt(o.c) + ", " + fmt(o.d) + ")\n";
  row("quantity", "expected", "computed", "error");
  for (int i = 0; i < 4; ++i) {
    row("lambda" + std::to_string(i), fmt(c.expected_eigenvalues(i)), fmt(c.eigenvalues_a(i)),
        fmt(std::abs(c.expected_eigenvalues(i) - c.eigenvalues_a(i)), "%.3g"));
  }
  row("s0", fmt(c.s0_expected), fmt(c.s0_pipeline),
      fmt(std::abs(c.s0_expected - c.s0_pipeline), "%.3g"));
  row("s1", fmt(c.s1_expected), fmt(c.s1_pipeline),
      fmt(std::abs(c.s1_expected - c.s1_pipeline), "%.3g"));
  if (c.closed_a_applicable) {
    row("r0", fmt(c.r0_expected), fmt(c.r0_pipeline),
        fmt(std::abs(c.r0_expected - c.r0_pipeline), "%.3g"));
    row("r1", fmt(c.r1_expected), fmt(c.r1_pipeline),
        fmt(std::abs(c.r1_expected - c.r1_pipeline), "%.3g"));
    row("closed form A", "-", "-", fmt(c.closed_a_error, "%.3g"));
  } else {
    row("r0", "n/a", fmt(c.r0_pipeline), "1 + c - 2b <= 0");
    row("r1", "n/a", fmt(c.r1_pipeline), "");
    row("closed form A", "n/a", "-", "");
  }
  row("closed form B", "-", "-", fmt(c.closed_b_error, "%.3g"));
  row("r1^2/r0", "lambda1/lambda0", "-", fmt(c.invariant_error, "%.3g"));
  row("pipeline family", std::string(to_string(c.pipeline_family)), "", "");
  if (c.ok) {
    t += "status: OK\n";
  } else {
    t += "status: FAILED\n";
    for (const std::string& f : c.failures) t += "  " + f + "\n";
    r.code = kExitVerify;
    r.failure = "sigma check failed";
  }
  r.text = t;
  return r;
}

Output random_cmd(const Options& o, double) {
  Output r;
  r.doc = io::state_document(random_state(o.rank, o.seed));
  return r;
}

// ---- plumbing ----

void emit(const std::string& content, const Options& o, std::ostream& out) {
  if (o.output.empty()) {
    out << content;
    out.flush();
  } else {
    write_file(o.output, content);
  }
}

int report_error(std::ostream& err, ErrorKind kind, const std::string& message) {
  err << io::dump(io::error_json(kind, message));
  return exit_code(kind);
}

Json error_record(int code, const std::string& kind, const std::string& message) {
  Json e;
  e["kind"] = kind;
  e["message"] = message;
  Json rec;
  rec["exitCode"] = code;
  rec["error"] = e;
  return rec;
}

Json run_one_file(InputCommand cmd, const fs::path& path, const Options& o, double tol,
                  int& code) {
  Json rec;
  rec["file"] = path.filename().string();
  Json body;
  try {
    Output r = cmd(read_json_file(path), o, tol);
    code = r.code;
    body["exitCode"] = r.code;
    body["result"] = r.doc;
  } catch (const Error& e) {
    code = exit_code(e.kind());
    body = error_record(code, std::string(to_string(e.kind())), e.what());
  } catch (const Json::exception& e) {
    code = kExitInput;
    body = error_record(code, "InvalidInput", e.what());
  } catch (const std::exception& e) {
    code = kExitNumeric;
    body = error_record(code, "NumericalFailure", e.what());
  }
  for (auto it = body.begin(); it != body.end(); ++it) rec[it.key()] = it.value();
  return rec;
}

int run_batch(InputCommand cmd, const Options& o, double tol, std::ostream& out) {
  std::error_code ec;
  if (!fs::is_directory(o.batch, ec)) {
    throw Error(ErrorKind::InvalidInput, "not a directory: " + o.batch);
  }
  if (!o.csv.empty()) throw Error(ErrorKind::InvalidInput, "--csv cannot be used with --batch");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(o.batch)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  std::vector<std::string> lines(files.size());
  std::vector<int> codes(files.size(), kExitOk);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      lines[i] = io::dump(run_one_file(cmd, files[i], o, tol, codes[i]), -1);
    }
  };
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, std::max<std::size_t>(files.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  std::string all;
  for (const std::string& l : lines) all += l;
  emit(all, o, out);
  return codes.empty() ? kExitOk : *std::max_element(codes.begin(), codes.end());
}

int finish(const Output& r, const Options& o, std::ostream& out, std::ostream& err) {
  emit(!o.json && !r.text.empty() ? r.text : io::dump(r.doc), o, out);
  if (r.code == kExitVerify) {
    Json e;
    e["kind"] = "VerificationFailure";
    e["message"] = r.failure;
    err << io::dump(Json{{"error", e}});
  }
  return r.code;
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::InvalidSigmaParameters:
    case ErrorKind::DegenerateProductGeometry:
    case ErrorKind::NotUnitDeterminant:
      return kExitInput;
    case ErrorKind::InvalidState:
    case ErrorKind::NotAState:
    case ErrorKind::FilterAnnihilatesState:
    case ErrorKind::PositivityTransferViolated:
      return kExitState;
    default:
      return kExitNumeric;
  }
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Lorentz singular value decomposition of two-qubit states", "lsvd"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* s) {
    s->add_option("-o,--output", o.output, "Write the result to this file instead of stdout");
    s->add_option("--tol", o.tol, "Numerical tolerance (default 1e-10 or $CANON_TOL)");
  };
  auto with_input = [&o, &common](CLI::App* s) {
    common(s);
    CLI::Option* input = s->add_option("-i,--input", o.input, "State JSON file, - for stdin");
    CLI::Option* batch =
        s->add_option("--batch", o.batch, "Process every *.json file of a directory");
    input->excludes(batch);
    s->add_flag("--json", o.json, "Print JSON instead of text");
  };

  CLI::App* classify_app = app.add_subcommand("classify", "Family and G-eigenvalues");
  with_input(classify_app);
  CLI::App* canon_app = app.add_subcommand("canonicalize", "Canonical report JSON");
  with_input(canon_app);
  CLI::App* ell_app = app.add_subcommand("ellipsoid", "Steering ellipsoid geometry");
  with_input(ell_app);
  ell_app->add_option("--csv", o.csv, "Write sampled surface points to this CSV file");
  ell_app->add_option("--count", o.count, "Number of sphere samples")->check(CLI::PositiveNumber);
  ell_app->add_flag("--raw", o.raw, "Sample the input state instead of its canonical form");
  ell_app->add_option("--side", o.side, "Type II form to use: A or B");
  CLI::App* verify_app = app.add_subcommand("verify", "Invariant checks on a state");
  with_input(verify_app);
  CLI::App* sigma_app = app.add_subcommand("sigma", "Closed-form check of the sigma family");
  common(sigma_app);
  sigma_app->add_option("--b", o.b, "b")->required();
  sigma_app->add_option("--c", o.c, "c")->required();
  sigma_app->add_option("--d", o.d, "d")->required();
  sigma_app->add_flag("--json", o.json, "Print JSON instead of the table");
  CLI::App* random_app = app.add_subcommand("random", "Seeded random state JSON");
  common(random_app);
  random_app->add_option("--rank", o.rank, "Rank 1..4");
  random_app->add_option("--seed", o.seed, "Seed");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    return report_error(err, ErrorKind::InvalidInput, e.what());
  }

  try {
    const double tol = resolve_tol(o);
    if (sigma_app->parsed()) return finish(sigma_cmd(o, tol), o, out, err);
    if (random_app->parsed()) return finish(random_cmd(o, tol), o, out, err);

    InputCommand cmd = classify;
    if (canon_app->parsed()) cmd = canonicalize_cmd;
    if (ell_app->parsed()) cmd = ellipsoid_cmd;
    if (verify_app->parsed()) cmd = verify;
    if (!o.batch.empty()) return run_batch(cmd, o, tol, out);

    Json doc;
    if (o.input == "-") {
      doc = read_json(in, "stdin");
    } else {
      doc = read_json_file(o.input);
    }
    return finish(cmd(doc, o, tol), o, out, err);
  } catch (const Error& e) {
    return report_error(err, e.kind(), e.what());
  } catch (const Json::exception& e) {
    return report_error(err, ErrorKind::InvalidInput, e.what());
  } catch (const std::exception& e) {
    return report_error(err, ErrorKind::NumericalFailure, e.what());
  }
}

}  // namespace lsvd::cli
