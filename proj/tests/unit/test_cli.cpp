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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lsvd/cli.hpp"
#include "lsvd/io.hpp"

using namespace lsvd;
using io::Json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("lsvd_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

const char* kMixed = R"({"lambda": [[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]})";

}  // namespace

TEST_CASE("classify the maximally mixed state") {
  const Run r = invoke({"classify"}, kMixed);
  CHECK(r.code == 0);
  CHECK(r.out == "TypeI, eigenvalues [1, 0, 0, 0]\n");

  const Run j = invoke({"classify", "--json"}, kMixed);
  CHECK(j.code == 0);
  const Json doc = Json::parse(j.out);
  CHECK(doc["type"] == "TypeI");
  CHECK(doc["rank"] == 4);
  CHECK(doc.contains("conventions"));
}

TEST_CASE("sigma report") {
  const Run r = invoke({"sigma", "--b", "0.5", "--c", "0.1", "--d", "0.3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0.55 ") != std::string::npos);
  CHECK(r.out.find("0.09 ") != std::string::npos);
  CHECK(r.out.find("0.5555555556") != std::string::npos);
  CHECK(r.out.find("0.3015113446") != std::string::npos);
  CHECK(r.out.find("status: OK") != std::string::npos);

  const Json j = Json::parse(invoke({"sigma", "--b", "0.5", "--c", "0.1", "--d", "0.3", "--json"}).out);
  CHECK(j["pipeline"]["s0"].get<double>() == doctest::Approx(0.5555555555555556).epsilon(1e-8));
  CHECK(j["pipeline"]["s1"].get<double>() == doctest::Approx(0.30151134457776363).epsilon(1e-8));

  const Run bad = invoke({"sigma", "--b", "0.1", "--c", "0.5", "--d", "0.1"});
  CHECK(bad.code == 1);
  CHECK(Json::parse(bad.err)["error"]["kind"] == "InvalidSigmaParameters");
}

TEST_CASE("verify reports a trace defect") {
  std::ostringstream doc;
  doc << R"({"rho": [)";
  for (int i = 0; i < 4; ++i) {
    doc << (i ? "," : "") << "[";
    for (int k = 0; k < 4; ++k) doc << (k ? "," : "") << (i == k ? "[0.225, 0]" : "[0, 0]");
    doc << "]";
  }
  doc << "]}";
  const Run r = invoke({"verify"}, doc.str());
  CHECK(r.code == 2);
  const Json err = Json::parse(r.err);
  CHECK(err["error"]["kind"] == "InvalidState");
  CHECK(err["error"]["message"].get<std::string>().find("trace defect") != std::string::npos);
}

TEST_CASE("verify passes on random states") {
  for (int rank = 1; rank <= 4; ++rank) {
    const Run state = invoke({"random", "--rank", std::to_string(rank), "--seed", "77"});
    const Run r = invoke({"verify"}, state.out);
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["ok"] == true);
  }
}

TEST_CASE("input errors map to exit codes") {
  CHECK(invoke({"classify"}, "{not json").code == 1);
  CHECK(invoke({"classify"}, R"({"lambda": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]})").code == 2);
  CHECK(invoke({"classify", "--tol", "-1"}, kMixed).code == 1);
  CHECK(invoke({"classify", "-i", "/nonexistent/file.json"}).code == 1);
  CHECK(invoke({"random", "--rank", "9"}).code == 1);
  CHECK(invoke({}).code == 1);
  CHECK(invoke({"frobnicate"}).code == 1);
  CHECK(invoke({"classify", "-i", "a.json", "--batch", "dir"}).code == 1);
  CHECK(invoke({"--help"}).code == 0);
  const Run product = invoke({"ellipsoid"}, R"({"lambda": [[1,0,0,1],[0,0,0,0],[0,0,0,0],[1,0,0,1]]})");
  CHECK(product.code == 1);
  CHECK(Json::parse(product.err)["error"]["kind"] == "DegenerateProductGeometry");
}

TEST_CASE("tolerance from the environment") {
  ::setenv("CANON_TOL", "abc", 1);
  CHECK(invoke({"classify"}, kMixed).code == 1);
  ::setenv("CANON_TOL", "1e-9", 1);
  CHECK(invoke({"classify"}, kMixed).code == 0);
  ::unsetenv("CANON_TOL");
}

TEST_CASE("identical invocations give identical bytes") {
  const Run a = invoke({"random", "--rank", "3", "--seed", "5"});
  const Run b = invoke({"random", "--rank", "3", "--seed", "5"});
  CHECK(a.out == b.out);
  CHECK(invoke({"canonicalize"}, a.out).out == invoke({"canonicalize"}, b.out).out);
  CHECK(invoke({"random", "--rank", "3", "--seed", "6"}).out != a.out);
}

TEST_CASE("random, canonicalize and ellipsoid compose") {
  int failures = 0;
  for (int seed = 0; seed < 100; ++seed) {
    const std::string rank = std::to_string(1 + seed % 4);
    const Run s = invoke({"random", "--rank", rank, "--seed", std::to_string(seed)});
    const Run c = invoke({"canonicalize"}, s.out);
    const Run e = invoke({"ellipsoid"}, c.out);
    if (s.code != 0 || c.code != 0 || e.code != 0) ++failures;
    const Json doc = Json::parse(e.out);
    CHECK(doc.contains("semiAxes"));
  }
  CHECK(failures == 0);
}

TEST_CASE("files, samples and batches") {
  const fs::path dir = scratch_dir("files");
  const std::string state = (dir / "w.json").string();
  CHECK(invoke({"random", "--rank", "2", "--seed", "1", "-o", state}).code == 0);
  const std::string csv = (dir / "pts.csv").string();
  const Run e = invoke({"ellipsoid", "-i", state, "--csv", csv, "--count", "64"});
  CHECK(e.code == 0);
  CHECK(Json::parse(e.out)["sampleResidual"].get<double>() < 1e-8);
  std::ifstream f(csv);
  std::string line;
  int lines = 0;
  while (std::getline(f, line)) ++lines;
  CHECK(lines <= 65);
  CHECK(lines > 1);

  const Run raw = invoke({"ellipsoid", "-i", state, "--csv", csv, "--raw"});
  CHECK(raw.code == 0);

  const fs::path batch = scratch_dir("batch");
  for (int s = 0; s < 6; ++s) {
    invoke({"random", "--rank", "4", "--seed", std::to_string(s), "-o",
            (batch / ("s" + std::to_string(s) + ".json")).string()});
  }
  std::ofstream(batch / "broken.json") << "{";
  std::ofstream(batch / "notes.txt") << "ignored";
  const Run b = invoke({"verify", "--batch", batch.string()});
  CHECK(b.code == 1);
  std::istringstream lines_in(b.out);
  std::vector<std::string> names;
  while (std::getline(lines_in, line)) {
    const Json rec = Json::parse(line);
    names.push_back(rec["file"].get<std::string>());
    if (rec["file"] == "broken.json") {
      CHECK(rec["exitCode"] == 1);
    } else {
      CHECK(rec["exitCode"] == 0);
      CHECK(rec["result"]["ok"] == true);
    }
  }
  CHECK(names.size() == 7);
  CHECK(std::is_sorted(names.begin(), names.end()));
  CHECK(invoke({"verify", "--batch", batch.string()}).out == b.out);
  fs::remove_all(dir);
  fs::remove_all(batch);
}
