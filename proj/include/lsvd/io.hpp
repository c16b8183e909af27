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

#ifndef LSVD_IO_HPP
#define LSVD_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "lsvd/canonical.hpp"
#include "lsvd/geometry.hpp"
#include "lsvd/qstate.hpp"

namespace lsvd::io {

using Json = nlohmann::ordered_json;

/// Basis and ordering conventions, embedded in every document written.
Json conventions();

/// Serializes with a fixed key order and every number printed as %.17g.
/// A negative indent gives a single line.
std::string dump(const Json& j, int indent = 2);

/// %.17g, or "null" for non-finite values.
std::string format_number(double x);

Json to_json(const Mat4& m);
Json to_json(const CMat4& m);
Json to_json(const Vec3& v);
Json to_json(const Vec4& v);

/// {"conventions", "rho"}.
Json state_document(const CMat4& rho);

/// Parses a state document holding exactly one of "rho" (4x4 [re, im]
/// pairs) or "lambda" (4x4 real). Throws InvalidInput on malformed input
/// and the state errors of the qstate module otherwise.
CMat4 parse_state(const Json& j, double tol = kDefaultTol);

Json result_json(const CanonicalResult& r);
Json report_document(const CanonicalDecomposition& d);

/// True for documents produced by report_document.
bool is_report(const Json& j);

/// Rebuilds the primary canonical result of a report (family, form,
/// parameters); Lorentz factors are read back as well.
CanonicalResult parse_report(const Json& j);

Json ellipsoid_json(const SteeringEllipsoid& e);

/// Header x,y,z then one point per line, 17 significant digits.
std::string points_csv(const std::vector<Vec3>& points);

Json error_json(ErrorKind kind, const std::string& message);

}  // namespace lsvd::io

#endif  // LSVD_IO_HPP
