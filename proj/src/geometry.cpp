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

#include "lsvd/geometry.hpp"

#include <cmath>
#include <numbers>

namespace lsvd {

std::string_view to_string(EllipsoidFamily f) {
  switch (f) {
    case EllipsoidFamily::TypeI: return "TypeI";
    case EllipsoidFamily::TypeII_A: return "TypeII_A";
    case EllipsoidFamily::TypeII_B: return "TypeII_B";
    case EllipsoidFamily::Point: return "Point";
  }
  return "?";
}

std::string_view to_string(SteerDirection d) {
  return d == SteerDirection::AtoB ? "AtoB" : "BtoA";
}

SteeringEllipsoid steering_ellipsoid(const CanonicalResult& result) {
  SteeringEllipsoid e;
  const CanonicalParameters& p = result.parameters;
  switch (result.family) {
    case Family::DegenerateProduct:
      throw Error(ErrorKind::DegenerateProductGeometry,
                  "no steering ellipsoid for a degenerate product state");
    case Family::TypeI:
      for (int i = 0; i < 3; ++i)
        e.semi_axes(i) = std::sqrt(std::max(p.lambdas(i + 1), 0.0) / p.lambdas(0));
      e.family = e.semi_axes.maxCoeff() == 0.0 ? EllipsoidFamily::Point
                                               : EllipsoidFamily::TypeI;
      e.direction = SteerDirection::BtoA;
      break;
    case Family::TypeII_A:
    case Family::TypeII_B:
      e.family = result.family == Family::TypeII_A ? EllipsoidFamily::TypeII_A
                                                   : EllipsoidFamily::TypeII_B;
      e.center = Vec3(0.0, 0.0, 1.0 - p.r0);
      e.semi_axes = Vec3(p.r1, p.r1, p.r0);
      e.direction = result.family == Family::TypeII_A ? SteerDirection::BtoA
                                                      : SteerDirection::AtoB;
      break;
  }
  return e;
}

std::vector<Vec3> fibonacci_sphere(int count) {
  if (count < 1) throw Error(ErrorKind::InvalidInput, "count must be >= 1");
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Vec3> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    out.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return out;
}

std::vector<Vec3> sample_steered_surface(const RealParametrization& lam,
                                         SteerDirection direction, int count,
                                         double tol) {
  std::vector<Vec3> out;
  out.reserve(count);
  for (const Vec3& x : fibonacci_sphere(count)) {
    const Vec4 p(1.0, x(0), x(1), x(2));
    const Vec4 q = steer(lam, p, direction, tol);
    if (!(q(0) > 0.0)) continue;
    out.push_back(q.tail<3>() / q(0));
  }
  return out;
}

double ellipsoid_residual(const SteeringEllipsoid& e, const Vec3& y) {
  const Vec3 d = e.axis_frame.transpose() * (y - e.center);
  double flat = 0.0;
  double sum = 0.0;
  bool degenerate = false;
  for (int i = 0; i < 3; ++i) {
    if (e.semi_axes(i) == 0.0) {
      flat = std::max(flat, std::abs(d(i)));
      degenerate = true;
    } else {
      sum += d(i) * d(i) / (e.semi_axes(i) * e.semi_axes(i));
    }
  }
  if (e.semi_axes.maxCoeff() == 0.0) return flat;
  const double surface = degenerate ? std::max(0.0, sum - 1.0) : std::abs(sum - 1.0);
  return std::max(flat, surface);
}

}  // namespace lsvd
