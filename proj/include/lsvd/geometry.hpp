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

#ifndef LSVD_GEOMETRY_HPP
#define LSVD_GEOMETRY_HPP

#include <vector>

#include "lsvd/canonical.hpp"
#include "lsvd/qstate.hpp"
#include "lsvd/types.hpp"

namespace lsvd {

enum class EllipsoidFamily { TypeI, TypeII_A, TypeII_B, Point };

std::string_view to_string(EllipsoidFamily f);
std::string_view to_string(SteerDirection d);

/// Steered Bloch vectors of a canonical form: an axis-aligned ellipsoid.
struct SteeringEllipsoid {
  EllipsoidFamily family = EllipsoidFamily::Point;
  Vec3 center = Vec3::Zero();
  Vec3 semi_axes = Vec3::Zero();
  Mat3 axis_frame = Mat3::Identity();
  SteerDirection direction = SteerDirection::BtoA;  // which map draws it
};

SteeringEllipsoid steering_ellipsoid(const CanonicalResult& result);

/// Quasi-uniform unit vectors on the sphere (golden-angle spiral).
std::vector<Vec3> fibonacci_sphere(int count);

/// Spatial parts of the 00-normalized images of (1, x) for x on the
/// Fibonacci sphere. Outcomes of zero probability (q0 = 0) are dropped.
std::vector<Vec3> sample_steered_surface(const RealParametrization& lam,
                                         SteerDirection direction, int count,
                                         double tol = kDefaultTol);

/// Deviation of y from the ellipsoid surface.
///
/// Along vanishing semi-axes y must sit at the center; in that case the
/// remaining axes describe a filled section and only the excess over 1
/// counts.
double ellipsoid_residual(const SteeringEllipsoid& e, const Vec3& y);

}  // namespace lsvd

#endif  // LSVD_GEOMETRY_HPP
