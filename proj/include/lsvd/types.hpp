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

#ifndef LSVD_TYPES_HPP
#define LSVD_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace lsvd {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Complex = std::complex<double>;
using CMat2 = Eigen::Matrix2cd;
using CMat4 = Eigen::Matrix4cd;

/// Default relative tolerance used across the library.
inline constexpr double kDefaultTol = 1e-10;

enum class ErrorKind {
  InvalidInput,
  InvalidState,
  NotAState,
  NotUnitDeterminant,
  FilterAnnihilatesState,
  PositivityTransferViolated,
  TriadNotGOrthogonal,
  DegenerateCompletion,
  NumericalFailure,
  NormalizationFailure,
  PoleEvaluation,
  NotTypeI,
  NotTypeII,
  SingularTopEigenvalue,
  InvalidSigmaParameters,
  InvalidCanonicalParameters,
  DegenerateProductGeometry,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lsvd

#endif  // LSVD_TYPES_HPP
