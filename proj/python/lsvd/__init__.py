# Copyright 2026 The lsvd Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Lorentz singular value decomposition of two-qubit states."""

from ._lsvd import (
    DEFAULT_TOL,
    Error,
    apply_slocc,
    boost,
    canonicalize,
    classify,
    classify_four_vector,
    g_eigensystem,
    h_function,
    h_roots,
    is_valid_state,
    lambda_from_rho,
    lorentz_defect,
    lorentz_invariants,
    metric,
    omega_matrices,
    phi_plus,
    random_state,
    report_json,
    rho_from_lambda,
    rotation,
    sample_surface,
    sigma_check,
    sigma_state,
    sl2c_to_lorentz,
    steering_ellipsoid,
    werner_state,
)

__all__ = [
    "DEFAULT_TOL",
    "Error",
    "apply_slocc",
    "boost",
    "canonicalize",
    "classify",
    "classify_four_vector",
    "g_eigensystem",
    "h_function",
    "h_roots",
    "is_valid_state",
    "lambda_from_rho",
    "lorentz_defect",
    "lorentz_invariants",
    "metric",
    "omega_matrices",
    "phi_plus",
    "random_state",
    "report_json",
    "rho_from_lambda",
    "rotation",
    "sample_surface",
    "sigma_check",
    "sigma_state",
    "sl2c_to_lorentz",
    "steering_ellipsoid",
    "werner_state",
]

__version__ = "0.1.0"
