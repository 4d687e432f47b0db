// Copyright 2026 The wiretap-lowsnr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace wiretap {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// (A + A^H) / 2.
CMatrix hermitian_part(const CMatrix& a);

/// Largest entry modulus, 0 for an empty matrix.
double max_abs(const CMatrix& a);

/// Eigenvalues (ascending) of a Hermitian matrix; throws EigenFailure.
RVector hermitian_eigenvalues(const CMatrix& a, std::string_view module);

/// log det(I + A) for Hermitian positive-semidefinite A, evaluated as a sum
/// of log1p over the spectrum so that small arguments keep full precision.
double log_det_identity_plus(const CMatrix& a, std::string_view module);

}  // namespace wiretap
