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

#include "wiretap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wiretap/error.hpp"

namespace wiretap {

CMatrix hermitian_part(const CMatrix& a) {
    return (a + a.adjoint()) * 0.5;
}

double max_abs(const CMatrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

RVector hermitian_eigenvalues(const CMatrix& a, std::string_view module) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::EigenFailure, module,
                    "Hermitian eigensolver did not converge on a " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " matrix");
    }
    return solver.eigenvalues();
}

double log_det_identity_plus(const CMatrix& a, std::string_view module) {
    const RVector eig = hermitian_eigenvalues(hermitian_part(a), module);
    double sum = 0.0;
    for (double lambda : eig) {
        // PSD argument: anything below zero is rounding noise.
        sum += std::log1p(std::max(lambda, 0.0));
    }
    return sum;
}

}  // namespace wiretap
