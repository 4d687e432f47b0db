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

// Minimization of q(a) = a^T M a over the probability simplex
// { a : a_i >= 0, sum a_i = 1 } for a real symmetric M that need not be
// positive semidefinite.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wiretap/linalg.hpp"

namespace wiretap {

inline constexpr std::string_view kSimplexQpModule = "simplex-qp";

/// A point of the probability simplex.
class SimplexPoint {
public:
    /// Throws BadSimplexWeights unless every weight lies in [0, 1] and the
    /// weights sum to 1 within `tol`.
    explicit SimplexPoint(std::vector<double> weights, double tol = 1e-9);

    [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }
    [[nodiscard]] std::size_t size() const noexcept { return weights_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return weights_[i]; }

private:
    std::vector<double> weights_;
};

enum class QpCertificate {
    KktVerified,    ///< convex case, KKT residual below tolerance
    MultistartBest, ///< indefinite case, best of the multistart set
};

struct QpConfig {
    int n_random = 64;
    std::uint64_t seed = 0x5eed'51a1'0001ULL;
    int max_iters = 10'000;
    double grad_map_tol = 1e-10;
    double kkt_tol = 1e-9;
    double symmetry_tol = 1e-10;
    double psd_tol = 1e-10;
};

struct QpResult {
    SimplexPoint minimizer;
    double value;
    QpCertificate certificate;
};

/// Global minimizer of a^T M a over the simplex (see QpConfig for knobs).
/// Throws BadDimension for an empty or non-square M and AsymmetricInput when
/// M is not symmetric within config.symmetry_tol.
QpResult minimize_simplex_quadratic(const RMatrix& m, const QpConfig& config = {});

/// Euclidean projection onto the probability simplex.
RVector project_to_simplex(const RVector& v);

/// a^T M a
double simplex_quadratic(const RMatrix& m, const RVector& a);

/// KKT residual of a simplex point for min a^T M a, scaled by max(1, max|M|).
double simplex_kkt_residual(const RMatrix& m, const RVector& a);

}  // namespace wiretap
