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

#include "wiretap/lowsnr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace wiretap {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Two passes of modified Gram-Schmidt; keeps column order and phases.
CMatrix orthonormalize(CMatrix basis) {
    for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index j = 0; j < basis.cols(); ++j) {
            for (Eigen::Index i = 0; i < j; ++i) {
                const Complex proj = basis.col(i).dot(basis.col(j));
                basis.col(j) -= proj * basis.col(i);
            }
            basis.col(j).normalize();
        }
    }
    return basis;
}

double group_threshold(double lambda_max, double tol) {
    return tol * std::max(1.0, std::abs(lambda_max));
}

}  // namespace

PhiMatrix phi(const WiretapChannel& channel) {
    return {hermitian_part(gram_main(channel) - channel.noise_ratio() * gram_eaves(channel))};
}

MaxEigenspace max_eigenspace(const PhiMatrix& phi, double degeneracy_tol) {
    if (!(degeneracy_tol > 0.0) || !std::isfinite(degeneracy_tol)) {
        throw Error(ErrorKind::InvalidArgument, kLowSnrModule,
                    "degeneracy_tol must be positive, got " + std::to_string(degeneracy_tol));
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(phi.matrix), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::EigenFailure, kLowSnrModule, "eigensolver did not converge on Phi");
    }
    const RVector& eig = solver.eigenvalues();
    const Eigen::Index n = eig.size();
    const double lambda_max = eig(n - 1);
    const double threshold = group_threshold(lambda_max, degeneracy_tol);

    Eigen::Index l = 0;
    while (l < n && eig(n - 1 - l) >= lambda_max - threshold) {
        ++l;
    }
    CMatrix basis(n, l);
    for (Eigen::Index i = 0; i < l; ++i) {
        basis.col(i) = solver.eigenvectors().col(n - 1 - i);
    }

    MaxEigenspace out;
    out.lambda_max = lambda_max;
    out.multiplicity = static_cast<std::size_t>(l);
    out.basis = orthonormalize(std::move(basis));
    out.degeneracy_tol = degeneracy_tol;
    out.positive = lambda_max > threshold;
    return out;
}

MaxEigenspace align_to_main_gram(const MaxEigenspace& eigenspace, const CMatrix& gram_main) {
    if (eigenspace.multiplicity <= 1) {
        return eigenspace;
    }
    const CMatrix restricted = hermitian_part(eigenspace.basis.adjoint() * gram_main * eigenspace.basis);
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(restricted, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::EigenFailure, kLowSnrModule, "eigensolver did not converge on U^H G_m U");
    }
    const CMatrix rotation = solver.eigenvectors().rowwise().reverse();
    MaxEigenspace out = eigenspace;
    out.basis = orthonormalize(eigenspace.basis * rotation);
    return out;
}

MaxEigenspace analysis_eigenspace(const WiretapChannel& channel, double degeneracy_tol) {
    return align_to_main_gram(max_eigenspace(phi(channel), degeneracy_tol), gram_main(channel));
}

double c_dot_0(const WiretapChannel& channel, double degeneracy_tol) {
    const MaxEigenspace es = max_eigenspace(phi(channel), degeneracy_tol);
    return es.positive ? es.lambda_max : 0.0;
}

RMatrix second_derivative_qp_matrix(const WiretapChannel& channel, const MaxEigenspace& eigenspace) {
    if (!eigenspace.positive) {
        throw Error(ErrorKind::NotSecure, kLowSnrModule,
                    "lambda_max(Phi) = " + std::to_string(eigenspace.lambda_max) + " is not positive");
    }
    const CMatrix& u = eigenspace.basis;
    const CMatrix main = u.adjoint() * gram_main(channel) * u;
    const CMatrix eaves = u.adjoint() * gram_eaves(channel) * u;
    const double ratio_sq = channel.noise_ratio() * channel.noise_ratio();
    // main(j, i) = u_j^H G_m u_i
    const RMatrix m = main.cwiseAbs2().transpose() - ratio_sq * eaves.cwiseAbs2().transpose();
    return 0.5 * (m + m.transpose());
}

double c_ddot_0(const WiretapChannel& channel, const MaxEigenspace& eigenspace, const QpResult& qp) {
    if (!eigenspace.positive) {
        return 0.0;
    }
    return -static_cast<double>(channel.n_r()) * qp.value;
}

LowSnrSummary low_snr_summary(const WiretapChannel& channel, const LowSnrOptions& options) {
    LowSnrSummary summary;
    summary.eigenspace = analysis_eigenspace(channel, options.degeneracy_tol);
    if (!summary.eigenspace.positive) {
        summary.eb_n0_min = kInf;
        return summary;
    }
    const QpResult qp = minimize_simplex_quadratic(second_derivative_qp_matrix(channel, summary.eigenspace), options.qp);
    summary.secure_feasible = true;
    summary.c_dot0 = summary.eigenspace.lambda_max;
    summary.c_ddot0 = c_ddot_0(channel, summary.eigenspace, qp);
    summary.alpha = qp.minimizer.weights();
    summary.qp_certificate = qp.certificate;
    summary.eb_n0_min = min_bit_energy(summary.c_dot0);
    if (summary.c_ddot0 < 0.0) {
        summary.wideband_slope = 2.0 * summary.c_dot0 * summary.c_dot0 / -summary.c_ddot0;
    } else {
        summary.wideband_slope = kInf;
        summary.slope_unbounded = true;
    }
    return summary;
}

double capacity_expansion(const LowSnrSummary& summary, SnrPoint snr) {
    const double s = snr.value();
    return std::max(0.0, summary.c_dot0 * s + 0.5 * summary.c_ddot0 * s * s);
}

InputCovariance optimal_covariance(const WiretapChannel& channel, const MaxEigenspace& eigenspace,
                                   const std::vector<double>& alpha, double power) {
    if (alpha.size() != eigenspace.multiplicity) {
        throw Error(ErrorKind::BadSimplexWeights, kLowSnrModule,
                    "expected " + std::to_string(eigenspace.multiplicity) + " weights, got " +
                        std::to_string(alpha.size()));
    }
    const SimplexPoint weights(alpha);
    if (!(power > 0.0) || !std::isfinite(power)) {
        throw Error(ErrorKind::InvalidArgument, kLowSnrModule,
                    "power must be positive, got " + std::to_string(power));
    }
    const auto n = static_cast<Eigen::Index>(channel.n_t());
    CMatrix k = CMatrix::Zero(n, n);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const auto col = eigenspace.basis.col(static_cast<Eigen::Index>(i));
        k += weights[i] * (col * col.adjoint());
    }
    k = hermitian_part(k);
    k *= power / k.trace().real();
    return InputCovariance::make(std::move(k), power);
}

NoSecrecyDerivatives no_secrecy_derivatives(const WiretapChannel& channel, double degeneracy_tol) {
    const MaxEigenspace es = max_eigenspace(PhiMatrix{gram_main(channel)}, degeneracy_tol);
    const double lambda = std::max(es.lambda_max, 0.0);
    const double l = static_cast<double>(es.multiplicity);
    return {lambda, -static_cast<double>(channel.n_r()) / l * lambda * lambda, es.multiplicity};
}

bool eigenvalue_bound_check(const WiretapChannel& channel, double slack) {
    const double lambda_phi = hermitian_eigenvalues(phi(channel).matrix, kLowSnrModule).maxCoeff();
    const double lambda_main = hermitian_eigenvalues(gram_main(channel), kLowSnrModule).maxCoeff();
    const double lambda_eaves =
        hermitian_eigenvalues(channel.noise_ratio() * gram_eaves(channel), kLowSnrModule).minCoeff();
    return lambda_phi <= lambda_main - lambda_eaves + slack;
}

double min_bit_energy(double c_dot0) {
    return c_dot0 > 0.0 ? std::numbers::ln2 / c_dot0 : kInf;
}

double to_db(double linear) {
    return 10.0 * std::log10(linear);
}

}  // namespace wiretap
