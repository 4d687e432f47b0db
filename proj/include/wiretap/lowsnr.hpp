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

// Low-SNR behaviour of the wiretap secrecy capacity.
//
// With Phi = H_m^H H_m - (N_m/N_e) H_e^H H_e, the capacity slope at SNR = 0
// is [lambda_max(Phi)]^+ and is attained by transmitting inside the
// maximum-eigenvalue eigenspace of Phi. The curvature at SNR = 0 is
//
//   -n_R min_{a in simplex} sum_ij a_i a_j M_ij,
//   M_ij = |u_j^H G_m u_i|^2 - (N_m/N_e)^2 |u_j^H G_e u_i|^2,
//
// over an orthonormal basis {u_i} of that eigenspace. Minimum bit energy is
// log 2 / C'(0) and the wideband slope 2 C'(0)^2 / (-C''(0)).

#pragma once

#include <utility>
#include <vector>

#include "wiretap/channel.hpp"
#include "wiretap/simplex_qp.hpp"

namespace wiretap {

inline constexpr std::string_view kLowSnrModule = "lowsnr-analysis";
inline constexpr double kDefaultDegeneracyTol = 1e-8;

struct PhiMatrix {
    CMatrix matrix;
};

struct MaxEigenspace {
    double lambda_max = 0.0;
    std::size_t multiplicity = 0;
    CMatrix basis;  ///< n_T x multiplicity, orthonormal columns
    double degeneracy_tol = kDefaultDegeneracyTol;
    /// lambda_max exceeds zero by more than the degeneracy threshold.
    bool positive = false;
};

struct LowSnrOptions {
    double degeneracy_tol = kDefaultDegeneracyTol;
    QpConfig qp = {};
};

struct LowSnrSummary {
    double c_dot0 = 0.0;
    double c_ddot0 = 0.0;
    std::vector<double> alpha;  ///< empty when not secure
    double eb_n0_min = 0.0;     ///< linear scale, +inf when not secure
    double wideband_slope = 0.0;
    bool secure_feasible = false;
    /// C''(0) vanished while C'(0) > 0; the slope is reported as +inf.
    bool slope_unbounded = false;
    MaxEigenspace eigenspace;
    QpCertificate qp_certificate = QpCertificate::KktVerified;
};

PhiMatrix phi(const WiretapChannel& channel);

/// Groups every eigenvalue within degeneracy_tol * max(1, |lambda_max|) of
/// the largest one and returns an orthonormal basis of that eigenspace.
MaxEigenspace max_eigenspace(const PhiMatrix& phi, double degeneracy_tol = kDefaultDegeneracyTol);

/// Rotates the basis of a degenerate eigenspace so that it diagonalizes the
/// restricted main Gram matrix U^H G_m U (eigenvalues descending). On the
/// eigenspace the restricted eavesdropper Gram is then diagonal too, which
/// makes the QP matrix diagonal and the simplex minimum basis independent.
MaxEigenspace align_to_main_gram(const MaxEigenspace& eigenspace, const CMatrix& gram_main);

/// Eigenspace used by the analysis: max_eigenspace() followed by align_to_main_gram().
MaxEigenspace analysis_eigenspace(const WiretapChannel& channel,
                                  double degeneracy_tol = kDefaultDegeneracyTol);

double c_dot_0(const WiretapChannel& channel, double degeneracy_tol = kDefaultDegeneracyTol);

/// Throws NotSecure when the eigenspace is not positive.
RMatrix second_derivative_qp_matrix(const WiretapChannel& channel, const MaxEigenspace& eigenspace);

/// -n_R * qp.value when the eigenspace is positive, 0 otherwise.
double c_ddot_0(const WiretapChannel& channel, const MaxEigenspace& eigenspace, const QpResult& qp);

LowSnrSummary low_snr_summary(const WiretapChannel& channel, const LowSnrOptions& options = {});

/// C'(0) s + C''(0) s^2 / 2, clamped below at zero.
double capacity_expansion(const LowSnrSummary& summary, SnrPoint snr);

/// K = P sum_i a_i u_i u_i^H with trace exactly P. Throws BadSimplexWeights.
InputCovariance optimal_covariance(const WiretapChannel& channel, const MaxEigenspace& eigenspace,
                                   const std::vector<double>& alpha, double power);

struct NoSecrecyDerivatives {
    double c_dot0;
    double c_ddot0;
    std::size_t multiplicity;
};

/// Capacity slope and curvature at SNR = 0 without an eavesdropper:
/// (lambda_max(G_m), -(n_R / l) lambda_max(G_m)^2).
NoSecrecyDerivatives no_secrecy_derivatives(const WiretapChannel& channel,
                                            double degeneracy_tol = kDefaultDegeneracyTol);

/// lambda_max(Phi) <= lambda_max(G_m) - lambda_min((N_m/N_e) G_e) + slack.
bool eigenvalue_bound_check(const WiretapChannel& channel, double slack = 1e-9);

/// log 2 / c, +inf for c <= 0.
double min_bit_energy(double c_dot0);

/// 10 log10(x); +inf stays +inf.
double to_db(double linear);

}  // namespace wiretap
