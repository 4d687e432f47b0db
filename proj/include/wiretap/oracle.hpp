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

// Brute-force secrecy capacity at a fixed SNR.
//
// The covariance is parameterized as K = P L L^H with ||L||_F <= 1, which is
// PSD by construction and satisfies tr(K) <= P. Projected gradient ascent on
// L is restarted from seeded random factors; the objective is neither
// concave nor convex in K so a single run can stall in a local maximum.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wiretap/channel.hpp"

namespace wiretap {

inline constexpr std::string_view kOracleModule = "capacity-oracle";

struct OracleConfig {
    int n_restarts = 32;
    int max_iters = 5000;
    double tol = 1e-9;
    std::uint64_t seed = 0x0a1c'1e00ULL;

    /// Throws InvalidArgument unless every field is positive and tol < 1.
    void validate() const;
    friend bool operator==(const OracleConfig&, const OracleConfig&) = default;
};

struct OracleResult {
    double rate = 0.0;
    InputCovariance covariance;
    /// The beamforming floor along the top eigenvector of Phi beat every restart.
    bool floor_binding = false;
};

/// Numerical maximum of the secrecy rate over tr(K) <= SNR n_R N_m.
/// Throws NonPositiveSnr for snr == 0.
OracleResult max_secrecy_rate(const WiretapChannel& channel, SnrPoint snr,
                              const OracleConfig& config = {});

inline const std::vector<double> kDefaultDerivativeSamples = {2e-4, 5e-4, 1e-3, 2e-3};

struct DerivativeEstimate {
    double c_dot0;
    double c_ddot0;
};

/// Least-squares fit of a s + (b/2) s^2 (no constant term) through oracle
/// capacities at the sample SNRs. Throws BadSampleGrid.
DerivativeEstimate estimate_derivatives(const WiretapChannel& channel, const OracleConfig& config,
                                        std::span<const double> snr_samples = kDefaultDerivativeSamples);

/// Same fit applied to given (snr, capacity) pairs.
DerivativeEstimate fit_derivatives(std::span<const double> snr, std::span<const double> capacity);

struct CapacityCurve {
    std::vector<double> snr_grid;
    std::vector<double> values;
};

/// Oracle capacity on an ascending grid; C(0) = 0 exactly.
CapacityCurve capacity_curve(const WiretapChannel& channel, std::span<const double> snr_grid,
                             const OracleConfig& config = {});

/// Chord test: C(s_k) >= interpolation of neighbours - slack at every
/// interior point (midpoint test on uniform grids). Throws BadGrid.
bool concavity_check(const CapacityCurve& curve, double slack = 1e-6);

}  // namespace wiretap
