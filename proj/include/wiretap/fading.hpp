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

// Monte-Carlo averages of the low-SNR quantities over i.i.d. Rayleigh fading
// with a short-term power constraint (tr(K_x) <= P in every realization).
//
// The sample stream is cut into fixed-size substreams. Substream k owns an
// mt19937_64 seeded from (seed, k) and draws its realizations in order;
// per-substream moments are merged in substream order. Results therefore do
// not depend on how many worker threads process the substreams.

#pragma once

#include <cstdint>

#include "wiretap/lowsnr.hpp"

namespace wiretap {

inline constexpr std::string_view kFadingModule = "fading-mc";
inline constexpr std::int64_t kSamplesPerSubstream = 1 << 14;

/// Entries of H_m and H_e are independent circularly-symmetric complex
/// Gaussians with E{|h|^2} = var_main (resp. var_eaves).
struct RayleighIid {
    double var_main = 1.0;
    double var_eaves = 1.0;
    friend bool operator==(const RayleighIid&, const RayleighIid&) = default;
};

struct FadingEnsemble {
    std::size_t n_t = 1;
    std::size_t n_r = 1;
    std::size_t n_e = 1;
    double noise_main = 1.0;
    double noise_eaves = 1.0;
    RayleighIid distribution = {};
    std::uint64_t seed = 0;
    std::int64_t n_samples = 1;

    /// Throws InvalidEnsemble.
    void validate() const;
    [[nodiscard]] bool is_scalar() const noexcept { return n_t == 1 && n_r == 1 && n_e == 1; }
    friend bool operator==(const FadingEnsemble&, const FadingEnsemble&) = default;
};

struct FadingOptions {
    unsigned workers = 1;
    double degeneracy_tol = kDefaultDegeneracyTol;
    /// Redraw a realization whose eigen-decomposition fails instead of aborting.
    bool resample_on_eigen_failure = false;
};

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;  ///< sample standard deviation / sqrt(n); 0 for n = 1
    std::int64_t n_samples = 0;
    std::uint64_t seed = 0;
    std::int64_t eigen_failures = 0;

    [[nodiscard]] bool low_confidence() const noexcept { return n_samples < 2; }
};

enum class FadingQuantity { CDot0, CDdot0 };

/// Average of the per-realization quantity over samples
/// [first_substream * kSamplesPerSubstream, + n_samples).
MonteCarloEstimate estimate_window(const FadingEnsemble& ensemble, FadingQuantity quantity,
                                   std::int64_t first_substream, std::int64_t n_samples,
                                   const FadingOptions& options = {});

/// E{[lambda_max(Phi)]^+}
MonteCarloEstimate fading_c_dot_0(const FadingEnsemble& ensemble, const FadingOptions& options = {});

/// -n_R E{min_a a^T M a * 1{lambda_max(Phi) > 0}}
MonteCarloEstimate fading_c_ddot_0(const FadingEnsemble& ensemble, const FadingOptions& options = {});

/// log 2 / E{[lambda_max(Phi)]^+} with a delta-method standard error.
/// Throws DegenerateDenominator when the mean slope is within 3 standard
/// errors of zero.
MonteCarloEstimate fading_eb_n0_min(const MonteCarloEstimate& c_dot0);
MonteCarloEstimate fading_eb_n0_min(const FadingEnsemble& ensemble, const FadingOptions& options = {});

/// Closed-form E{[|h_m|^2 - (N_m/N_e)|h_e|^2]^+} for scalar Rayleigh fading:
/// v_m^2 / (v_m + (N_m/N_e) v_e), which is N_e / (N_m + N_e) for unit variances.
double rayleigh_scalar_reference(double noise_main, double noise_eaves, double var_main = 1.0,
                                 double var_eaves = 1.0);

}  // namespace wiretap
