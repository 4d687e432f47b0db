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

// Multiple-antenna wiretap channel model.
//
//   y_m = H_m x + n_m,   E{n_m n_m^H} = N_m I   (legitimate receiver, n_R antennas)
//   y_e = H_e x + n_e,   E{n_e n_e^H} = N_e I   (eavesdropper, n_E antennas)
//
// with an n_T-antenna transmitter subject to tr(K_x) <= P. SNR is
// P / (n_R N_m) and every rate is reported in nats per receive dimension.

#pragma once

#include <cstddef>

#include "wiretap/error.hpp"
#include "wiretap/linalg.hpp"

namespace wiretap {

inline constexpr std::string_view kChannelModule = "channel-model";

/// Numerical tolerances of the channel model. The defaults are the module
/// constants; callers may override them.
struct Tolerances {
    double hermitian = 1e-10;  ///< relative to max(1, max|K|)
    double psd = 1e-10;        ///< smallest eigenvalue >= -psd * trace
    double trace = 1e-10;      ///< trace <= budget * (1 + trace)
};

/// Unvalidated channel description, as read from a file or built in code.
struct ChannelData {
    CMatrix h_main;  ///< n_R x n_T
    CMatrix h_eaves; ///< n_E x n_T
    double noise_main = 1.0;
    double noise_eaves = 1.0;
};

/// A validated wiretap channel. Instances can only be obtained through
/// validate_channel() and are immutable afterwards.
class WiretapChannel {
public:
    [[nodiscard]] const CMatrix& h_main() const noexcept { return h_main_; }
    [[nodiscard]] const CMatrix& h_eaves() const noexcept { return h_eaves_; }
    [[nodiscard]] double noise_main() const noexcept { return noise_main_; }
    [[nodiscard]] double noise_eaves() const noexcept { return noise_eaves_; }
    /// N_m / N_e
    [[nodiscard]] double noise_ratio() const noexcept { return noise_main_ / noise_eaves_; }

    [[nodiscard]] std::size_t n_t() const noexcept { return static_cast<std::size_t>(h_main_.cols()); }
    [[nodiscard]] std::size_t n_r() const noexcept { return static_cast<std::size_t>(h_main_.rows()); }
    [[nodiscard]] std::size_t n_e() const noexcept { return static_cast<std::size_t>(h_eaves_.rows()); }

    [[nodiscard]] ChannelData data() const { return {h_main_, h_eaves_, noise_main_, noise_eaves_}; }

private:
    friend WiretapChannel validate_channel(ChannelData raw);
    WiretapChannel(CMatrix h_main, CMatrix h_eaves, double noise_main, double noise_eaves);

    CMatrix h_main_;
    CMatrix h_eaves_;
    double noise_main_;
    double noise_eaves_;
};

/// Checks dimensions, noise positivity and finiteness. Throws
/// DimensionMismatch, NonPositiveNoise or NonFiniteEntry naming the field.
WiretapChannel validate_channel(ChannelData raw);

/// Hermitian positive-semidefinite transmit covariance with a power budget.
class InputCovariance {
public:
    /// Validates the Hermitian, PSD and trace invariants; throws InvalidCovariance.
    static InputCovariance make(CMatrix matrix, double power_budget, const Tolerances& tol = {});

    /// The all-zero covariance of dimension n_t.
    static InputCovariance zero(std::size_t n_t, double power_budget);

    [[nodiscard]] const CMatrix& matrix() const noexcept { return matrix_; }
    [[nodiscard]] double power_budget() const noexcept { return power_budget_; }
    [[nodiscard]] double trace() const { return matrix_.trace().real(); }
    [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

private:
    InputCovariance(CMatrix matrix, double power_budget);

    CMatrix matrix_;
    double power_budget_;
};

/// Nonnegative, finite SNR value.
class SnrPoint {
public:
    explicit SnrPoint(double snr);
    [[nodiscard]] double value() const noexcept { return snr_; }

private:
    double snr_;
};

/// P = SNR * n_R * N_m.
double power_for_snr(const WiretapChannel& channel, SnrPoint snr);

/// (1/n_R)[log det(I + H_m K H_m^H / N_m) - log det(I + H_e K H_e^H / N_e)].
/// Not clamped at zero.
double secrecy_rate(const WiretapChannel& channel, const InputCovariance& cov);

/// H_m^H H_m, symmetrized.
CMatrix gram_main(const WiretapChannel& channel);
/// H_e^H H_e, symmetrized.
CMatrix gram_eaves(const WiretapChannel& channel);

namespace detail {
// Same objective without re-validating the covariance; used by inner loops
// that construct PSD matrices by parameterization.
double secrecy_rate_unchecked(const WiretapChannel& channel, const CMatrix& k);
}  // namespace detail

}  // namespace wiretap
