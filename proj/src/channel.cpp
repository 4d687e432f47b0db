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

#include "wiretap/channel.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <utility>

namespace wiretap {
namespace {

std::string shape(const CMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_finite(const CMatrix& m, const char* field) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const Complex z = m(r, c);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                std::ostringstream msg;
                msg << field << "[" << r << "][" << c << "] is not finite";
                throw Error(ErrorKind::NonFiniteEntry, kChannelModule, msg.str());
            }
        }
    }
}

void require_positive_noise(double value, const char* field) {
    if (!std::isfinite(value)) {
        throw Error(ErrorKind::NonFiniteEntry, kChannelModule, std::string(field) + " is not finite");
    }
    if (!(value > 0.0)) {
        throw Error(ErrorKind::NonPositiveNoise, kChannelModule,
                    std::string(field) + " must be > 0, got " + std::to_string(value));
    }
}

}  // namespace

WiretapChannel::WiretapChannel(CMatrix h_main, CMatrix h_eaves, double noise_main, double noise_eaves)
    : h_main_(std::move(h_main)),
      h_eaves_(std::move(h_eaves)),
      noise_main_(noise_main),
      noise_eaves_(noise_eaves) {}

WiretapChannel validate_channel(ChannelData raw) {
    if (raw.h_main.rows() < 1 || raw.h_main.cols() < 1) {
        throw Error(ErrorKind::DimensionMismatch, kChannelModule,
                    "h_main must have at least one row and one column, got " + shape(raw.h_main));
    }
    if (raw.h_eaves.rows() < 1 || raw.h_eaves.cols() < 1) {
        throw Error(ErrorKind::DimensionMismatch, kChannelModule,
                    "h_eaves must have at least one row and one column, got " + shape(raw.h_eaves));
    }
    if (raw.h_main.cols() != raw.h_eaves.cols()) {
        throw Error(ErrorKind::DimensionMismatch, kChannelModule,
                    "h_eaves has " + std::to_string(raw.h_eaves.cols()) +
                        " columns but h_main has " + std::to_string(raw.h_main.cols()) +
                        " (both must equal n_t)");
    }
    require_positive_noise(raw.noise_main, "noise_main");
    require_positive_noise(raw.noise_eaves, "noise_eaves");
    require_finite(raw.h_main, "h_main");
    require_finite(raw.h_eaves, "h_eaves");
    return WiretapChannel(std::move(raw.h_main), std::move(raw.h_eaves), raw.noise_main, raw.noise_eaves);
}

InputCovariance::InputCovariance(CMatrix matrix, double power_budget)
    : matrix_(std::move(matrix)), power_budget_(power_budget) {}

InputCovariance InputCovariance::make(CMatrix matrix, double power_budget, const Tolerances& tol) {
    if (!(power_budget > 0.0) || !std::isfinite(power_budget)) {
        throw Error(ErrorKind::InvalidCovariance, kChannelModule,
                    "power_budget must be positive and finite, got " + std::to_string(power_budget));
    }
    if (matrix.rows() != matrix.cols() || matrix.rows() < 1) {
        throw Error(ErrorKind::DimensionMismatch, kChannelModule,
                    "covariance must be square and non-empty, got " + shape(matrix));
    }
    require_finite(matrix, "covariance");
    const double scale = std::max(1.0, max_abs(matrix));
    const double asym = max_abs(matrix - matrix.adjoint());
    if (asym > tol.hermitian * scale) {
        throw Error(ErrorKind::InvalidCovariance, kChannelModule,
                    "covariance is not Hermitian: max|K - K^H| = " + std::to_string(asym));
    }
    const double trace = matrix.trace().real();
    const RVector eig = hermitian_eigenvalues(hermitian_part(matrix), kChannelModule);
    if (eig(0) < -tol.psd * std::max(trace, 0.0)) {
        throw Error(ErrorKind::InvalidCovariance, kChannelModule,
                    "covariance is not positive semidefinite: smallest eigenvalue " + std::to_string(eig(0)));
    }
    if (trace > power_budget * (1.0 + tol.trace)) {
        throw Error(ErrorKind::InvalidCovariance, kChannelModule,
                    "trace " + std::to_string(trace) + " exceeds power budget " + std::to_string(power_budget));
    }
    return InputCovariance(std::move(matrix), power_budget);
}

InputCovariance InputCovariance::zero(std::size_t n_t, double power_budget) {
    const auto n = static_cast<Eigen::Index>(n_t);
    return make(CMatrix::Zero(n, n), power_budget);
}

SnrPoint::SnrPoint(double snr) : snr_(snr) {
    if (!std::isfinite(snr) || snr < 0.0) {
        throw Error(ErrorKind::InvalidSnr, kChannelModule,
                    "SNR must be finite and nonnegative, got " + std::to_string(snr));
    }
}

double power_for_snr(const WiretapChannel& channel, SnrPoint snr) {
    return snr.value() * static_cast<double>(channel.n_r()) * channel.noise_main();
}

namespace detail {

double secrecy_rate_unchecked(const WiretapChannel& channel, const CMatrix& k) {
    const CMatrix& hm = channel.h_main();
    const CMatrix& he = channel.h_eaves();
    const CMatrix main_arg = hm * k * hm.adjoint() / channel.noise_main();
    const CMatrix eaves_arg = he * k * he.adjoint() / channel.noise_eaves();
    return (log_det_identity_plus(main_arg, kChannelModule) - log_det_identity_plus(eaves_arg, kChannelModule)) /
           static_cast<double>(channel.n_r());
}

}  // namespace detail

double secrecy_rate(const WiretapChannel& channel, const InputCovariance& cov) {
    if (cov.dim() != channel.n_t()) {
        throw Error(ErrorKind::DimensionMismatch, kChannelModule,
                    "covariance is " + std::to_string(cov.dim()) + "x" + std::to_string(cov.dim()) +
                        " but n_t = " + std::to_string(channel.n_t()));
    }
    return detail::secrecy_rate_unchecked(channel, cov.matrix());
}

CMatrix gram_main(const WiretapChannel& channel) {
    return hermitian_part(channel.h_main().adjoint() * channel.h_main());
}

CMatrix gram_eaves(const WiretapChannel& channel) {
    return hermitian_part(channel.h_eaves().adjoint() * channel.h_eaves());
}

}  // namespace wiretap
