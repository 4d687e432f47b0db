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

#include "wiretap/fading.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <string>
#include <thread>

namespace wiretap {
namespace {

// Running mean / sum of squared deviations (Welford), mergeable (Chan et al.).
struct Moments {
    std::int64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    void merge(const Moments& other) {
        if (other.n == 0) {
            return;
        }
        const auto total = n + other.n;
        const double delta = other.mean - mean;
        mean += delta * static_cast<double>(other.n) / static_cast<double>(total);
        m2 += other.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(other.n) /
                             static_cast<double>(total);
        n = total;
    }
};

class RealizationSampler {
public:
    RealizationSampler(const FadingEnsemble& ensemble, std::uint64_t substream)
        : ensemble_(ensemble),
          rng_(make_rng(ensemble.seed, substream)),
          main_(0.0, std::sqrt(ensemble.distribution.var_main / 2.0)),
          eaves_(0.0, std::sqrt(ensemble.distribution.var_eaves / 2.0)) {}

    ChannelData next() {
        ChannelData data;
        data.h_main = fill(ensemble_.n_r, main_);
        data.h_eaves = fill(ensemble_.n_e, eaves_);
        data.noise_main = ensemble_.noise_main;
        data.noise_eaves = ensemble_.noise_eaves;
        return data;
    }

private:
    static std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t substream) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(substream), static_cast<std::uint32_t>(substream >> 32)};
        return std::mt19937_64(seq);
    }

    // Row-major draw order, real part before imaginary part.
    CMatrix fill(std::size_t rows, std::normal_distribution<double>& dist) {
        CMatrix h(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(ensemble_.n_t));
        for (Eigen::Index r = 0; r < h.rows(); ++r) {
            for (Eigen::Index c = 0; c < h.cols(); ++c) {
                const double re = dist(rng_);
                const double im = dist(rng_);
                h(r, c) = Complex(re, im);
            }
        }
        return h;
    }

    const FadingEnsemble& ensemble_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> main_;
    std::normal_distribution<double> eaves_;
};

double per_realization(const WiretapChannel& channel, FadingQuantity quantity, double tol) {
    if (quantity == FadingQuantity::CDot0) {
        return c_dot_0(channel, tol);
    }
    const MaxEigenspace es = analysis_eigenspace(channel, tol);
    if (!es.positive) {
        return 0.0;
    }
    const QpResult qp = minimize_simplex_quadratic(second_derivative_qp_matrix(channel, es));
    return c_ddot_0(channel, es, qp);
}

struct SubstreamResult {
    Moments moments;
    std::int64_t eigen_failures = 0;
};

SubstreamResult run_substream(const FadingEnsemble& ensemble, FadingQuantity quantity, std::uint64_t substream,
                              std::int64_t count, const FadingOptions& options) {
    SubstreamResult out;
    RealizationSampler sampler(ensemble, substream);
    for (std::int64_t i = 0; i < count; ++i) {
        for (;;) {
            try {
                const WiretapChannel channel = validate_channel(sampler.next());
                out.moments.push(per_realization(channel, quantity, options.degeneracy_tol));
                break;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::EigenFailure || !options.resample_on_eigen_failure) {
                    throw;
                }
                ++out.eigen_failures;
            }
        }
    }
    return out;
}

}  // namespace

void FadingEnsemble::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidEnsemble, kFadingModule, msg); };
    if (n_t < 1 || n_r < 1 || n_e < 1) {
        fail("antenna counts n_t, n_r, n_e must be >= 1");
    }
    if (!(noise_main > 0.0) || !(noise_eaves > 0.0) || !std::isfinite(noise_main) || !std::isfinite(noise_eaves)) {
        fail("noise variances must be positive and finite");
    }
    if (!(distribution.var_main > 0.0) || !(distribution.var_eaves > 0.0) ||
        !std::isfinite(distribution.var_main) || !std::isfinite(distribution.var_eaves)) {
        fail("fading variances must be positive and finite");
    }
    if (n_samples < 1) {
        fail("n_samples must be >= 1, got " + std::to_string(n_samples));
    }
}

MonteCarloEstimate estimate_window(const FadingEnsemble& ensemble, FadingQuantity quantity,
                                   std::int64_t first_substream, std::int64_t n_samples,
                                   const FadingOptions& options) {
    ensemble.validate();
    if (n_samples < 1 || first_substream < 0) {
        throw Error(ErrorKind::InvalidEnsemble, kFadingModule, "sample window must be nonempty");
    }
    const std::int64_t n_sub = (n_samples + kSamplesPerSubstream - 1) / kSamplesPerSubstream;
    std::vector<SubstreamResult> results(static_cast<std::size_t>(n_sub));
    auto count_for = [&](std::int64_t k) { return std::min(kSamplesPerSubstream, n_samples - k * kSamplesPerSubstream); };

    const auto workers = static_cast<std::int64_t>(std::max(1u, options.workers));
    if (workers == 1) {
        for (std::int64_t k = 0; k < n_sub; ++k) {
            results[static_cast<std::size_t>(k)] = run_substream(
                ensemble, quantity, static_cast<std::uint64_t>(first_substream + k), count_for(k), options);
        }
    } else {
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        std::vector<std::thread> threads;
        for (std::int64_t w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                try {
                    for (std::int64_t k = w; k < n_sub; k += workers) {
                        results[static_cast<std::size_t>(k)] =
                            run_substream(ensemble, quantity, static_cast<std::uint64_t>(first_substream + k),
                                          count_for(k), options);
                    }
                } catch (...) {
                    errors[static_cast<std::size_t>(w)] = std::current_exception();
                }
            });
        }
        for (auto& t : threads) {
            t.join();
        }
        for (const auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    Moments total;
    MonteCarloEstimate out;
    for (const auto& r : results) {
        total.merge(r.moments);
        out.eigen_failures += r.eigen_failures;
    }
    out.mean = total.mean;
    out.n_samples = total.n;
    out.seed = ensemble.seed;
    out.std_error = total.n > 1
                        ? std::sqrt(total.m2 / static_cast<double>(total.n - 1)) / std::sqrt(static_cast<double>(total.n))
                        : 0.0;
    return out;
}

MonteCarloEstimate fading_c_dot_0(const FadingEnsemble& ensemble, const FadingOptions& options) {
    return estimate_window(ensemble, FadingQuantity::CDot0, 0, ensemble.n_samples, options);
}

MonteCarloEstimate fading_c_ddot_0(const FadingEnsemble& ensemble, const FadingOptions& options) {
    return estimate_window(ensemble, FadingQuantity::CDdot0, 0, ensemble.n_samples, options);
}

MonteCarloEstimate fading_eb_n0_min(const MonteCarloEstimate& c_dot0) {
    if (!(c_dot0.mean > 3.0 * c_dot0.std_error) || !(c_dot0.mean > 0.0)) {
        throw Error(ErrorKind::DegenerateDenominator, kFadingModule,
                    "mean slope " + std::to_string(c_dot0.mean) + " is not certifiably positive (std_error " +
                        std::to_string(c_dot0.std_error) + ")");
    }
    MonteCarloEstimate out = c_dot0;
    out.mean = std::numbers::ln2 / c_dot0.mean;
    out.std_error = std::numbers::ln2 * c_dot0.std_error / (c_dot0.mean * c_dot0.mean);
    return out;
}

MonteCarloEstimate fading_eb_n0_min(const FadingEnsemble& ensemble, const FadingOptions& options) {
    return fading_eb_n0_min(fading_c_dot_0(ensemble, options));
}

double rayleigh_scalar_reference(double noise_main, double noise_eaves, double var_main, double var_eaves) {
    if (!(noise_main > 0.0) || !(noise_eaves > 0.0) || !(var_main > 0.0) || !(var_eaves > 0.0)) {
        throw Error(ErrorKind::InvalidEnsemble, kFadingModule, "noises and variances must be positive");
    }
    return var_main * var_main / (var_main + noise_main / noise_eaves * var_eaves);
}

}  // namespace wiretap
