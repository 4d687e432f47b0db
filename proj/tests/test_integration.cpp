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

// End-to-end runs over the scenario files shipped in scenarios/.

#include <doctest.h>

#include <string>

#include "wiretap/fading.hpp"
#include "wiretap/lowsnr.hpp"
#include "wiretap/oracle.hpp"
#include "wiretap/scenario.hpp"

using namespace wiretap;

namespace {

Scenario load(const std::string& name) {
    return load_scenario(std::string(WIRETAP_SCENARIO_DIR) + "/" + name);
}

}  // namespace

TEST_CASE("parallel channel: analysis, expansion and oracle agree") {
    const Scenario s = load("diag3.json");
    const WiretapChannel ch = validate_channel(std::get<FixedMode>(s.mode).channel);
    const LowSnrSummary summary = low_snr_summary(ch);
    CHECK(summary.eigenspace.multiplicity == 2);
    CHECK(summary.c_ddot0 == doctest::Approx(-26.25));

    const CapacityCurve curve = capacity_curve(ch, *s.snr_grid, *s.oracle);
    for (std::size_t i = 0; i < curve.values.size(); ++i) {
        const double snr = curve.snr_grid[i];
        const double expansion = capacity_expansion(summary, SnrPoint(snr));
        CHECK(curve.values[i] >= -1e-9);
        if (snr > 0.0 && snr <= 1e-3) {
            CHECK(std::abs(curve.values[i] - expansion) <= 0.02 * expansion);
        }
        // The analytic covariance is feasible, so the oracle can not fall below it.
        if (snr > 0.0) {
            const double p = power_for_snr(ch, SnrPoint(snr));
            const double analytic = secrecy_rate(ch, optimal_covariance(ch, summary.eigenspace, summary.alpha, p));
            CHECK(curve.values[i] >= analytic - 1e-12);
        }
    }
    const DerivativeEstimate d = estimate_derivatives(ch, *s.oracle);
    CHECK(d.c_dot0 == doctest::Approx(summary.c_dot0).epsilon(1e-3));
    CHECK(d.c_ddot0 == doctest::Approx(summary.c_ddot0).epsilon(5e-2));
}

TEST_CASE("equal channels: no secrecy anywhere") {
    const Scenario s = load("equal-channels.json");
    const WiretapChannel ch = validate_channel(std::get<FixedMode>(s.mode).channel);
    CHECK_FALSE(low_snr_summary(ch).secure_feasible);
    for (double snr : {0.01, 0.1}) {
        CHECK(max_secrecy_rate(ch, SnrPoint(snr)).rate == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }
}

TEST_CASE("no eavesdropper: secrecy analysis equals the open-channel baseline") {
    const Scenario s = load("scalar-no-eavesdropper.json");
    const WiretapChannel ch = validate_channel(std::get<FixedMode>(s.mode).channel);
    const LowSnrSummary summary = low_snr_summary(ch);
    const NoSecrecyDerivatives base = no_secrecy_derivatives(ch);
    CHECK(summary.c_dot0 == base.c_dot0);
    CHECK(summary.c_ddot0 == doctest::Approx(base.c_ddot0).epsilon(1e-14));
    const CapacityCurve curve = capacity_curve(ch, *s.snr_grid, *s.oracle);
    for (std::size_t i = 0; i < curve.values.size(); ++i) {
        CHECK(curve.values[i] == doctest::Approx(std::log1p(curve.snr_grid[i])).epsilon(1e-10));
    }
}

TEST_CASE("fading scenarios") {
    Scenario s = load("rayleigh-scalar.json");
    FadingEnsemble e = std::get<FadingMode>(s.mode).ensemble;
    const MonteCarloEstimate dot = fading_c_dot_0(e);
    CHECK(std::abs(dot.mean - rayleigh_scalar_reference(e.noise_main, e.noise_eaves)) <= 3.0 * dot.std_error);
    const MonteCarloEstimate ddot = fading_c_ddot_0(e);
    CHECK(std::abs(ddot.mean + 1.5) <= 3.0 * ddot.std_error);

    s = load("rayleigh-2x2.json");
    e = std::get<FadingMode>(s.mode).ensemble;
    const MonteCarloEstimate multi = fading_c_dot_0(e);
    CHECK(multi.mean > 0.0);
    CHECK(fading_eb_n0_min(multi).mean == doctest::Approx(std::log(2.0) / multi.mean));
}
