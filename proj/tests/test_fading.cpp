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

#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "wiretap/fading.hpp"

using namespace wiretap;

namespace {

FadingEnsemble scalar_rayleigh(double nm, double ne, std::int64_t n, std::uint64_t seed = 7) {
    FadingEnsemble e;
    e.noise_main = nm;
    e.noise_eaves = ne;
    e.n_samples = n;
    e.seed = seed;
    return e;
}

bool within(const MonteCarloEstimate& e, double target, double k = 3.0) {
    return std::abs(e.mean - target) <= k * e.std_error;
}

// Composite Simpson rule on [0, b] x [0, b].
double simpson_2d(const std::function<double(double, double)>& f, double b, int n) {
    const double h = b / n;
    auto w = [n](int i) { return (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0); };
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            sum += w(i) * w(j) * f(i * h, j * h);
        }
    }
    return sum * h * h / 9.0;
}

// E{(X^2 - Y^2) 1{X > Y}} for X, Y iid Exp(1). Substituting X = Y + t makes
// the integrand smooth: (2 y t + t^2) e^{-2y} e^{-t} over y, t >= 0.
double exponential_pair_oracle() {
    return simpson_2d([](double y, double t) { return (2.0 * y * t + t * t) * std::exp(-2.0 * y - t); }, 40.0, 2000);
}

// E{(X - r Y)^+} with X ~ Exp(mean vm), Y ~ Exp(mean ve); X = r Y + t.
double positive_part_oracle(double vm, double ve, double r) {
    return simpson_2d(
        [=](double y, double t) {
            return t * std::exp(-(r * y + t) / vm) / vm * std::exp(-y / ve) / ve;
        },
        40.0 * std::max({vm, ve, 1.0}), 4000);
}

}  // namespace

TEST_CASE("numeric oracles for the scalar Rayleigh targets") {
    // Frozen: both integrals were evaluated once here and the closed forms
    // below are asserted against them.
    CHECK(exponential_pair_oracle() == doctest::Approx(1.5).epsilon(1e-7));
    CHECK(positive_part_oracle(1.0, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-7));
    CHECK(positive_part_oracle(1.0, 1.0, 2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-7));
    CHECK(positive_part_oracle(2.0, 0.5, 1.5) == doctest::Approx(rayleigh_scalar_reference(1.5, 1.0, 2.0, 0.5)).epsilon(1e-7));
}

TEST_CASE("rayleigh_scalar_reference") {
    CHECK(rayleigh_scalar_reference(1.0, 1.0) == 0.5);
    CHECK(rayleigh_scalar_reference(2.0, 1.0) == doctest::Approx(1.0 / 3.0));
    CHECK(rayleigh_scalar_reference(1.0, 2.0) == doctest::Approx(2.0 / 3.0));
    CHECK(rayleigh_scalar_reference(1e-12, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("ensemble validation") {
    FadingEnsemble e = scalar_rayleigh(1.0, 1.0, 10);
    CHECK_NOTHROW(e.validate());
    auto rejects = [](FadingEnsemble bad) {
        try {
            fading_c_dot_0(bad);
        } catch (const Error& err) {
            return err.kind() == ErrorKind::InvalidEnsemble;
        }
        return false;
    };
    FadingEnsemble bad = e;
    bad.n_t = 0;
    CHECK(rejects(bad));
    bad = e;
    bad.n_samples = 0;
    CHECK(rejects(bad));
    bad = e;
    bad.distribution.var_eaves = 0.0;
    CHECK(rejects(bad));
    bad = e;
    bad.noise_main = -1.0;
    CHECK(rejects(bad));
}

TEST_CASE("scalar Rayleigh slope") {
    for (auto [nm, ne] : {std::pair{1.0, 1.0}, std::pair{2.0, 1.0}, std::pair{1.0, 2.0}}) {
        const MonteCarloEstimate e = fading_c_dot_0(scalar_rayleigh(nm, ne, 200'000));
        CHECK(within(e, ne / (nm + ne)));
        CHECK(e.n_samples == 200'000);
        CHECK(e.seed == 7);
    }
}

TEST_CASE("scalar Rayleigh curvature") {
    const MonteCarloEstimate e = fading_c_ddot_0(scalar_rayleigh(1.0, 1.0, 200'000));
    CHECK(within(e, -1.5));
    CHECK(e.mean < 0.0);
}

TEST_CASE("vanishing eavesdropper") {
    FadingEnsemble e = scalar_rayleigh(1.0, 1.0, 200'000);
    e.distribution.var_eaves = 1e-12;
    CHECK(within(fading_c_dot_0(e), 1.0));
    // E{|h|^4} = 2 for a unit-variance complex Gaussian.
    CHECK(within(fading_c_ddot_0(e), -2.0));
    CHECK(within(fading_eb_n0_min(e), std::numbers::ln2));
}

TEST_CASE("indicator suppression and degenerate bit energy") {
    FadingEnsemble e = scalar_rayleigh(1e9, 1.0, 5'000);
    const MonteCarloEstimate dot = fading_c_dot_0(e);
    const MonteCarloEstimate ddot = fading_c_ddot_0(e);
    CHECK(std::abs(dot.mean) < 1e-6);
    CHECK(std::abs(ddot.mean) < 1e-6);
    try {
        fading_eb_n0_min(dot);
        FAIL("expected DegenerateDenominator");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::DegenerateDenominator);
    }
}

TEST_CASE("fading bit energy") {
    const MonteCarloEstimate eb = fading_eb_n0_min(scalar_rayleigh(1.0, 1.0, 200'000));
    CHECK(within(eb, 2.0 * std::numbers::ln2));
    const MonteCarloEstimate dot = fading_c_dot_0(scalar_rayleigh(1.0, 1.0, 200'000));
    CHECK(eb.mean == doctest::Approx(std::numbers::ln2 / dot.mean).epsilon(1e-15));
    CHECK(eb.std_error == doctest::Approx(std::numbers::ln2 * dot.std_error / (dot.mean * dot.mean)).epsilon(1e-15));
}

TEST_CASE("fading improves on the unfaded channel") {
    // Unfaded |h_m|^2 = |h_e|^2 = 1 with N_m = N_e gives no secrecy at all.
    const MonteCarloEstimate e = fading_c_dot_0(scalar_rayleigh(1.0, 1.0, 50'000));
    CHECK(e.mean - 3.0 * e.std_error > 0.0);
    const MonteCarloEstimate f = fading_c_dot_0(scalar_rayleigh(0.5, 1.0, 50'000));
    CHECK(f.mean + 3.0 * f.std_error >= 1.0 - 0.5);
}

TEST_CASE("single sample has low confidence") {
    const MonteCarloEstimate e = fading_c_dot_0(scalar_rayleigh(1.0, 1.0, 1));
    CHECK(e.n_samples == 1);
    CHECK(e.std_error == 0.0);
    CHECK(e.low_confidence());
}

TEST_CASE("determinism and worker independence") {
    FadingEnsemble e;
    e.n_t = 3;
    e.n_r = 2;
    e.n_e = 2;
    e.noise_eaves = 1.5;
    e.seed = 123;
    e.n_samples = 3 * kSamplesPerSubstream + 17;
    const MonteCarloEstimate a = fading_c_ddot_0(e);
    const MonteCarloEstimate b = fading_c_ddot_0(e);
    FadingOptions threaded;
    threaded.workers = 4;
    const MonteCarloEstimate c = fading_c_ddot_0(e, threaded);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(a.mean == c.mean);
    CHECK(a.std_error == c.std_error);

    e.seed = 124;
    CHECK(fading_c_ddot_0(e).mean != a.mean);
}

TEST_CASE("multi-antenna estimates keep their signs") {
    FadingEnsemble e;
    e.n_t = 2;
    e.n_r = 2;
    e.n_e = 3;
    e.n_samples = 20'000;
    CHECK(fading_c_dot_0(e).mean >= 0.0);
    CHECK(fading_c_ddot_0(e).mean <= 0.0);
}

TEST_CASE("split-sample consistency") {
    FadingEnsemble e;
    e.n_t = 2;
    e.n_r = 1;
    e.n_e = 2;
    e.seed = 5;
    const std::int64_t half = 4 * kSamplesPerSubstream;
    for (FadingQuantity q : {FadingQuantity::CDot0, FadingQuantity::CDdot0}) {
        const MonteCarloEstimate a = estimate_window(e, q, 0, half);
        const MonteCarloEstimate b = estimate_window(e, q, 4, half);
        const double combined = std::hypot(a.std_error, b.std_error);
        CHECK(std::abs(a.mean - b.mean) <= 6.0 * combined);
        CHECK(a.mean != b.mean);
    }
}
