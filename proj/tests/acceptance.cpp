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

// Acceptance gate. Runs every acceptance criterion at its stated tolerance
// and runtime budget, prints one PASS/FAIL line each, and exits nonzero if
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "wiretap/fading.hpp"
#include "wiretap/lowsnr.hpp"
#include "wiretap/oracle.hpp"

using namespace wiretap;
using wiretap::testing::make_channel;
using wiretap::testing::random_channel;
using wiretap::testing::scalar_channel;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<Outcome()> run;
};

std::string fmt(const char* pattern, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

Outcome parallel_channel_reproduction() {
    const LowSnrSummary s = low_snr_summary(wiretap::testing::parallel_channel());
    const bool ok = std::abs(s.eigenspace.lambda_max - 3.0) <= 1e-9 && s.eigenspace.multiplicity == 2 &&
                    s.alpha.size() == 2 && std::abs(s.alpha[0] - 5.0 / 12.0) <= 1e-9 &&
                    std::abs(s.alpha[1] - 7.0 / 12.0) <= 1e-9;
    return {ok, fmt("lambda_max=%.15g l=%zu alpha=(%.15g, %.15g)", s.eigenspace.lambda_max,
                    s.eigenspace.multiplicity, s.alpha.empty() ? NAN : s.alpha[0],
                    s.alpha.size() < 2 ? NAN : s.alpha[1])};
}

Outcome derivatives_vs_oracle() {
    std::mt19937_64 rng(2024);
    double worst_dot = 0.0;
    double worst_ddot = 0.0;
    int failures = 0;
    int secure = 0;
    for (int k = 0; k < 20; ++k) {
        const WiretapChannel ch = random_channel(rng);
        const LowSnrSummary s = low_snr_summary(ch);
        const DerivativeEstimate d = estimate_derivatives(ch, OracleConfig{});
        // Relative error; absolute when the analytic value is zero.
        auto rel = [](double est, double ref) {
            return ref != 0.0 ? std::abs(est - ref) / std::abs(ref) : std::abs(est);
        };
        const double e_dot = rel(d.c_dot0, s.c_dot0);
        const double e_ddot = rel(d.c_ddot0, s.c_ddot0);
        secure += s.secure_feasible ? 1 : 0;
        worst_dot = std::max(worst_dot, e_dot);
        worst_ddot = std::max(worst_ddot, e_ddot);
        if (e_dot > 1e-2 || e_ddot > 1e-1) {
            ++failures;
            std::printf("    channel %d (%zux%zu, n_E=%zu): C' %.6g vs %.6g, C'' %.6g vs %.6g\n", k, ch.n_r(), ch.n_t(),
                        ch.n_e(), s.c_dot0, d.c_dot0, s.c_ddot0, d.c_ddot0);
        }
    }
    return {failures == 0, fmt("20 channels (%d secure), worst rel err C'=%.3g C''=%.3g", secure, worst_dot, worst_ddot)};
}

Outcome scalar_closed_forms() {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> noise(0.1, 10.0);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const Complex hm(g(rng), g(rng));
        const Complex he(g(rng), g(rng));
        const double nm = noise(rng);
        const double ne = noise(rng);
        const double r = nm / ne;
        const LowSnrSummary s = low_snr_summary(scalar_channel(hm, he, nm, ne));
        const double dot = std::max(std::norm(hm) - r * std::norm(he), 0.0);
        const double ddot = -std::max(std::pow(std::norm(hm), 2) - r * r * std::pow(std::norm(he), 2), 0.0);
        worst = std::max({worst, std::abs(s.c_dot0 - dot), std::abs(s.c_ddot0 - ddot)});
    }
    return {worst <= 1e-12, fmt("1000 channels, worst abs err %.3g", worst)};
}

Outcome rayleigh_closed_form() {
    bool ok = true;
    std::string detail;
    for (auto [nm, ne] : {std::pair{1.0, 1.0}, std::pair{2.0, 1.0}, std::pair{1.0, 2.0}}) {
        FadingEnsemble e;
        e.noise_main = nm;
        e.noise_eaves = ne;
        e.seed = 1000 + static_cast<std::uint64_t>(10 * nm + ne);
        e.n_samples = 1'000'000;
        FadingOptions options;
        options.workers = 4;
        const MonteCarloEstimate m = fading_c_dot_0(e, options);
        const double target = ne / (nm + ne);
        const double z = (m.mean - target) / m.std_error;
        ok = ok && std::abs(z) <= 3.0;
        detail += fmt("(%g,%g): %.5f vs %.5f z=%+.2f  ", nm, ne, m.mean, target, z);
    }
    return {ok, detail};
}

Outcome concavity() {
    std::mt19937_64 rng(77);
    std::vector<double> grid;
    for (int k = 0; k < 16; ++k) grid.push_back(0.5 * k / 15.0);
    int failures = 0;
    for (int k = 0; k < 10; ++k) {
        const WiretapChannel ch = random_channel(rng);
        if (!concavity_check(capacity_curve(ch, grid, OracleConfig{}), 1e-4)) {
            ++failures;
        }
    }
    return {failures == 0, fmt("10 channels, %d failed", failures)};
}

Outcome eigenvalue_bound() {
    std::mt19937_64 rng(99);
    int failures = 0;
    for (int k = 0; k < 10'000; ++k) {
        failures += eigenvalue_bound_check(random_channel(rng, 4)) ? 0 : 1;
    }
    return {failures == 0, fmt("10000 channels, %d violations", failures)};
}

Outcome energy_ordering() {
    std::mt19937_64 rng(123);
    int violations = 0;
    int equality_failures = 0;
    int tested = 0;
    for (int k = 0; k < 2000; ++k) {
        const WiretapChannel ch = random_channel(rng, 4);
        const double secrecy = low_snr_summary(ch).eb_n0_min;
        const double open = min_bit_energy(no_secrecy_derivatives(ch).c_dot0);
        violations += secrecy >= open * (1.0 - 1e-12) ? 0 : 1;

        const WiretapChannel no_eve = make_channel(ch.h_main(), CMatrix::Zero(ch.h_eaves().rows(), ch.h_eaves().cols()),
                                                   ch.noise_main(), ch.noise_eaves());
        const double a = low_snr_summary(no_eve).eb_n0_min;
        const double b = min_bit_energy(no_secrecy_derivatives(no_eve).c_dot0);
        equality_failures += std::abs(a - b) <= 1e-12 * b ? 0 : 1;
        tested += 2;
    }
    return {violations == 0 && equality_failures == 0,
            fmt("%d channels, %d ordering violations, %d equality failures with h_e = 0", tested, violations,
                equality_failures)};
}

double grid_minimum(const RMatrix& m) {
    constexpr int steps = 1000;
    double best = INFINITY;
    RVector a(m.rows());
    for (int i = 0; i <= steps; ++i) {
        if (m.rows() == 1) {
            return m(0, 0);
        }
        if (m.rows() == 2) {
            a << double(i) / steps, double(steps - i) / steps;
            best = std::min(best, a.dot(m * a));
            continue;
        }
        for (int j = 0; i + j <= steps; ++j) {
            a << double(i) / steps, double(j) / steps, double(steps - i - j) / steps;
            best = std::min(best, a.dot(m * a));
        }
    }
    return best;
}

Outcome qp_grid_equivalence() {
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    int indefinite = 0;
    for (int k = 0; k < 100; ++k) {
        const Eigen::Index l = 1 + k % 3;
        RMatrix m(l, l);
        for (Eigen::Index i = 0; i < l; ++i) {
            for (Eigen::Index j = 0; j <= i; ++j) m(i, j) = m(j, i) = u(rng);
        }
        indefinite += Eigen::SelfAdjointEigenSolver<RMatrix>(m).eigenvalues().minCoeff() < 0.0 ? 1 : 0;
        worst = std::max(worst, std::abs(minimize_simplex_quadratic(m).value - grid_minimum(m)));
    }
    return {worst <= 1e-5, fmt("100 matrices (%d indefinite), worst gap %.3g", indefinite, worst)};
}

Outcome fading_reproducibility() {
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / "wiretap-acceptance";
    std::filesystem::create_directories(dir);
    const std::string cli = WIRETAP_CLI_PATH;
    const std::string scenario = std::string(WIRETAP_SCENARIO_DIR) + "/rayleigh-2x2.json";
    std::vector<std::string> outputs;
    for (const char* name : {"run1.csv", "run2.csv"}) {
        const std::string out = (dir / name).string();
        const std::string cmd = "\"" + cli + "\" fading --scenario \"" + scenario + "\" --out \"" + out + "\"";
        if (std::system(cmd.c_str()) != 0) {
            return {false, "fading command failed: " + cmd};
        }
        std::ifstream in(out, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        outputs.push_back(s.str());
    }
    std::filesystem::remove_all(dir);
    return {!outputs[0].empty() && outputs[0] == outputs[1], fmt("%zu bytes per run", outputs[0].size())};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"parallel-channel reproduction", 1.0, parallel_channel_reproduction},
        {"analytic derivatives vs oracle fit", 300.0, derivatives_vs_oracle},
        {"scalar closed forms", 1.0, scalar_closed_forms},
        {"scalar Rayleigh closed form", 30.0, rayleigh_closed_form},
        {"oracle concavity", 600.0, concavity},
        {"eigenvalue bound", 10.0, eigenvalue_bound},
        {"bit-energy ordering", 60.0, energy_ordering},
        {"QP vs simplex grid", 30.0, qp_grid_equivalence},
        {"fading CSV reproducibility", 60.0, fading_reproducibility},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.budget_seconds;
        const bool pass = o.pass && in_time;
        failed += pass ? 0 : 1;
        std::printf("%s  %-36s %s [%.2fs / %.0fs%s]\n", pass ? "PASS" : "FAIL", c.name.c_str(), o.detail.c_str(), secs,
                    c.budget_seconds, in_time ? "" : " over budget");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
