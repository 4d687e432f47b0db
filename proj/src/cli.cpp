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

#include "wiretap/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wiretap/lowsnr.hpp"
#include "wiretap/oracle.hpp"
#include "wiretap/scenario.hpp"

#ifndef WIRETAP_VERSION
#define WIRETAP_VERSION "0.0.0"
#endif

namespace wiretap::cli {
namespace {

using json = nlohmann::json;

struct LoadedScenario {
    Scenario scenario;
    std::string hash;
};

LoadedScenario load(const Options& options) {
    if (options.scenario.empty()) {
        throw Error(ErrorKind::IoError, kCliModule, "--scenario is required");
    }
    std::ifstream in(options.scenario, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, kCliModule, "cannot open scenario file '" + options.scenario + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    return {parse_scenario(text), content_hash(text)};
}

const ChannelData& require_fixed(const Scenario& scenario, std::string_view command) {
    const auto* fixed = std::get_if<FixedMode>(&scenario.mode);
    if (fixed == nullptr) {
        throw Error(ErrorKind::ParseError, kCliModule, std::string(command) + " needs a scenario with a 'fixed' block");
    }
    return fixed->channel;
}

double degeneracy_tol(const Options& options, const Scenario& scenario) {
    return options.tol.value_or(scenario.degeneracy_tol.value_or(kDefaultDegeneracyTol));
}

// Writes to --out when given, otherwise to `fallback`.
void emit(const Options& options, const std::string& content, std::ostream& fallback) {
    if (options.out.empty()) {
        fallback << content;
        return;
    }
    std::ofstream file(options.out, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw Error(ErrorKind::IoError, kCliModule, "cannot open output file '" + options.out + "'");
    }
    file << content;
    if (!file.flush()) {
        throw Error(ErrorKind::IoError, kCliModule, "failed writing '" + options.out + "'");
    }
}

std::string csv_preamble(const std::string& hash, const std::string& seed) {
    return "# wiretap " WIRETAP_VERSION " scenario_hash=" + hash + " seed=" + seed + "\n";
}

json json_number(double v) {
    return std::isfinite(v) ? json(v) : json(format_number(v));
}

int report_error(const Error& e, std::ostream& err) {
    err << "error [" << e.module() << "] " << to_string(e.kind()) << ": " << e.detail() << "\n";
    switch (e.kind()) {
        case ErrorKind::ParseError:
        case ErrorKind::IoError:
            return kExitParse;
        default:
            return kExitValidation;
    }
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const Error& e) {
        return report_error(e, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

double relative_error(double estimate, double reference) {
    const double diff = std::abs(estimate - reference);
    return std::abs(reference) > 1e-12 ? diff / std::abs(reference) : diff;
}

std::string csv_row(const std::string& quantity, const MonteCarloEstimate& e) {
    return quantity + "," + format_number(e.mean) + "," + format_number(e.std_error) + "," +
           std::to_string(e.n_samples) + "," + std::to_string(e.seed) + "," +
           (e.low_confidence() ? "true" : "false") + "\n";
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, result.ptr);
}

int cmd_analyze(const Options& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const LoadedScenario loaded = load(options);
        const WiretapChannel channel = validate_channel(require_fixed(loaded.scenario, "analyze"));
        LowSnrOptions lowsnr;
        lowsnr.degeneracy_tol = degeneracy_tol(options, loaded.scenario);
        const LowSnrSummary s = low_snr_summary(channel, lowsnr);
        const NoSecrecyDerivatives base = no_secrecy_derivatives(channel, lowsnr.degeneracy_tol);
        const double base_eb = min_bit_energy(base.c_dot0);
        constexpr double ln2 = std::numbers::ln2;

        json record = {
            {"scenario_hash", loaded.hash},
            {"lambda_max", s.eigenspace.lambda_max},
            {"multiplicity", s.eigenspace.multiplicity},
            {"secure_feasible", s.secure_feasible},
            {"c_dot0_nats", s.c_dot0},
            {"c_dot0_bits", s.c_dot0 / ln2},
            {"c_ddot0_nats", s.c_ddot0},
            {"c_ddot0_bits", s.c_ddot0 / ln2},
            {"alpha", s.alpha},
            {"qp_certificate", s.qp_certificate == QpCertificate::KktVerified ? "kkt_verified" : "multistart_best"},
            {"eb_n0_min_linear", json_number(s.eb_n0_min)},
            {"eb_n0_min_db", json_number(to_db(s.eb_n0_min))},
            {"wideband_slope_bits_per_3db", json_number(s.wideband_slope)},
            {"slope_unbounded", s.slope_unbounded},
            {"no_secrecy",
             {{"c_dot0_nats", base.c_dot0},
              {"c_ddot0_nats", base.c_ddot0},
              {"multiplicity", base.multiplicity},
              {"eb_n0_min_linear", json_number(base_eb)},
              {"eb_n0_min_db", json_number(to_db(base_eb))}}},
        };

        std::ostringstream text;
        text << "lambda_max(Phi)          " << format_number(s.eigenspace.lambda_max) << "\n"
             << "multiplicity             " << s.eigenspace.multiplicity << "\n"
             << "secure_feasible          " << (s.secure_feasible ? "true" : "false") << "\n"
             << "C'(0)                    " << format_number(s.c_dot0) << " nats  "
             << format_number(s.c_dot0 / ln2) << " bits\n"
             << "C''(0)                   " << format_number(s.c_ddot0) << " nats  "
             << format_number(s.c_ddot0 / ln2) << " bits\n"
             << "alpha                   ";
        for (double a : s.alpha) {
            text << " " << format_number(a);
        }
        text << "\n"
             << "Eb/N0 min                " << format_number(s.eb_n0_min) << " (" << format_number(to_db(s.eb_n0_min))
             << " dB)\n"
             << "wideband slope           " << format_number(s.wideband_slope) << " bits/dim/3dB"
             << (s.slope_unbounded ? "  [warning: C''(0) = 0]" : "") << "\n"
             << "no-secrecy C'(0), C''(0) " << format_number(base.c_dot0) << ", " << format_number(base.c_ddot0) << "\n"
             << "no-secrecy Eb/N0 min     " << format_number(base_eb) << " (" << format_number(to_db(base_eb))
             << " dB)\n";
        out << text.str();
        if (!options.out.empty()) {
            emit(options, record.dump(2) + "\n", out);
        }
        return kExitOk;
    });
}

int cmd_curve(const Options& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const LoadedScenario loaded = load(options);
        const WiretapChannel channel = validate_channel(require_fixed(loaded.scenario, "curve"));
        if (!loaded.scenario.snr_grid) {
            throw Error(ErrorKind::ParseError, kCliModule, "field 'snr_grid': required by curve");
        }
        const std::vector<double>& grid = *loaded.scenario.snr_grid;
        LowSnrOptions lowsnr;
        lowsnr.degeneracy_tol = degeneracy_tol(options, loaded.scenario);
        const LowSnrSummary summary = low_snr_summary(channel, lowsnr);

        std::optional<OracleConfig> oracle = loaded.scenario.oracle;
        if (oracle && options.seed) {
            oracle->seed = *options.seed;
        }
        std::optional<CapacityCurve> curve;
        if (oracle) {
            curve = capacity_curve(channel, grid, *oracle);
        }

        std::string csv = csv_preamble(loaded.hash, oracle ? std::to_string(oracle->seed) : "none");
        csv += oracle ? "snr,expansion_nats,oracle_nats\n" : "snr,expansion_nats\n";
        for (std::size_t i = 0; i < grid.size(); ++i) {
            csv += format_number(grid[i]) + "," + format_number(capacity_expansion(summary, SnrPoint(grid[i])));
            if (curve) {
                csv += "," + format_number(curve->values[i]);
            }
            csv += "\n";
        }
        emit(options, csv, out);
        return kExitOk;
    });
}

int cmd_fading(const Options& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const LoadedScenario loaded = load(options);
        const auto* mode = std::get_if<FadingMode>(&loaded.scenario.mode);
        if (mode == nullptr) {
            throw Error(ErrorKind::ParseError, kCliModule, "fading needs a scenario with a 'fading' block");
        }
        FadingEnsemble ensemble = mode->ensemble;
        if (options.seed) {
            ensemble.seed = *options.seed;
        }
        if (options.samples) {
            ensemble.n_samples = *options.samples;
        }
        FadingOptions fading;
        fading.workers = options.workers;
        fading.degeneracy_tol = degeneracy_tol(options, loaded.scenario);

        const MonteCarloEstimate c_dot = fading_c_dot_0(ensemble, fading);
        const MonteCarloEstimate c_ddot = fading_c_ddot_0(ensemble, fading);

        std::string csv = csv_preamble(loaded.hash, std::to_string(ensemble.seed));
        csv += "quantity,mean,std_error,n_samples,seed,low_confidence\n";
        csv += csv_row("c_dot_0", c_dot);
        csv += csv_row("c_ddot_0", c_ddot);
        try {
            const MonteCarloEstimate eb = fading_eb_n0_min(c_dot);
            csv += csv_row("eb_n0_min", eb);
            MonteCarloEstimate eb_db = eb;
            eb_db.mean = to_db(eb.mean);
            eb_db.std_error = 10.0 / std::numbers::ln10 * eb.std_error / eb.mean;
            csv += csv_row("eb_n0_min_db", eb_db);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateDenominator) {
                throw;
            }
            // Slope not certifiably positive: report an unbounded bit energy.
            const std::string tail = "," + std::to_string(c_dot.n_samples) + "," + std::to_string(ensemble.seed) + ",true\n";
            csv += "eb_n0_min,inf,nan" + tail;
            csv += "eb_n0_min_db,inf,nan" + tail;
        }
        if (ensemble.is_scalar()) {
            const double ref = rayleigh_scalar_reference(ensemble.noise_main, ensemble.noise_eaves,
                                                         ensemble.distribution.var_main,
                                                         ensemble.distribution.var_eaves);
            csv += "rayleigh_scalar_reference," + format_number(ref) + ",0,0," + std::to_string(ensemble.seed) +
                   ",false\n";
        }
        emit(options, csv, out);
        return kExitOk;
    });
}

int cmd_oracle_validate(const Options& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const LoadedScenario loaded = load(options);
        const WiretapChannel channel = validate_channel(require_fixed(loaded.scenario, "oracle-validate"));
        if (!loaded.scenario.oracle) {
            throw Error(ErrorKind::ParseError, kCliModule, "field 'oracle': required by oracle-validate");
        }
        OracleConfig oracle = *loaded.scenario.oracle;
        if (options.seed) {
            oracle.seed = *options.seed;
        }
        const ValidationThresholds thresholds = loaded.scenario.validation.value_or(ValidationThresholds{});

        LowSnrOptions lowsnr;
        lowsnr.degeneracy_tol = degeneracy_tol(options, loaded.scenario);
        const LowSnrSummary analytic = low_snr_summary(channel, lowsnr);
        const DerivativeEstimate fitted = estimate_derivatives(channel, oracle, thresholds.snr_samples);

        std::vector<double> grid;
        if (loaded.scenario.snr_grid && loaded.scenario.snr_grid->size() >= 3) {
            grid = *loaded.scenario.snr_grid;
        } else {
            for (int k = 0; k < 16; ++k) {
                grid.push_back(0.5 * k / 15.0);
            }
        }
        CapacityCurve curve;
        if (options.inject_convex_curve) {
            curve.snr_grid = grid;
            for (double s : grid) {
                curve.values.push_back(s * s);
            }
        } else {
            curve = capacity_curve(channel, grid, oracle);
        }
        const bool concave = concavity_check(curve, thresholds.concavity_slack);

        const double err_dot = relative_error(fitted.c_dot0, analytic.c_dot0);
        const double err_ddot = relative_error(fitted.c_ddot0, analytic.c_ddot0);
        const bool dot_ok = err_dot <= thresholds.c_dot_rel_tol;
        const bool ddot_ok = err_ddot <= thresholds.c_ddot_rel_tol;

        out << "C'(0)   analytic " << format_number(analytic.c_dot0) << "  oracle " << format_number(fitted.c_dot0)
            << "  rel_err " << format_number(err_dot) << (dot_ok ? "  ok" : "  FAIL") << "\n"
            << "C''(0)  analytic " << format_number(analytic.c_ddot0) << "  oracle "
            << format_number(fitted.c_ddot0) << "  rel_err " << format_number(err_ddot)
            << (ddot_ok ? "  ok" : "  FAIL") << "\n"
            << "concavity over " << grid.size() << " points (slack " << format_number(thresholds.concavity_slack)
            << "): " << (concave ? "ok" : "FAIL") << "\n";
        return dot_ok && ddot_ok && concave ? kExitOk : kExitValidation;
    });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Low-SNR secrecy capacity analysis for multiple-antenna wiretap channels", "wiretap"};
    app.set_version_flag("--version", WIRETAP_VERSION);
    app.require_subcommand(1);

    Options options;
    std::uint64_t seed = 0;
    std::int64_t samples = 0;
    double tol = 0.0;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--scenario", options.scenario, "Scenario file (JSON)")->required();
        sub->add_option("--out", options.out, "Output path (stdout when omitted)");
        sub->add_option("--seed", seed, "Override the scenario RNG seed");
        sub->add_option("--tol", tol, "Eigenvalue degeneracy tolerance")->check(CLI::PositiveNumber);
    };
    CLI::App* analyze = app.add_subcommand("analyze", "Low-SNR summary of a fixed channel");
    CLI::App* curve = app.add_subcommand("curve", "CSV of the second-order expansion (and oracle) over snr_grid");
    CLI::App* fading = app.add_subcommand("fading", "Monte-Carlo low-SNR quantities for a fading ensemble");
    CLI::App* validate = app.add_subcommand("oracle-validate", "Compare the analysis with the numerical oracle");
    for (CLI::App* sub : {analyze, curve, fading, validate}) {
        add_common(sub);
    }
    fading->add_option("--samples", samples, "Override the number of Monte-Carlo samples")->check(CLI::PositiveNumber);
    fading->add_option("--workers", options.workers, "Worker threads")->check(CLI::PositiveNumber);
    validate->add_flag("--inject-convex-curve", options.inject_convex_curve)->group("");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion& e) {
        out << WIRETAP_VERSION << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }
    for (CLI::App* sub : {analyze, curve, fading, validate}) {
        if (sub->count("--seed") > 0) {
            options.seed = seed;
        }
        if (sub->count("--tol") > 0) {
            options.tol = tol;
        }
    }
    if (fading->count("--samples") > 0) {
        options.samples = samples;
    }

    if (analyze->parsed()) {
        return cmd_analyze(options, out, err);
    }
    if (curve->parsed()) {
        return cmd_curve(options, out, err);
    }
    if (fading->parsed()) {
        return cmd_fading(options, out, err);
    }
    return cmd_oracle_validate(options, out, err);
}

}  // namespace wiretap::cli
