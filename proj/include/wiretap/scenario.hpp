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

// Scenario files are JSON documents (comments allowed) with exactly one of
// a "fixed" or a "fading" block:
//
//   {
//     "fixed": {
//       "n_t": 2, "n_r": 1, "n_e": 1,
//       "noise_main": 1.0, "noise_eaves": 1.0,
//       "h_main":  [[[1, 0], [0, 1]]],          // n_r rows of n_t [re, im] pairs
//       "h_eaves": [[[0.5, 0], [0, 0]]]         // n_e rows of n_t [re, im] pairs
//     },
//     "snr_grid": [0, 0.001, 0.01],             // optional, strictly ascending
//     "oracle": {"n_restarts": 32, "max_iters": 5000, "tol": 1e-9, "seed": 7},
//     "analysis": {"degeneracy_tol": 1e-8},     // optional
//     "validation": {"c_dot_rel_tol": 0.01, "c_ddot_rel_tol": 0.1,
//                    "concavity_slack": 1e-6, "snr_samples": [2e-4, 5e-4, 1e-3, 2e-3]}
//   }
//
// A fading block replaces the matrices with
//   "distribution": {"type": "rayleigh_iid", "var_main": 1, "var_eaves": 1},
//   "seed": 42, "n_samples": 100000

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wiretap/channel.hpp"
#include "wiretap/fading.hpp"
#include "wiretap/oracle.hpp"

namespace wiretap {

inline constexpr std::string_view kCliModule = "cli";

struct FixedMode {
    ChannelData channel;
};

struct FadingMode {
    FadingEnsemble ensemble;
};

struct ValidationThresholds {
    double c_dot_rel_tol = 1e-2;
    double c_ddot_rel_tol = 1e-1;
    double concavity_slack = 1e-6;
    std::vector<double> snr_samples = kDefaultDerivativeSamples;
    friend bool operator==(const ValidationThresholds&, const ValidationThresholds&) = default;
};

struct Scenario {
    std::variant<FixedMode, FadingMode> mode;
    std::optional<std::vector<double>> snr_grid;
    std::optional<OracleConfig> oracle;
    std::optional<double> degeneracy_tol;
    std::optional<ValidationThresholds> validation;

    [[nodiscard]] bool is_fixed() const noexcept { return std::holds_alternative<FixedMode>(mode); }
};

/// Field-by-field equality (exact on every number).
bool operator==(const Scenario& a, const Scenario& b);

/// Throws ParseError; the message carries the line/column for syntax errors
/// and the dotted field path for schema errors.
Scenario parse_scenario(std::string_view text);

/// Reads and parses a file. Throws IoError or ParseError.
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical JSON text; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string content_hash(std::string_view bytes);

}  // namespace wiretap
