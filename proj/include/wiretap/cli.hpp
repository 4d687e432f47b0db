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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wiretap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitParse = 2;

struct Options {
    std::string scenario;
    std::string out;  ///< empty: write to stdout
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> samples;
    std::optional<double> tol;  ///< overrides the eigenvalue degeneracy tolerance
    unsigned workers = 1;
    /// Test hook for oracle-validate: replace the oracle curve by s^2.
    bool inject_convex_curve = false;
};

int cmd_analyze(const Options& options, std::ostream& out, std::ostream& err);
int cmd_curve(const Options& options, std::ostream& out, std::ostream& err);
int cmd_fading(const Options& options, std::ostream& out, std::ostream& err);
int cmd_oracle_validate(const Options& options, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest round-trip decimal, "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double value);

}  // namespace wiretap::cli
