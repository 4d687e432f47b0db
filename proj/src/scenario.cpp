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

#include "wiretap/scenario.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace wiretap {
namespace {

using json = nlohmann::json;

[[noreturn]] void field_error(const std::string& path, const std::string& message) {
    throw Error(ErrorKind::ParseError, kCliModule, "field '" + path + "': " + message);
}

std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

const json& require_object(const json& j, const std::string& path) {
    if (!j.is_object()) {
        field_error(path.empty() ? "<root>" : path, "expected an object");
    }
    return j;
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
    for (const auto& item : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            field_error(join(path, item.key()), "unknown field");
        }
    }
}

const json& member(const json& obj, const std::string& path, std::string_view key) {
    const auto it = obj.find(std::string(key));
    if (it == obj.end()) {
        field_error(join(path, key), "missing required field");
    }
    return *it;
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) {
        field_error(path, "expected a number");
    }
    return j.get<double>();
}

std::uint64_t as_unsigned(const json& j, const std::string& path) {
    if (!j.is_number_unsigned()) {
        field_error(path, "expected a nonnegative integer");
    }
    return j.get<std::uint64_t>();
}

double number_at(const json& obj, const std::string& path, std::string_view key) {
    return as_number(member(obj, path, key), join(path, key));
}

std::uint64_t unsigned_at(const json& obj, const std::string& path, std::string_view key) {
    return as_unsigned(member(obj, path, key), join(path, key));
}

std::size_t dimension_at(const json& obj, const std::string& path, std::string_view key) {
    const std::uint64_t v = unsigned_at(obj, path, key);
    if (v < 1) {
        field_error(join(path, key), "must be >= 1");
    }
    return static_cast<std::size_t>(v);
}

std::vector<double> number_list(const json& j, const std::string& path) {
    if (!j.is_array()) {
        field_error(path, "expected an array of numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

CMatrix parse_matrix(const json& j, const std::string& path, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows) {
        field_error(path, "expected " + std::to_string(rows) + " rows");
    }
    CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string row_path = path + "[" + std::to_string(r) + "]";
        const json& row = j[r];
        if (!row.is_array() || row.size() != cols) {
            field_error(row_path, "expected " + std::to_string(cols) + " entries");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            const std::string entry_path = row_path + "[" + std::to_string(c) + "]";
            const json& entry = row[c];
            if (!entry.is_array() || entry.size() != 2) {
                field_error(entry_path, "expected a [re, im] pair");
            }
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                Complex(as_number(entry[0], entry_path + "[0]"), as_number(entry[1], entry_path + "[1]"));
        }
    }
    return m;
}

FixedMode parse_fixed(const json& j, const std::string& path) {
    require_object(j, path);
    reject_unknown(j, path, {"n_t", "n_r", "n_e", "noise_main", "noise_eaves", "h_main", "h_eaves"});
    const std::size_t n_t = dimension_at(j, path, "n_t");
    const std::size_t n_r = dimension_at(j, path, "n_r");
    const std::size_t n_e = dimension_at(j, path, "n_e");
    FixedMode fixed;
    fixed.channel.noise_main = number_at(j, path, "noise_main");
    fixed.channel.noise_eaves = number_at(j, path, "noise_eaves");
    fixed.channel.h_main = parse_matrix(member(j, path, "h_main"), join(path, "h_main"), n_r, n_t);
    fixed.channel.h_eaves = parse_matrix(member(j, path, "h_eaves"), join(path, "h_eaves"), n_e, n_t);
    return fixed;
}

FadingMode parse_fading(const json& j, const std::string& path) {
    require_object(j, path);
    reject_unknown(j, path, {"n_t", "n_r", "n_e", "noise_main", "noise_eaves", "distribution", "seed", "n_samples"});
    FadingMode fading;
    FadingEnsemble& e = fading.ensemble;
    e.n_t = dimension_at(j, path, "n_t");
    e.n_r = dimension_at(j, path, "n_r");
    e.n_e = dimension_at(j, path, "n_e");
    e.noise_main = number_at(j, path, "noise_main");
    e.noise_eaves = number_at(j, path, "noise_eaves");
    e.seed = unsigned_at(j, path, "seed");
    const std::uint64_t n = unsigned_at(j, path, "n_samples");
    if (n < 1 || n > static_cast<std::uint64_t>(INT64_MAX)) {
        field_error(join(path, "n_samples"), "must be >= 1");
    }
    e.n_samples = static_cast<std::int64_t>(n);

    const std::string dist_path = join(path, "distribution");
    const json& dist = require_object(member(j, path, "distribution"), dist_path);
    reject_unknown(dist, dist_path, {"type", "var_main", "var_eaves"});
    const json& type = member(dist, dist_path, "type");
    if (!type.is_string() || type.get<std::string>() != "rayleigh_iid") {
        field_error(join(dist_path, "type"), "only \"rayleigh_iid\" is supported");
    }
    e.distribution.var_main = number_at(dist, dist_path, "var_main");
    e.distribution.var_eaves = number_at(dist, dist_path, "var_eaves");
    return fading;
}

OracleConfig parse_oracle(const json& j, const std::string& path) {
    require_object(j, path);
    reject_unknown(j, path, {"n_restarts", "max_iters", "tol", "seed"});
    OracleConfig config;
    if (j.contains("n_restarts")) {
        config.n_restarts = static_cast<int>(unsigned_at(j, path, "n_restarts"));
    }
    if (j.contains("max_iters")) {
        config.max_iters = static_cast<int>(unsigned_at(j, path, "max_iters"));
    }
    if (j.contains("tol")) {
        config.tol = number_at(j, path, "tol");
    }
    if (j.contains("seed")) {
        config.seed = unsigned_at(j, path, "seed");
    }
    try {
        config.validate();
    } catch (const Error& e) {
        field_error(path, e.detail());
    }
    return config;
}

ValidationThresholds parse_validation(const json& j, const std::string& path) {
    require_object(j, path);
    reject_unknown(j, path, {"c_dot_rel_tol", "c_ddot_rel_tol", "concavity_slack", "snr_samples"});
    ValidationThresholds v;
    if (j.contains("c_dot_rel_tol")) {
        v.c_dot_rel_tol = number_at(j, path, "c_dot_rel_tol");
    }
    if (j.contains("c_ddot_rel_tol")) {
        v.c_ddot_rel_tol = number_at(j, path, "c_ddot_rel_tol");
    }
    if (j.contains("concavity_slack")) {
        v.concavity_slack = number_at(j, path, "concavity_slack");
    }
    if (j.contains("snr_samples")) {
        v.snr_samples = number_list(j["snr_samples"], join(path, "snr_samples"));
    }
    return v;
}

std::string locate(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

json matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

bool same_matrix(const CMatrix& a, const CMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

}  // namespace

bool operator==(const Scenario& a, const Scenario& b) {
    if (a.mode.index() != b.mode.index() || a.snr_grid != b.snr_grid || a.oracle != b.oracle ||
        a.degeneracy_tol != b.degeneracy_tol || a.validation != b.validation) {
        return false;
    }
    if (const auto* fa = std::get_if<FixedMode>(&a.mode)) {
        const auto& fb = std::get<FixedMode>(b.mode);
        return same_matrix(fa->channel.h_main, fb.channel.h_main) &&
               same_matrix(fa->channel.h_eaves, fb.channel.h_eaves) &&
               fa->channel.noise_main == fb.channel.noise_main && fa->channel.noise_eaves == fb.channel.noise_eaves;
    }
    return std::get<FadingMode>(a.mode).ensemble == std::get<FadingMode>(b.mode).ensemble;
}

Scenario parse_scenario(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, kCliModule, locate(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + e.what());
    }
    require_object(root, "");
    reject_unknown(root, "", {"fixed", "fading", "snr_grid", "oracle", "analysis", "validation"});

    const bool has_fixed = root.contains("fixed");
    const bool has_fading = root.contains("fading");
    if (has_fixed == has_fading) {
        field_error("<root>", "exactly one of 'fixed' or 'fading' must be present");
    }
    Scenario scenario{has_fixed ? std::variant<FixedMode, FadingMode>(parse_fixed(root["fixed"], "fixed"))
                                : std::variant<FixedMode, FadingMode>(parse_fading(root["fading"], "fading")),
                      std::nullopt, std::nullopt, std::nullopt, std::nullopt};

    if (root.contains("snr_grid")) {
        std::vector<double> grid = number_list(root["snr_grid"], "snr_grid");
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (grid[i] < 0.0 || !std::isfinite(grid[i])) {
                field_error("snr_grid[" + std::to_string(i) + "]", "SNR must be finite and nonnegative");
            }
            if (i > 0 && !(grid[i] > grid[i - 1])) {
                field_error("snr_grid[" + std::to_string(i) + "]", "grid must be strictly ascending");
            }
        }
        scenario.snr_grid = std::move(grid);
    }
    if (root.contains("oracle")) {
        scenario.oracle = parse_oracle(root["oracle"], "oracle");
    }
    if (root.contains("analysis")) {
        const json& analysis = require_object(root["analysis"], "analysis");
        reject_unknown(analysis, "analysis", {"degeneracy_tol"});
        if (analysis.contains("degeneracy_tol")) {
            const double tol = number_at(analysis, "analysis", "degeneracy_tol");
            if (!(tol > 0.0)) {
                field_error("analysis.degeneracy_tol", "must be positive");
            }
            scenario.degeneracy_tol = tol;
        }
    }
    if (root.contains("validation")) {
        scenario.validation = parse_validation(root["validation"], "validation");
    }
    return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, kCliModule, "cannot open scenario file '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

std::string serialize_scenario(const Scenario& scenario) {
    json root = json::object();
    if (const auto* fixed = std::get_if<FixedMode>(&scenario.mode)) {
        const ChannelData& c = fixed->channel;
        root["fixed"] = {
            {"n_t", c.h_main.cols()},       {"n_r", c.h_main.rows()},
            {"n_e", c.h_eaves.rows()},      {"noise_main", c.noise_main},
            {"noise_eaves", c.noise_eaves}, {"h_main", matrix_to_json(c.h_main)},
            {"h_eaves", matrix_to_json(c.h_eaves)},
        };
    } else {
        const FadingEnsemble& e = std::get<FadingMode>(scenario.mode).ensemble;
        root["fading"] = {
            {"n_t", e.n_t},
            {"n_r", e.n_r},
            {"n_e", e.n_e},
            {"noise_main", e.noise_main},
            {"noise_eaves", e.noise_eaves},
            {"distribution",
             {{"type", "rayleigh_iid"}, {"var_main", e.distribution.var_main}, {"var_eaves", e.distribution.var_eaves}}},
            {"seed", e.seed},
            {"n_samples", static_cast<std::uint64_t>(e.n_samples)},
        };
    }
    if (scenario.snr_grid) {
        root["snr_grid"] = *scenario.snr_grid;
    }
    if (scenario.oracle) {
        const OracleConfig& o = *scenario.oracle;
        root["oracle"] = {{"n_restarts", static_cast<std::uint64_t>(o.n_restarts)},
                          {"max_iters", static_cast<std::uint64_t>(o.max_iters)},
                          {"tol", o.tol},
                          {"seed", o.seed}};
    }
    if (scenario.degeneracy_tol) {
        root["analysis"] = {{"degeneracy_tol", *scenario.degeneracy_tol}};
    }
    if (scenario.validation) {
        const ValidationThresholds& v = *scenario.validation;
        root["validation"] = {{"c_dot_rel_tol", v.c_dot_rel_tol},
                              {"c_ddot_rel_tol", v.c_ddot_rel_tol},
                              {"concavity_slack", v.concavity_slack},
                              {"snr_samples", v.snr_samples}};
    }
    return root.dump(2) + "\n";
}

std::string content_hash(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

}  // namespace wiretap
