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

#include "wiretap/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "wiretap/lowsnr.hpp"

namespace wiretap {
namespace {

constexpr double kArmijo = 1e-4;

// Secrecy rate of K = P L L^H and its steepest-ascent direction in L.
class FactorObjective {
public:
    FactorObjective(const WiretapChannel& channel, double power)
        : channel_(channel),
          power_(power),
          gradient_scale_(2.0 * power *
                          (channel.h_main().squaredNorm() / channel.noise_main() +
                           channel.h_eaves().squaredNorm() / channel.noise_eaves()) /
                          static_cast<double>(channel.n_r())) {}

    [[nodiscard]] double value(const CMatrix& l) const {
        return detail::secrecy_rate_unchecked(channel_, covariance(l));
    }

    [[nodiscard]] CMatrix covariance(const CMatrix& l) const { return power_ * l * l.adjoint(); }

    // G = dRate/dK = (H_m^H (N_m I + H_m K H_m^H)^-1 H_m - same for e) / n_R.
    [[nodiscard]] CMatrix rate_gradient(const CMatrix& k) const {
        return (inverse_term(channel_.h_main(), k, channel_.noise_main()) -
                inverse_term(channel_.h_eaves(), k, channel_.noise_eaves())) /
               static_cast<double>(channel_.n_r());
    }

    // 2P G L
    [[nodiscard]] CMatrix ascent_direction(const CMatrix& l) const {
        return 2.0 * power_ * rate_gradient(covariance(l)) * l;
    }

    // Full-power parameterization K = P L L^H / ||L||^2.
    [[nodiscard]] CMatrix sphere_covariance(const CMatrix& l) const { return covariance(l) / l.squaredNorm(); }

    [[nodiscard]] double sphere_value(const CMatrix& l) const {
        return detail::secrecy_rate_unchecked(channel_, sphere_covariance(l));
    }

    // Gradient of sphere_value in L: (2P/v) G L - (2P/v^2) tr(G L L^H) L with v = ||L||^2.
    [[nodiscard]] CMatrix sphere_gradient(const CMatrix& l) const {
        const double v = l.squaredNorm();
        const CMatrix g = rate_gradient(sphere_covariance(l));
        const double radial = (l.adjoint() * g * l).trace().real();
        return (2.0 * power_ / v) * (g * l) - (2.0 * power_ * radial / (v * v)) * l;
    }

    /// Upper bound on the norm of the ascent direction over the unit ball.
    [[nodiscard]] double gradient_scale() const noexcept { return gradient_scale_; }

private:
    static CMatrix inverse_term(const CMatrix& h, const CMatrix& k, double noise) {
        const auto rows = h.rows();
        const CMatrix a = hermitian_part(noise * CMatrix::Identity(rows, rows) + h * k * h.adjoint());
        return h.adjoint() * a.llt().solve(h);
    }

    const WiretapChannel& channel_;
    double power_;
    double gradient_scale_;
};

CMatrix project_to_ball(CMatrix l) {
    const double norm = l.norm();
    if (norm > 1.0) {
        l /= norm;
    }
    return l;
}

struct AscentResult {
    double rate;
    CMatrix factor;
};

AscentResult projected_ascent(const FactorObjective& objective, CMatrix l, const OracleConfig& config) {
    const double scale = objective.gradient_scale();
    double f = objective.value(l);
    if (scale == 0.0) {
        return {f, l};
    }
    double step = 1.0 / scale;
    for (int iter = 0; iter < config.max_iters; ++iter) {
        const CMatrix direction = objective.ascent_direction(l);
        bool accepted = false;
        CMatrix next;
        double f_next = f;
        for (int halving = 0; halving < 80; ++halving) {
            next = project_to_ball(l + step * direction);
            f_next = objective.value(next);
            const double predicted = direction.conjugate().cwiseProduct(next - l).sum().real();
            if (f_next >= f + kArmijo * predicted) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            break;
        }
        const double grad_map = (next - l).norm() / step;
        l = std::move(next);
        f = f_next;
        step *= 2.0;
        if (grad_map <= config.tol * scale) {
            break;
        }
    }
    return {f, l};
}

RVector to_real(const CMatrix& m) {
    RVector x(2 * m.size());
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        x(2 * i) = m.data()[i].real();
        x(2 * i + 1) = m.data()[i].imag();
    }
    return x;
}

CMatrix to_complex(const RVector& x, Eigen::Index n) {
    CMatrix m(n, n);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        m.data()[i] = Complex(x(2 * i), x(2 * i + 1));
    }
    return m;
}

// BFGS on the full-power sphere. The first-order ascent is slow when the
// optimum sits in a nearly flat valley (degenerate eigenspaces at low SNR,
// where curvature along the valley is O(SNR) times the cross curvature);
// quasi-Newton steps remove that conditioning problem.
AscentResult refine_on_sphere(const FactorObjective& objective, const CMatrix& start, const OracleConfig& config) {
    const Eigen::Index n = start.rows();
    if (start.norm() == 0.0 || objective.gradient_scale() == 0.0) {
        return {objective.value(start), start};
    }
    RVector x = to_real(start / start.norm());
    double f = objective.sphere_value(to_complex(x, n));
    RVector g = to_real(objective.sphere_gradient(to_complex(x, n)));
    const Eigen::Index dim = x.size();
    // Inverse Hessian approximation for the ascent problem (maximize f).
    RMatrix h = RMatrix::Identity(dim, dim) / objective.gradient_scale();
    const double tol = config.tol * objective.gradient_scale();
    int stalled = 0;
    for (int iter = 0; iter < config.max_iters && g.norm() > tol && stalled < 5; ++iter) {
        RVector p = h * g;
        if (!(p.dot(g) > 0.0)) {
            h = RMatrix::Identity(dim, dim) / objective.gradient_scale();
            p = h * g;
        }
        double t = 1.0;
        RVector x_next;
        double f_next = f;
        bool accepted = false;
        for (int halving = 0; halving < 60; ++halving) {
            x_next = x + t * p;
            f_next = objective.sphere_value(to_complex(x_next, n));
            if (f_next >= f + kArmijo * t * g.dot(p)) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            break;
        }
        // Keep ||L|| = 1; the objective is invariant to the radius.
        const double norm = x_next.norm();
        x_next /= norm;
        const RVector g_next = to_real(objective.sphere_gradient(to_complex(x_next, n)));
        const RVector sx = x_next - x;
        const RVector yx = g - g_next;  // gradient change of -f
        const double sy = sx.dot(yx);
        if (sy > 1e-300) {
            const RVector hy = h * yx;
            const double rho = 1.0 / sy;
            h += (rho * rho * yx.dot(hy) + rho) * (sx * sx.transpose()) - rho * (hy * sx.transpose() + sx * hy.transpose());
        }
        // Gains at the rounding level of f: the gradient has hit its noise floor.
        stalled = f_next - f <= 8.0 * std::numeric_limits<double>::epsilon() * std::abs(f) ? stalled + 1 : 0;
        x = x_next;
        f = f_next;
        g = g_next;
    }
    const CMatrix l = to_complex(x, n);
    return {objective.sphere_value(l), l / l.norm()};
}

CMatrix random_factor(std::size_t n, int restart, std::mt19937_64& rng) {
    const auto dim = static_cast<Eigen::Index>(n);
    if (restart == 0) {
        return CMatrix::Identity(dim, dim) / std::sqrt(static_cast<double>(n));
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix l(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        for (Eigen::Index r = 0; r < dim; ++r) {
            l(r, c) = Complex(normal(rng), normal(rng));
        }
    }
    if (restart % 3 == 1) {
        // rank-one start
        l.rightCols(dim - 1).setZero();
    }
    double radius = 1.0;
    if (restart % 4 == 3) {
        radius = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
    }
    return l * (radius / l.norm());
}

void require_grid(std::span<const double> grid, std::size_t min_points, ErrorKind kind, const char* what) {
    if (grid.size() < min_points) {
        throw Error(kind, kOracleModule,
                    std::string(what) + " needs at least " + std::to_string(min_points) + " points, got " +
                        std::to_string(grid.size()));
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]) || grid[i] < 0.0) {
            throw Error(kind, kOracleModule, std::string(what) + " has an invalid entry at index " + std::to_string(i));
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw Error(kind, kOracleModule, std::string(what) + " is not strictly ascending at index " + std::to_string(i));
        }
    }
}

}  // namespace

void OracleConfig::validate() const {
    if (n_restarts < 1 || max_iters < 1 || !(tol > 0.0) || !(tol < 1.0)) {
        throw Error(ErrorKind::InvalidArgument, kOracleModule,
                    "oracle config needs n_restarts >= 1, max_iters >= 1 and 0 < tol < 1");
    }
}

OracleResult max_secrecy_rate(const WiretapChannel& channel, SnrPoint snr, const OracleConfig& config) {
    config.validate();
    if (!(snr.value() > 0.0)) {
        throw Error(ErrorKind::NonPositiveSnr, kOracleModule, "oracle needs SNR > 0");
    }
    const double power = power_for_snr(channel, snr);
    const FactorObjective objective(channel, power);
    const auto n = static_cast<Eigen::Index>(channel.n_t());

    double best_rate = 0.0;
    CMatrix best_k = CMatrix::Zero(n, n);
    for (int r = 0; r < config.n_restarts; ++r) {
        std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                          static_cast<std::uint32_t>(r)};
        std::mt19937_64 rng(seq);
        const AscentResult run = projected_ascent(objective, random_factor(channel.n_t(), r, rng), config);
        if (run.rate > best_rate) {
            best_rate = run.rate;
            best_k = objective.covariance(run.factor);
        }
        const AscentResult refined = refine_on_sphere(objective, run.factor, config);
        if (refined.rate > best_rate) {
            best_rate = refined.rate;
            best_k = objective.covariance(refined.factor);
        }
    }

    bool floor_binding = false;
    const MaxEigenspace es = max_eigenspace(phi(channel));
    const CVector u = es.basis.col(0);
    const CMatrix floor_k = power * u * u.adjoint();
    const double floor_rate = detail::secrecy_rate_unchecked(channel, floor_k);
    if (floor_rate > best_rate) {
        best_rate = floor_rate;
        best_k = floor_k;
        floor_binding = true;
    }
    return {best_rate, InputCovariance::make(hermitian_part(best_k), power), floor_binding};
}

DerivativeEstimate fit_derivatives(std::span<const double> snr, std::span<const double> capacity) {
    if (snr.size() != capacity.size() || snr.size() < 2) {
        throw Error(ErrorKind::BadSampleGrid, kOracleModule, "fit needs matching SNR/capacity lists of length >= 2");
    }
    const auto n = static_cast<Eigen::Index>(snr.size());
    RMatrix design(n, 2);
    RVector y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double s = snr[static_cast<std::size_t>(i)];
        design(i, 0) = s;
        design(i, 1) = 0.5 * s * s;
        y(i) = capacity[static_cast<std::size_t>(i)];
    }
    const RVector coef = design.colPivHouseholderQr().solve(y);
    return {coef(0), coef(1)};
}

DerivativeEstimate estimate_derivatives(const WiretapChannel& channel, const OracleConfig& config,
                                        std::span<const double> snr_samples) {
    require_grid(snr_samples, 3, ErrorKind::BadSampleGrid, "snr_samples");
    if (snr_samples.front() <= 0.0 || snr_samples.back() > 1e-2) {
        throw Error(ErrorKind::BadSampleGrid, kOracleModule, "snr_samples must lie in (0, 1e-2]");
    }
    std::vector<double> values;
    values.reserve(snr_samples.size());
    for (double s : snr_samples) {
        values.push_back(max_secrecy_rate(channel, SnrPoint(s), config).rate);
    }
    return fit_derivatives(snr_samples, values);
}

CapacityCurve capacity_curve(const WiretapChannel& channel, std::span<const double> snr_grid,
                             const OracleConfig& config) {
    require_grid(snr_grid, 1, ErrorKind::BadGrid, "snr_grid");
    CapacityCurve curve;
    curve.snr_grid.assign(snr_grid.begin(), snr_grid.end());
    for (double s : snr_grid) {
        curve.values.push_back(s == 0.0 ? 0.0 : max_secrecy_rate(channel, SnrPoint(s), config).rate);
    }
    return curve;
}

bool concavity_check(const CapacityCurve& curve, double slack) {
    if (curve.values.size() != curve.snr_grid.size()) {
        throw Error(ErrorKind::BadGrid, kOracleModule, "curve grid and values differ in length");
    }
    require_grid(curve.snr_grid, 3, ErrorKind::BadGrid, "curve grid");
    if (!(slack >= 0.0)) {
        throw Error(ErrorKind::BadGrid, kOracleModule, "slack must be nonnegative");
    }
    const auto& s = curve.snr_grid;
    const auto& c = curve.values;
    for (std::size_t k = 1; k + 1 < s.size(); ++k) {
        const double left = s[k] - s[k - 1];
        const double right = s[k + 1] - s[k];
        const double chord = (right * c[k - 1] + left * c[k + 1]) / (left + right);
        if (c[k] < chord - slack) {
            return false;
        }
    }
    return true;
}

}  // namespace wiretap
