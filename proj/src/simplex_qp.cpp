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

#include "wiretap/simplex_qp.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>

#include "wiretap/error.hpp"

namespace wiretap {
namespace {

// Supports are enumerated exhaustively up to this size to seed the
// multistart with every face-stationary point.
constexpr Eigen::Index kMaxEnumeratedDim = 10;

struct Candidate {
    RVector point;
    double value;
};

bool lexicographically_less(const RVector& a, const RVector& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

// Clips rounding noise and renormalizes so the point lies exactly on the simplex.
RVector clean(const RVector& a) {
    RVector out = a.cwiseMax(0.0);
    const double sum = out.sum();
    if (sum > 0.0) {
        out /= sum;
    } else {
        out.setConstant(1.0 / static_cast<double>(a.size()));
    }
    return out.cwiseMin(1.0);
}

RVector projected_descent(const RMatrix& m, RVector a, double norm, const QpConfig& config) {
    if (norm == 0.0) {
        return a;
    }
    const double step0 = 1.0 / (2.0 * norm);
    double q = simplex_quadratic(m, a);
    for (int iter = 0; iter < config.max_iters; ++iter) {
        const RVector grad = 2.0 * m * a;
        double step = step0;
        RVector next;
        double q_next = 0.0;
        for (int halving = 0; halving < 60; ++halving) {
            next = project_to_simplex(a - step * grad);
            q_next = simplex_quadratic(m, next);
            const RVector delta = next - a;
            if (q_next <= q + grad.dot(delta) + delta.squaredNorm() / (2.0 * step)) {
                break;
            }
            step *= 0.5;
        }
        const double grad_map = (a - next).norm() / step;
        a = std::move(next);
        q = q_next;
        if (grad_map <= config.grad_map_tol) {
            break;
        }
    }
    return a;
}

// Stationary point of q restricted to the face spanned by `support`, if the
// reduced KKT system is nonsingular and its solution is feasible.
std::optional<RVector> face_stationary_point(const RMatrix& m, const std::vector<Eigen::Index>& support) {
    const auto k = static_cast<Eigen::Index>(support.size());
    RMatrix system = RMatrix::Zero(k + 1, k + 1);
    RVector rhs = RVector::Zero(k + 1);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            system(i, j) = 2.0 * m(support[i], support[j]);
        }
        system(i, k) = -1.0;
        system(k, i) = 1.0;
    }
    rhs(k) = 1.0;
    Eigen::FullPivLU<RMatrix> lu(system);
    if (!lu.isInvertible()) {
        return std::nullopt;
    }
    const RVector x = lu.solve(rhs);
    RVector point = RVector::Zero(m.rows());
    for (Eigen::Index i = 0; i < k; ++i) {
        if (!std::isfinite(x(i)) || x(i) < -1e-12) {
            return std::nullopt;
        }
        point(support[i]) = x(i);
    }
    return clean(point);
}

// Re-solves the KKT system on the support of `a`; keeps the result when it is
// feasible and no worse.
RVector polish(const RMatrix& m, const RVector& a) {
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i) > 0.0) {
            support.push_back(i);
        }
    }
    const auto refined = face_stationary_point(m, support);
    if (!refined) {
        return a;
    }
    const double q = simplex_quadratic(m, a);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return simplex_quadratic(m, *refined) <= q + 1e-15 * scale ? *refined : a;
}

std::vector<RVector> enumerate_face_points(const RMatrix& m) {
    std::vector<RVector> points;
    const Eigen::Index l = m.rows();
    if (l > kMaxEnumeratedDim) {
        return points;
    }
    for (std::uint32_t mask = 1; mask < (1u << l); ++mask) {
        std::vector<Eigen::Index> support;
        for (Eigen::Index i = 0; i < l; ++i) {
            if (mask & (1u << i)) {
                support.push_back(i);
            }
        }
        if (auto p = face_stationary_point(m, support)) {
            points.push_back(std::move(*p));
        }
    }
    return points;
}

SimplexPoint to_simplex_point(const RVector& a) {
    return SimplexPoint(std::vector<double>(a.data(), a.data() + a.size()));
}

}  // namespace

SimplexPoint::SimplexPoint(std::vector<double> weights, double tol) : weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw Error(ErrorKind::BadSimplexWeights, kSimplexQpModule, "weights are empty");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        const double w = weights_[i];
        if (!std::isfinite(w) || w < 0.0 || w > 1.0) {
            throw Error(ErrorKind::BadSimplexWeights, kSimplexQpModule,
                        "weight " + std::to_string(i) + " = " + std::to_string(w) + " is outside [0, 1]");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > tol) {
        throw Error(ErrorKind::BadSimplexWeights, kSimplexQpModule,
                    "weights sum to " + std::to_string(sum) + ", expected 1");
    }
}

RVector project_to_simplex(const RVector& v) {
    const Eigen::Index n = v.size();
    std::vector<double> sorted(v.data(), v.data() + n);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        cumulative += sorted[static_cast<std::size_t>(j)];
        const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (sorted[static_cast<std::size_t>(j)] - candidate > 0.0) {
            theta = candidate;
        }
    }
    return (v.array() - theta).cwiseMax(0.0).matrix();
}

double simplex_quadratic(const RMatrix& m, const RVector& a) {
    return a.dot(m * a);
}

double simplex_kkt_residual(const RMatrix& m, const RVector& a) {
    const RVector grad = 2.0 * m * a;
    const double multiplier = a.dot(grad);
    double residual = std::abs(a.sum() - 1.0) + std::max(0.0, -a.minCoeff());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        residual = std::max(residual, multiplier - grad(i));
        residual = std::max(residual, a(i) * std::abs(grad(i) - multiplier));
    }
    return residual / std::max(1.0, m.cwiseAbs().maxCoeff());
}

QpResult minimize_simplex_quadratic(const RMatrix& m, const QpConfig& config) {
    if (m.rows() < 1 || m.rows() != m.cols()) {
        throw Error(ErrorKind::BadDimension, kSimplexQpModule,
                    "QP matrix must be square and non-empty, got " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()));
    }
    if (!m.allFinite()) {
        throw Error(ErrorKind::BadDimension, kSimplexQpModule, "QP matrix has non-finite entries");
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > config.symmetry_tol * scale) {
        throw Error(ErrorKind::AsymmetricInput, kSimplexQpModule,
                    "QP matrix is not symmetric: max|M - M^T| = " + std::to_string(asym));
    }
    const RMatrix sym = 0.5 * (m + m.transpose());
    const Eigen::Index l = sym.rows();

    if (l == 1) {
        return {SimplexPoint({1.0}), sym(0, 0), QpCertificate::KktVerified};
    }

    Eigen::SelfAdjointEigenSolver<RMatrix> eig(sym, Eigen::EigenvaluesOnly);
    const double norm = eig.eigenvalues().cwiseAbs().maxCoeff();
    const bool convex = eig.eigenvalues().minCoeff() >= -config.psd_tol * norm;
    const RVector barycenter = RVector::Constant(l, 1.0 / static_cast<double>(l));

    if (convex) {
        RVector a = polish(sym, projected_descent(sym, barycenter, norm, config));
        a = clean(a);
        if (simplex_kkt_residual(sym, a) <= config.kkt_tol) {
            return {to_simplex_point(a), simplex_quadratic(sym, a), QpCertificate::KktVerified};
        }
    }

    std::vector<RVector> starts;
    for (Eigen::Index i = 0; i < l; ++i) {
        starts.push_back(RVector::Unit(l, i));
    }
    starts.push_back(barycenter);
    std::mt19937_64 rng(config.seed);
    std::exponential_distribution<double> exponential(1.0);
    for (int r = 0; r < config.n_random; ++r) {
        RVector p(l);
        for (Eigen::Index i = 0; i < l; ++i) {
            p(i) = exponential(rng);
        }
        starts.push_back(p / p.sum());
    }
    for (auto& p : enumerate_face_points(sym)) {
        starts.push_back(std::move(p));
    }

    std::vector<Candidate> candidates;
    for (const RVector& start : starts) {
        candidates.push_back({start, simplex_quadratic(sym, start)});
        const RVector a = clean(polish(sym, projected_descent(sym, start, norm, config)));
        candidates.push_back({a, simplex_quadratic(sym, a)});
    }

    const Candidate* best = &candidates.front();
    for (const Candidate& c : candidates) {
        const double tie = 1e-12 * std::max(1.0, std::abs(best->value));
        if (c.value < best->value - tie ||
            (std::abs(c.value - best->value) <= tie && lexicographically_less(c.point, best->point))) {
            best = &c;
        }
    }
    return {to_simplex_point(best->point), best->value, QpCertificate::MultistartBest};
}

}  // namespace wiretap
