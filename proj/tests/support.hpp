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

// Channel builders shared by the test binaries.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "wiretap/channel.hpp"

namespace wiretap::testing {

inline CMatrix real_diag(const std::vector<double>& d) {
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
    }
    return m;
}

inline WiretapChannel make_channel(CMatrix h_main, CMatrix h_eaves, double noise_main = 1.0,
                                   double noise_eaves = 1.0) {
    return validate_channel({std::move(h_main), std::move(h_eaves), noise_main, noise_eaves});
}

inline WiretapChannel scalar_channel(Complex h_main, Complex h_eaves, double noise_main = 1.0,
                                     double noise_eaves = 1.0) {
    CMatrix hm(1, 1);
    CMatrix he(1, 1);
    hm(0, 0) = h_main;
    he(0, 0) = h_eaves;
    return make_channel(hm, he, noise_main, noise_eaves);
}

/// Parallel channel with G_m = diag(5, 4, 2) and G_e = diag(2, 1, 1).
inline WiretapChannel parallel_channel() {
    return make_channel(real_diag({std::sqrt(5.0), 2.0, std::sqrt(2.0)}), real_diag({std::sqrt(2.0), 1.0, 1.0}));
}

inline CMatrix gaussian_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, double scale = 1.0) {
    std::normal_distribution<double> normal(0.0, scale * std::sqrt(0.5));
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            const double re = normal(rng);
            const double im = normal(rng);
            m(r, c) = Complex(re, im);
        }
    }
    return m;
}

/// Channel with n_T, n_R, n_E drawn from [1, max_dim], complex Gaussian
/// entries and noises in [0.5, 2].
inline WiretapChannel random_channel(std::mt19937_64& rng, int max_dim = 3) {
    std::uniform_int_distribution<int> dim(1, max_dim);
    std::uniform_real_distribution<double> noise(0.5, 2.0);
    const int nt = dim(rng);
    const int nr = dim(rng);
    const int ne = dim(rng);
    CMatrix hm = gaussian_matrix(rng, nr, nt);
    CMatrix he = gaussian_matrix(rng, ne, nt, 0.7);
    const double nm = noise(rng);
    const double nn = noise(rng);
    return make_channel(hm, he, nm, nn);
}

}  // namespace wiretap::testing
