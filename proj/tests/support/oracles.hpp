// Copyright 2026 The cssep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference computations for tests. Nothing here calls the library's search, decomposition or
// optimization code; states are assembled from raw Eigen arithmetic.

#ifndef CSSEP_TESTS_ORACLES_HPP
#define CSSEP_TESTS_ORACLES_HPP

#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Gen {
    std::mt19937_64 eng;
    explicit Gen(uint64_t seed) : eng(seed) {
    }
    double normal() {
        return std::normal_distribution<double>(0, 1)(eng);
    }
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(eng);
    }
    int integer(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(eng);
    }
    VectorXd unit(int n);
    VectorXd nonnegative_unit(int n);
    MatrixXd invertible(int n);
};

/// x ⊗ ... ⊗ x by explicit Kronecker products.
VectorXd kron_power(const VectorXd &x, int d);

/// sum_i w_i (x_i^{⊗d})(x_i^{⊗d})^T with random unit x_i and weights in [0.2, 1], trace 1.
struct Mixture {
    MatrixXd rho;
    std::vector<VectorXd> xs;
    std::vector<double> ws;
};
Mixture random_symmetric_mixture(Gen &g, int d, int N, int terms, bool nonnegative = false);

/// Integer rank via SVD with a relative cutoff.
int numeric_rank(const MatrixXd &m, double tol = 1e-10);

/// Orthonormal basis of the kernel of a PSD matrix.
MatrixXd kernel_basis(const MatrixXd &m, double tol = 1e-10);

/// Real unit x with x ⊗ x orthogonal to every kernel column, by dense sampling of the sphere
/// followed by Gauss-Newton refinement. Duplicates up to sign are merged.
std::vector<VectorXd> grid_symmetric_product_vectors(const MatrixXd &kernel, int N, long samples, uint64_t seed);

/// max over nonnegative unit a of (a⊗a)^T rho (a⊗a) by sampling plus projected ascent.
double grid_gme_mu(const MatrixXd &rho, int N, int samples, uint64_t seed);

/// Angle between lines.
double line_angle(const VectorXd &a, const VectorXd &b);

/// Moment vector of sum_i w_i z(t_i) z(t_i)^T, with an optional extra weight on e_last.
MatrixXd planted_hankel(const std::vector<double> &nodes, const std::vector<double> &weights, int n, double infinity_weight);

}  // namespace oracle

#endif
