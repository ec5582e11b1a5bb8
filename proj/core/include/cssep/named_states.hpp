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

#ifndef CSSEP_NAMED_STATES_HPP
#define CSSEP_NAMED_STATES_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cssep/state.hpp"

namespace cssep {

struct NamedState {
    std::string name;
    std::map<std::string, double> params;
    DensityMatrix state;
    std::string description;
};

/// x_0..x_7 of the 4⊗4 construction, unnormalized. x_7 = (1, -8/3, 1, -8/3).
std::vector<VectorXd> sigma_generators();

/// sum_i w_i (x_i ⊗ x_i)(x_i ⊗ x_i)^T over the first seven generators, before normalization.
MatrixXd sigma_matrix(const std::array<double, 7> &weights);

/// Trace-normalized sigma; every weight must be positive.
NamedState build_sigma(const std::array<double, 7> &weights = {1. / 7, 1. / 7, 1. / 7, 1. / 7, 1. / 7, 1. / 7, 1. / 7});

/// 1 / <phi_7| m^+ |phi_7> with phi_7 = x_7 ⊗ x_7 (unnormalized).
double max_subtraction(const MatrixXd &m);

/// sigma - lambda phi_7 phi_7^T, normalized. Without an override lambda is the largest value keeping
/// the state PSD, which drops the rank to 6. An override above that value throws InputError.
NamedState build_entangled_rank6(const std::array<double, 7> &weights = {1. / 7, 1. / 7, 1. / 7, 1. / 7, 1. / 7, 1. / 7, 1. / 7},
                                 std::optional<double> lambda = std::nullopt);

/// Coefficients of sum_{i<7} l_i phi_i phi_i^T - l_7 phi_7 phi_7^T; l_7 is the subtracted weight.
struct RankSixCoefficients {
    std::array<double, 8> l{};
};

/// Fills l_0, l_1, l_2 and l_6 = l_5 from (l_3, l_4, l_5, l_7) so that (1,1,1,1)/2 is a KKT point.
RankSixCoefficients conditioned_coefficients(double l3, double l4, double l5, double l7);

MatrixXd rank_six_matrix(const RankSixCoefficients &c);

/// Conditioned coefficients with l_7 at the largest PSD value (a fixed point, since l_0 and l_2
/// depend on l_7). The result is rank 6 and entrywise nonnegative for small l_5.
/// (1,1,1,1)/2 is only a stationary point; it is the maximizer when l_4 dominates l_5 (about 1000:1).
RankSixCoefficients solve_conditioned(double l3 = 1, double l4 = 1, double l5 = 0.001);

NamedState build_nonnegative_conditioned(double l3 = 1, double l4 = 1, double l5 = 0.001);

struct EdgeExtreme {
    bool edge = false;
    bool extreme = false;
    bool cs = false;
    bool ppt = false;
    int rank = 0;
    int product_vectors = 0;
    bool search_complete = false;
    std::vector<std::string> transcript;
};

/// Edge and extreme flags for a 4⊗4 state of rank 6. Extremality is only certified for CS input.
EdgeExtreme check_edge_extreme(const DensityMatrix &rho);

struct Blokovi {
    MatrixXd C;  // 4 x 9, [C_0, C_1, C_2]
    DensityMatrix alpha;           // 3⊗3
    DensityMatrix alpha_embedded;  // 4⊗4
    DensityMatrix beta;            // 4⊗4
    DensityMatrix rho;             // 4⊗4, alpha + eps beta
    MatrixXd P;                    // 16 x 9
    std::vector<VectorXd> gamma;   // six distinct rows in 4⊗4 coordinates
    VectorXd x;                    // e_1 + (1 + d) e_2
    VectorXd y;                    // e_0 - e_3
};

Blokovi build_blokovi(double a = 1, double b = 1, double c = 1, double d = 1, double eps = 1e-2);

struct HPerturbation {
    MatrixXd H;
    /// rho + eps H is PSD for eps in [eps_lo, eps_hi].
    double eps_lo = 0;
    double eps_hi = 0;
};

/// H = (|01>+|10>)(<01|+<10|) - (|00>-|11>)(<00|-<11|) on a two-party state. Both vectors must lie
/// in the range of rho.
HPerturbation build_h_perturbation(const DensityMatrix &rho);

/// Names accepted by named_state().
std::vector<std::string> named_state_names();
NamedState named_state(const std::string &name);

}  // namespace cssep

#endif
