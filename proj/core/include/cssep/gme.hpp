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

#ifndef CSSEP_GME_HPP
#define CSSEP_GME_HPP

#include "cssep/named_states.hpp"
#include "cssep/state.hpp"

namespace cssep {

struct GmeResult {
    /// max <a^{⊗d}| rho |a^{⊗d}> for the trace-normalized state.
    double mu = 0;
    VectorXd a;
    double gme = 0;
    int iterations = 0;
    double kkt_residual = 0;
    bool converged = false;
    /// Largest decrease of the objective over one accepted step (should be <= 1e-12).
    double worst_decrease = 0;
};

struct GmeOptions {
    uint64_t seed = 7;
    int max_iter = 20000;
    double tol = 1e-13;
    /// Random starts, in addition to the uniform vector and one start near each basis vector.
    int starts = 10;
};

/// v_i = sum rho_{(i J'), K} a^{⊗(d-1)}_{J'} a^{⊗d}_K.
VectorXd gme_contraction(const DensityMatrix &rho, const VectorXd &a);

/// Shifted symmetric power iteration from nonnegative starting points. The state is normalized by
/// its trace. Throws InputError for states with negative or complex entries, or that are not
/// invariant under party permutations.
GmeResult gme_power_iteration(const DensityMatrix &rho, const GmeOptions &opts = {});

struct ClosedFormGme {
    double mu_raw = 0;  // value at a = (1,1,1,1)/2 for the unnormalized coefficients
    double trace = 0;
    double mu = 0;  // mu_raw / trace
    double gme = 0;
};

/// Closed form for the conditioned rank-6 family. Checks the three linear conditions, l_6 = l_5,
/// positivity and entrywise nonnegativity of the state; the error names the failing condition.
ClosedFormGme gme_closed_form(const RankSixCoefficients &c);

/// ||<a| rho |a,..,a> - mu a|| < tol and a >= 0 entrywise (rho as given, not normalized).
bool verify_kkt(const DensityMatrix &rho, const VectorXd &a, double mu, double tol = 1e-8);

/// rho ⊗ rho regrouped as a d-party state with local dimension N^2 (copy index least significant).
DensityMatrix doubled_state(const DensityMatrix &rho);

}  // namespace cssep

#endif
