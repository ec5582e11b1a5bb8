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

#ifndef CSSEP_SEPARABILITY_HPP
#define CSSEP_SEPARABILITY_HPP

#include <map>
#include <string>
#include <vector>

#include "cssep/product_search.hpp"
#include "cssep/state.hpp"

namespace cssep {

enum class Verdict { Separable, Entangled, Undetermined };

std::string to_string(Verdict v);

namespace rules {
inline constexpr const char *kSingleParty = "single-party";
inline constexpr const char *kMultiQubit = "multi-qubit";
inline constexpr const char *kTwoQutrit = "two-qutrit";
inline constexpr const char *kRankAtMost5 = "rank<=5";
inline constexpr const char *kRankN = "rank=N";
inline constexpr const char *kRankNPlus1 = "rank=N+1";
inline constexpr const char *kRank6Product = "rank-6 real product vector";
inline constexpr const char *kRank6Empty = "rank-6 empty product set";
inline constexpr const char *kRankNPlus2Product = "rank-(N+2) real product vector";
inline constexpr const char *kRankNPlus2Empty = "rank-(N+2) empty product set";
inline constexpr const char *kDirectSum = "direct-sum";
inline constexpr const char *kPeeling = "peeling";
inline constexpr const char *kNoRule = "no applicable rule";
inline constexpr const char *kNotFoundSuffix = " (theorem-certified, decomposition not found numerically)";
}  // namespace rules

struct Term {
    double weight;
    ProductVector vector;
};

struct Certificate {
    Verdict verdict = Verdict::Undetermined;
    std::string rule;
    bool has_decomposition = false;
    std::vector<Term> decomposition;
    std::map<std::string, double> evidence;
    std::vector<std::string> transcript;
};

struct EngineOptions {
    Tolerances tol;
    uint64_t seed = 7;
    int restarts = 200;
    /// Peeling stops after this many terms beyond the symmetric dimension.
    int extra_peels = 4;
};

/// || rho - sum_i w_i x_i^{⊗d} (x_i^{⊗d})^† ||_F
double reconstruction_error(const DensityMatrix &rho, const std::vector<Term> &terms);

struct PeelResult {
    double lambda;
    DensityMatrix residual;
    int rank_before;
    int rank_after;
};

/// Subtracts the largest multiple of x^{⊗d}(x^{⊗d})^† that keeps rho PSD. Eigenvalues of the residual
/// below tol * lambda_max(rho) are clamped to zero.
PeelResult peel(const DensityMatrix &rho, const ProductVector &x, double tol = 1e-10);

/// Constructive S-separable decomposition by repeated peeling of real symmetric product vectors.
Certificate s_decompose(const DensityMatrix &rho, const EngineOptions &opts = {});

/// Decision procedure for CS states. Throws InputError for non-CS input.
Certificate classify(const DensityMatrix &rho, const EngineOptions &opts = {});

struct BisepDiagnostic {
    bool checked = false;
    bool all_product = false;
    double worst_residual = 0;
};

/// For every decomposition term, checks that x^{⊗d} is a product across the cut A : rest by
/// computing the second Schmidt coefficient of the term under the bipartition.
BisepDiagnostic bisep_equals_fullsep_check(const DensityMatrix &rho, const Certificate &cert, const std::vector<int> &A);

}  // namespace cssep

#endif
