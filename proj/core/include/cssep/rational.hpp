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

#ifndef CSSEP_RATIONAL_HPP
#define CSSEP_RATIONAL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cssep/common.hpp"

namespace cssep {

/// Small exact fraction used at the API boundary of the exact layer. Always reduced, den > 0.
struct Fraction {
    int64_t num = 0;
    int64_t den = 1;

    Fraction() = default;
    Fraction(int64_t n, int64_t d = 1);

    double value() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    std::string str() const;
    bool operator==(const Fraction &o) const = default;
};

using FractionVector = std::vector<Fraction>;

/// Multisets of size d over {0..N-1} in lexicographic order; the coordinate order used below.
std::vector<std::vector<int>> monomial_order(int d, int N);

/// Exact basis of the degree-d forms that vanish on every generator.
///
/// A form is a coefficient vector over monomial_order(d, N). The returned rows span the left kernel
/// of the monomial-value matrix of the generators, in reduced row echelon form scaled to coprime
/// integers. A real vector a has a^{⊗d} in span{x_k^{⊗d}} exactly when every form vanishes at a.
std::vector<FractionVector> exact_vanishing_forms(const std::vector<FractionVector> &generators, int d);

/// Exact evaluation of a form at a rational point.
Fraction exact_evaluate(const FractionVector &form, const FractionVector &point, int d);
bool exact_vanishes_all(const std::vector<FractionVector> &forms, const FractionVector &point, int d);

int exact_rank(const std::vector<FractionVector> &rows);
bool exact_same_span(const std::vector<FractionVector> &a, const std::vector<FractionVector> &b);

/// Continued-fraction reconstruction of x / x[pivot] with the largest |x| coordinate as pivot.
/// Returns nullopt when some ratio needs a denominator above max_den or misses by more than tol.
std::optional<FractionVector> rationalize_direction(const VectorXd &x, int64_t max_den = 100000, double tol = 1e-9);

}  // namespace cssep

#endif
