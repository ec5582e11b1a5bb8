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

#ifndef CSSEP_PRODUCT_SEARCH_HPP
#define CSSEP_PRODUCT_SEARCH_HPP

#include <optional>
#include <string>
#include <vector>

#include "cssep/common.hpp"
#include "cssep/rational.hpp"
#include "cssep/state.hpp"

namespace cssep {

/// A local unit vector x standing for x^{⊗power}. Real vectors are stored with zero imaginary part
/// and a positive first nonzero coordinate.
struct ProductVector {
    VectorXcd local;
    int power = 1;

    static ProductVector from_real(const VectorXd &x, int power);
    static ProductVector from_complex(const VectorXcd &x, int power);

    bool is_real(double tol = 1e-12) const;
    VectorXd real_local() const {
        return local.real();
    }
    VectorXcd expand() const;
};

/// Unit vector with the first coordinate above 1e-12 in magnitude made positive.
VectorXd canonical_sign(const VectorXd &x);
/// Angle between the lines spanned by x and y.
double line_angle(const VectorXd &x, const VectorXd &y);

struct TakagiFactorization {
    MatrixXcd U;  // unitary, M = U diag(D) U^T
    VectorXd D;
    // Filled for real input: M = O diag(signs * D) O^T with O real orthogonal.
    bool real_input = false;
    MatrixXd orthogonal;
    std::vector<int> signs;
    double residual = 0;
};

TakagiFactorization takagi(const MatrixXcd &M);

struct SignedFactor {
    int sign;
    VectorXcd a;
};

/// psi = sum_i sign_i a_i ⊗ a_i with pairwise orthogonal a_i. psi has length N^2.
std::vector<SignedFactor> symmetric_decompose_pure(const VectorXcd &psi);

/// True iff every n-dimensional subspace of the N⊗N symmetric space contains a product vector by
/// the dimension count of the Segre variety.
bool segre_guarantee(int n, int N);

struct ProductPair {
    VectorXd x;
    VectorXd y;
    double residual = 0;
};

/// Given kernel vectors of a 2⊗M operator, returns real x, y with x⊗y orthogonal to the kernel.
std::optional<ProductPair> qubit_product_step(const std::vector<VectorXcd> &kernel, int M);

/// Real roots of a x^2 + b x + c = 0, handling the linear and degenerate cases.
std::vector<double> real_quadratic_roots(double a, double b, double c);

/// Real symmetric product vector in a 3⊗3 symmetric subspace of dimension >= 5.
std::optional<ProductVector> two_qutrit_product_step(const Subspace &range);

struct ProductSearchOptions {
    uint64_t seed = 7;
    int restarts = 200;
    double residual_tol = 1e-9;
    double dedup_angle = 1e-6;
    bool allow_exhaustive = true;
    int max_macaulay_columns = 2500;
    /// Optional exact generators of the range (x_k with range = span x_k^{⊗d}); enables exact checks.
    std::vector<FractionVector> rational_generators;
};

struct ProductSearchResult {
    std::vector<ProductVector> vectors;
    /// True when the enumeration is proven complete over the complex numbers.
    bool complete = false;
    /// True when the range is the whole symmetric space, so every real x qualifies.
    bool whole_space = false;
    std::string method;
    int bezout = 0;
    int complex_solutions = 0;
    int exact_verified = 0;
    std::vector<std::string> transcript;
};

/// Real x with x^{⊗d} in the subspace. `range` lives in (C^N)^{⊗d} and must lie in the symmetric
/// subspace.
ProductSearchResult symmetric_product_vectors(const Subspace &range, int d, int N, const ProductSearchOptions &opts = {});

/// Same search with the range given by an orthonormal real basis in sym coordinates.
ProductSearchResult symmetric_product_vectors_sym(const MatrixXd &range_sym, int d, int N, const ProductSearchOptions &opts = {});

struct BipartiteSearchResult {
    std::vector<ProductPair> pairs;
    bool complete = false;  // multistart never proves completeness
};

/// Multistart search for real x ⊗ y in a subspace of R^{dA} ⊗ R^{dB}.
BipartiteSearchResult bipartite_product_vectors(const Subspace &range, int dA, int dB, const ProductSearchOptions &opts = {});

}  // namespace cssep

#endif
