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

#ifndef CSSEP_POLYSYS_HPP
#define CSSEP_POLYSYS_HPP

#include <map>
#include <string>
#include <vector>

#include "cssep/common.hpp"

namespace cssep {

/// Sparse real polynomial in a fixed number of variables, keyed by exponent vectors.
struct Polynomial {
    int nvars = 0;
    std::map<std::vector<int>, double> terms;

    static Polynomial constant(int nvars, double c);
    static Polynomial variable(int nvars, int i);

    int degree() const;
    cplx eval(const VectorXcd &x) const;
    double eval(const VectorXd &x) const;
    VectorXcd gradient(const VectorXcd &x) const;

    Polynomial operator+(const Polynomial &o) const;
    Polynomial operator*(const Polynomial &o) const;
    Polynomial operator*(double s) const;
    void prune(double tol);
};

struct PolySolveResult {
    /// True when the solver verified that it holds every isolated solution, counted with multiplicity.
    bool complete = false;
    int bezout = 0;
    int null_dim = 0;
    std::vector<VectorXcd> roots;
    std::string note;
};

/// Solves n polynomial equations in n unknowns.
///
/// Builds the Macaulay matrix at degree sum(d_i - 1) + 1, checks that its null space has the Bezout
/// dimension (which rules out positive-dimensional components and roots at infinity), and reads the
/// roots off a multiplication-matrix eigenproblem. Roots are Newton-polished.
PolySolveResult solve_square_system(const std::vector<Polynomial> &eqs, uint64_t seed, int max_columns = 2500);

}  // namespace cssep

#endif
