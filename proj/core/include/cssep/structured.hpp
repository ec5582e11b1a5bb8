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

#ifndef CSSEP_STRUCTURED_HPP
#define CSSEP_STRUCTURED_HPP

#include <string>
#include <vector>

#include "cssep/separability.hpp"
#include "cssep/state.hpp"

namespace cssep {

/// Coefficients m_ij = <D_{d,i}| rho |D_{d,j}> of a multi-qubit symmetric state.
///
/// Structure flags describe the moment matrix S = V^{-1} M V^{-1}, V = diag(sqrt(binomial(d, i))).
/// S is the matrix whose entries are the plain moments of the state's product decompositions; M
/// itself is Hankel only when d <= 1.
struct DickeMatrix {
    MatrixXd m;
    int d = 0;
    bool diagonal = false;
    bool hankel = false;
    bool toeplitz = false;

    MatrixXd moment() const;
    /// "diagonal", "hankel", "toeplitz" or "generic"; the first flag that is set wins.
    std::string structure() const;
};

/// diag(sqrt(binomial(d, i))), i = 0..d.
MatrixXd dicke_weights(int d);

/// Columns D_{d,0}, ..., D_{d,d}.
MatrixXd dicke_basis(int d);

DickeMatrix make_dicke_matrix(const MatrixXd &m, double flag_tol = 1e-12);

/// Throws InputError when the range of rho leaves the symmetric subspace or M is not real.
DickeMatrix state_to_dicke_matrix(const DensityMatrix &rho, double flag_tol = 1e-12);

/// sum_ij m_ij |D_i><D_j|.
DensityMatrix dicke_matrix_to_state(const MatrixXcd &m);

MatrixXd hankel_matrix(const VectorXd &a);
/// Symmetric Toeplitz matrix with first column a.
MatrixXd toeplitz_matrix(const VectorXd &a);

/// State whose moment matrix is the Hankel matrix of a (length 2d+1). Not normalized, so the moment
/// matrix round-trips exactly. Throws InputError when the Hankel matrix is not PSD.
DensityMatrix hankel_to_state(const VectorXd &a);

struct VandermondeTerm {
    double weight = 0;
    double node = 0;
    bool infinite = false;

    /// (1, t, ..., t^{n-1}) or e_{n-1}.
    VectorXd vector(int n) const;
    /// Local qubit vector with vector(d+1) as its Dicke moments: |1> + t|0>, or |0> for Infinity.
    VectorXd local() const;
};

/// sum_i w_i z_i z_i^T.
MatrixXd vandermonde_sum(const std::vector<VandermondeTerm> &terms, int n);

/// Prony-style factorization of a PSD Hankel matrix into rank(H) Vandermonde terms.
std::vector<VandermondeTerm> hankel_psd_decompose(const MatrixXd &H, double tol = 1e-10);

enum class ToeplitzConvention {
    /// Moment matrix S is Toeplitz; M = V S V.
    Weighted,
    /// M itself is Toeplitz.
    Literal,
};

/// Trace-normalized state from the first column of a Toeplitz matrix. Throws InputError when the
/// resulting Dicke matrix is not PSD.
DensityMatrix toeplitz_to_state(const VectorXd &a, ToeplitzConvention convention = ToeplitzConvention::Weighted);

struct FourierTerm {
    double weight = 0;
    double theta = 0;
};

/// T = sum_i w_i u(theta_i) u(theta_i)^†, u(theta)_k = e^{i k theta}, for a real PSD Toeplitz T.
std::vector<FourierTerm> toeplitz_psd_decompose(const MatrixXd &T, double tol = 1e-10);

/// Separability decision for multi-qubit symmetric states that need not be CS.
Certificate classify_symmetric(const DensityMatrix &rho, const EngineOptions &opts = {});

namespace rules {
inline constexpr const char *kPartialTransposeNegative = "partial-transpose-negative";
inline constexpr const char *kTwoQubitPpt = "two-qubit PPT";
inline constexpr const char *kToeplitzVandermonde = "toeplitz-vandermonde";
}  // namespace rules

struct ScanRecord {
    int index = 0;
    uint64_t seed = 0;
    std::string kind;  // "rejection" or "low-rank"
    VectorXd a;
    double min_eigenvalue = 0;
    Verdict verdict = Verdict::Undetermined;
    std::string rule;
    double reconstruction_error = -1;
    std::vector<std::string> transcript;
};

struct ScanReport {
    int samples = 0;
    int d = 0;
    uint64_t seed = 0;
    ToeplitzConvention convention = ToeplitzConvention::Weighted;
    int separable = 0;
    int entangled = 0;
    int undetermined = 0;
    std::vector<ScanRecord> records;
};

/// Random PSD Toeplitz samples, each classified. Sample i uses its own seed derived from (seed, i),
/// so records do not depend on evaluation order.
ScanReport toeplitz_scan(int samples, int d, uint64_t seed, ToeplitzConvention convention = ToeplitzConvention::Weighted);

}  // namespace cssep

#endif
