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

#ifndef CSSEP_STATE_HPP
#define CSSEP_STATE_HPP

#include <vector>

#include "cssep/common.hpp"

namespace cssep {

/// Hermitian operator on a tensor product of party spaces.
///
/// Party 0 is the most significant factor of the row index. The constructor checks shape and
/// Hermiticity; positivity is checked by `checked()` since peeling and perturbation code builds
/// intermediate matrices that may sit slightly outside the cone.
class DensityMatrix {
   public:
    DensityMatrix(MatrixXcd m, std::vector<int> dims);
    DensityMatrix(MatrixXcd m, int parties, int local_dim);
    static DensityMatrix from_real(const MatrixXd &m, int parties, int local_dim);

    /// Same as the constructor, plus a PSD check at tol * lambda_max.
    static DensityMatrix checked(MatrixXcd m, std::vector<int> dims, double tol = 1e-10);

    int parties() const {
        return static_cast<int>(dims_.size());
    }
    const std::vector<int> &dims() const {
        return dims_;
    }
    bool uniform() const;
    /// Local dimension; throws when parties have different dimensions.
    int local_dim() const;
    Eigen::Index size() const {
        return m_.rows();
    }

    const MatrixXcd &matrix() const {
        return m_;
    }
    MatrixXd real() const {
        return m_.real();
    }
    bool is_real(double tol = 1e-12) const;

    double trace() const {
        return m_.trace().real();
    }
    bool trace_one(double tol = 1e-12) const {
        return std::abs(trace() - 1) < tol;
    }
    DensityMatrix normalized() const;

    double min_eigenvalue() const;
    VectorXd eigenvalues() const;

   private:
    MatrixXcd m_;
    std::vector<int> dims_;
};

/// Orthonormal column basis of a subspace of C^ambient.
struct Subspace {
    Eigen::Index ambient = 0;
    MatrixXcd basis;
    double tol = 1e-10;

    Eigen::Index dim() const {
        return basis.cols();
    }
    /// Distance from v to the subspace (norm of the orthogonal component).
    double residual(const VectorXcd &v) const;
    /// Real orthonormal basis of the subspace when it is closed under conjugation. Throws otherwise.
    MatrixXd real_basis(double tol = 1e-9) const;
};

struct CsReport {
    bool ok;
    double max_violation;
};

/// Checks realness and invariance under the 2d-1 adjacent transpositions of the slot sequence
/// (i_1..i_d, j_1..j_d).
CsReport is_cs(const DensityMatrix &rho, double tol = 1e-9);

/// Traces out the listed parties (0-based).
DensityMatrix partial_trace(const DensityMatrix &rho, const std::vector<int> &traced);
/// Keeps only `party`.
DensityMatrix marginal(const DensityMatrix &rho, int party);

MatrixXcd partial_transpose(const DensityMatrix &rho, const std::vector<int> &parties);
/// Minimum eigenvalue of each single-party partial transpose.
std::vector<double> ppt_min_eigenvalues(const DensityMatrix &rho);
bool is_ppt(const DensityMatrix &rho, double tol = 1e-10);

/// A^{⊗d} rho (A^{⊗d})^T for a real invertible local operator A.
DensityMatrix apply_rilo(const DensityMatrix &rho, const MatrixXd &A);
/// Applies possibly non-square local maps, one shared map for every party.
DensityMatrix apply_local(const DensityMatrix &rho, const MatrixXd &A);

struct RangeKernel {
    Subspace range;
    Subspace kernel;
    int rank;
    VectorXd eigenvalues;  // ascending
};

/// Rank counts eigenvalues above tol * lambda_max.
RangeKernel range_kernel(const DensityMatrix &rho, double tol = 1e-10);

int local_rank(const DensityMatrix &rho, int party = 0, double tol = 1e-10);
bool is_supported(const DensityMatrix &rho, double tol = 1e-10);

/// Largest Frobenius distance between the single-party marginals and the first one.
double marginal_spread(const DensityMatrix &rho);

/// Reorders parties so that `A` comes first and groups them into a bipartite system.
DensityMatrix bipartition_view(const DensityMatrix &rho, const std::vector<int> &A);

/// Permutes tensor factors: output party k is input party perm[k].
DensityMatrix permute_parties(const DensityMatrix &rho, const std::vector<int> &perm);

}  // namespace cssep

#endif
