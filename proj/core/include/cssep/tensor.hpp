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

#ifndef CSSEP_TENSOR_HPP
#define CSSEP_TENSOR_HPP

#include <map>
#include <span>
#include <vector>

#include "cssep/common.hpp"

namespace cssep {

/// An ordered tuple of local indices, each in [0, dim).
struct MultiIndex {
    std::vector<int> slots;
    int dim = 0;

    size_t length() const {
        return slots.size();
    }
    bool operator==(const MultiIndex &other) const = default;
};

/// Sorts the slots into nondecreasing order. Throws InputError on out-of-range slots.
MultiIndex canonical_index(const MultiIndex &idx);

/// Flattens slots into a row-major offset. Slot 0 is the most significant digit.
size_t flat_index(std::span<const int> slots, int dim);
std::vector<int> unflatten(size_t offset, int dim, int length);

/// Compressed real tensor of even order 2d over local dimension N with full permutation symmetry.
///
/// Entries are keyed by the sorted multi-index, so reading any permutation of an index returns the
/// same value. Unset entries are zero.
class SymTensor {
   public:
    SymTensor(int order, int dim);

    int order() const {
        return order_;
    }
    int dim() const {
        return dim_;
    }
    int parties() const {
        return order_ / 2;
    }

    double get(std::span<const int> idx) const;
    void set(std::span<const int> idx, double value);

    const std::map<std::vector<int>, double> &entries() const {
        return entries_;
    }

    /// Dense N^d x N^d matrix; row index is the first d slots.
    MatrixXd to_dense() const;

    /// Reads every multiset from a representative entry of a dense CS matrix. No symmetry check.
    static SymTensor from_dense(const MatrixXd &m, int parties, int dim, double drop_below = 0);

   private:
    std::vector<int> key(std::span<const int> idx) const;

    int order_;
    int dim_;
    std::map<std::vector<int>, double> entries_;
};

/// Normalized Dicke vector: uniform superposition over bitstrings with k zeros and d-k ones.
VectorXd dicke(int d, int k);

/// (1/d!) sum over party permutations.
VectorXcd project_symmetric(const VectorXcd &v, int d, int N);
VectorXd project_symmetric(const VectorXd &v, int d, int N);

/// (1/d) sum over cyclic party shifts.
VectorXcd project_periodic(const VectorXcd &v, int d, int N);

/// Cyclic shift of the party order by one position: slot k moves to slot k+1 (mod d).
VectorXcd cyclic_shift(const VectorXcd &v, int d, int N);

/// x ⊗ x ⊗ ... ⊗ x (d factors).
VectorXd tensor_power(const VectorXd &x, int d);
VectorXcd tensor_power(const VectorXcd &x, int d);

/// Orthonormal basis of the symmetric subspace Sym^d(R^N), one vector per multiset of size d.
///
/// Coordinates in this basis are called sym coordinates. For a vector x the sym coordinates of
/// x^{⊗d} are sqrt(multinomial(alpha)) * x^alpha.
class SymBasis {
   public:
    SymBasis(int d, int N);

    int parties() const {
        return d_;
    }
    int local_dim() const {
        return N_;
    }
    int size() const {
        return static_cast<int>(multisets_.size());
    }

    /// Multiset of local indices for each basis vector, sorted.
    const std::vector<std::vector<int>> &multisets() const {
        return multisets_;
    }
    /// Exponent vector (length N) for each basis vector.
    const std::vector<std::vector<int>> &exponents() const {
        return exponents_;
    }
    /// sqrt of the multinomial coefficient, i.e. sqrt of the orbit size.
    const std::vector<double> &weights() const {
        return weights_;
    }

    /// N^d x size() isometry whose columns are the basis vectors.
    MatrixXd embedding() const;

    VectorXd power_coords(const VectorXd &x) const;
    /// Jacobian of power_coords at x, size() x N.
    MatrixXd power_jacobian(const VectorXd &x) const;

    int index_of(std::vector<int> multiset) const;

   private:
    int d_;
    int N_;
    std::vector<std::vector<int>> multisets_;
    std::vector<std::vector<int>> exponents_;
    std::vector<double> weights_;
    std::map<std::vector<int>, int> lookup_;
};

}  // namespace cssep

#endif
