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

#ifndef CSSEP_REDUCIBILITY_HPP
#define CSSEP_REDUCIBILITY_HPP

#include <string>
#include <vector>

#include "cssep/state.hpp"

namespace cssep {

/// One direct-sum piece: rho contains embedding^{⊗d} component (embedding^{⊗d})^T.
struct DirectSumComponent {
    MatrixXd embedding;  // N x n_k, columns span the local range of the piece
    DensityMatrix component;
};

struct Reduction {
    bool reducible = false;
    /// Local basis change; columns grouped by block.
    MatrixXd basis;
    /// Partition of the columns of `basis`.
    std::vector<std::vector<int>> blocks;
    std::vector<DirectSumComponent> components;
    double reconstruction_error = 0;
    std::vector<std::string> transcript;
};

/// Splits a CS state into a real direct sum when its local ranges allow it.
///
/// The state is restricted to its local support, then the commutant-type algebra
/// {X : (X ⊗ 1) v = (1 ⊗ X) v for every v in range} is computed on the first two parties. A CS
/// state is reducible exactly when this algebra contains a non-scalar element; the generalized
/// eigenspaces of a random element give the blocks, which are then verified entrywise.
Reduction find_reduction(const DensityMatrix &rho, double tol = 1e-10);

/// Applies find_reduction until every piece is irreducible. A single irreducible state comes back
/// as a one-element list with the support embedding.
std::vector<DirectSumComponent> decompose_direct_sum(const DensityMatrix &rho, double tol = 1e-10);

/// embedding^{⊗d} component (embedding^{⊗d})^T.
DensityMatrix embed(const DirectSumComponent &c);

}  // namespace cssep

#endif
