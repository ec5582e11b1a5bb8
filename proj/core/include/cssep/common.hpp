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

#ifndef CSSEP_COMMON_HPP
#define CSSEP_COMMON_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cssep {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Bad arguments: wrong shapes, out-of-range indices, violated preconditions.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not reach its contract (ill conditioning, no convergence).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Largest dense Hilbert-space dimension N^d the library will materialize.
inline constexpr std::size_t kMaxDenseDim = 4096;

/// Shared numerical tolerances. All are relative to the relevant scale (largest eigenvalue or norm).
struct Tolerances {
    double rank = 1e-10;
    double psd = 1e-10;
    double cs = 1e-9;
};

/// Integer power with overflow guard at `limit`; returns limit + 1 on overflow.
std::size_t checked_pow(std::size_t base, int exp, std::size_t limit = SIZE_MAX / 2);

double binomial(int n, int k);

}  // namespace cssep

#endif
