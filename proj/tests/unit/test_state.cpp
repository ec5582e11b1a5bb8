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

#include <gtest/gtest.h>

#include "cssep/state.hpp"
#include "cssep/tensor.hpp"
#include "oracles.hpp"

namespace cssep {
namespace {

DensityMatrix pure(const VectorXd &v, int d, int N) {
    return DensityMatrix::from_real(v * v.transpose(), d, N);
}

TEST(IsCs, SymmetricMixtureIsCs) {
    oracle::Gen g(1);
    auto mix = oracle::random_symmetric_mixture(g, 3, 2, 3);
    EXPECT_TRUE(is_cs(DensityMatrix::from_real(mix.rho, 3, 2)).ok);
}

TEST(IsCs, MaximallyMixedIsNot) {
    EXPECT_FALSE(is_cs(DensityMatrix::from_real(MatrixXd::Identity(4, 4) / 4, 2, 2)).ok);
}

TEST(PartialTrace, BellMarginalIsMixed) {
    VectorXd bell(4);
    bell << 1, 0, 0, 1;
    bell /= std::sqrt(2.0);
    DensityMatrix m = partial_trace(pure(bell, 2, 2), {1});
    EXPECT_LT((m.real() - MatrixXd::Identity(2, 2) / 2).norm(), 1e-15);
}

TEST(PartialTrace, KeepsCs) {
    oracle::Gen g(2);
    auto mix = oracle::random_symmetric_mixture(g, 4, 2, 3);
    DensityMatrix r = partial_trace(DensityMatrix::from_real(mix.rho, 4, 2), {0, 2});
    EXPECT_EQ(r.parties(), 2);
    EXPECT_TRUE(is_cs(r).ok);
    EXPECT_NEAR(r.trace(), 1.0, 1e-12);
}

TEST(PartialTranspose, BellIsNpt) {
    VectorXd bell(4);
    bell << 1, 0, 0, 1;
    bell /= std::sqrt(2.0);
    auto mins = ppt_min_eigenvalues(pure(bell, 2, 2));
    ASSERT_FALSE(mins.empty());
    EXPECT_NEAR(mins[0], -0.5, 1e-12);
    EXPECT_FALSE(is_ppt(pure(bell, 2, 2)));
}

TEST(PartialTranspose, ProductMixtureIsPpt) {
    oracle::Gen g(3);
    auto mix = oracle::random_symmetric_mixture(g, 3, 3, 5);
    EXPECT_TRUE(is_ppt(DensityMatrix::from_real(mix.rho, 3, 3)));
}

TEST(ApplyRilo, ScalesProductPower) {
    int d = 3;
    VectorXd e0 = VectorXd::Zero(2);
    e0[0] = 1;
    MatrixXd A(2, 2);
    A << 2, 0, 0, 1;
    DensityMatrix out = apply_rilo(pure(tensor_power(e0, d), d, 2), A);
    EXPECT_NEAR(out.trace(), std::pow(4.0, d), 1e-12);
}

TEST(ApplyRilo, PreservesCs) {
    oracle::Gen g(4);
    auto mix = oracle::random_symmetric_mixture(g, 2, 3, 3);
    DensityMatrix out = apply_rilo(DensityMatrix::from_real(mix.rho, 2, 3), g.invertible(3));
    EXPECT_TRUE(is_cs(out, 1e-9).ok);
}

TEST(Support, FullAndDeficientLocalRank) {
    VectorXd x(3);
    x << 1, 1, 0;
    x.normalize();
    DensityMatrix rho = pure(tensor_power(x, 2), 2, 3);
    EXPECT_EQ(local_rank(rho), 1);
    EXPECT_FALSE(is_supported(rho));
    oracle::Gen g(5);
    auto mix = oracle::random_symmetric_mixture(g, 2, 3, 4);
    EXPECT_TRUE(is_supported(DensityMatrix::from_real(mix.rho, 2, 3)));
}

TEST(RangeKernel, RankOfMixture) {
    oracle::Gen g(6);
    auto mix = oracle::random_symmetric_mixture(g, 2, 4, 5);
    RangeKernel rk = range_kernel(DensityMatrix::from_real(mix.rho, 2, 4));
    EXPECT_EQ(rk.rank, 5);
    EXPECT_EQ(rk.kernel.dim(), 11);
    for (const auto &x : mix.xs) {
        EXPECT_LT(rk.range.residual(oracle::kron_power(x, 2).cast<cplx>()), 1e-9);
    }
}

TEST(BipartitionView, DimensionsOfCut) {
    oracle::Gen g(7);
    auto mix = oracle::random_symmetric_mixture(g, 3, 2, 2);
    DensityMatrix v = bipartition_view(DensityMatrix::from_real(mix.rho, 3, 2), {0});
    EXPECT_EQ(v.dims(), (std::vector<int>{2, 4}));
}

TEST(PermuteParties, SymmetricStateInvariant) {
    oracle::Gen g(8);
    auto mix = oracle::random_symmetric_mixture(g, 3, 2, 3);
    DensityMatrix rho = DensityMatrix::from_real(mix.rho, 3, 2);
    EXPECT_LT((permute_parties(rho, {2, 0, 1}).real() - mix.rho).norm(), 1e-13);
}

TEST(DensityMatrix, RejectsBadShape) {
    EXPECT_THROW(DensityMatrix(MatrixXcd::Identity(5, 5), 2, 2), InputError);
}

}  // namespace
}  // namespace cssep
