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

#include "cssep/reducibility.hpp"
#include "cssep/separability.hpp"
#include "cssep/tensor.hpp"
#include "oracles.hpp"

namespace cssep {
namespace {

MatrixXd power_projector(const VectorXd &x, int d) {
    VectorXd p = oracle::kron_power(x, d);
    return p * p.transpose();
}

double embedded_error(const DensityMatrix &rho, const std::vector<DirectSumComponent> &parts) {
    MatrixXcd sum = MatrixXcd::Zero(rho.size(), rho.size());
    for (const auto &p : parts) {
        sum += embed(p).matrix();
    }
    return (sum - rho.matrix()).norm();
}

TEST(FindReduction, OrthogonalSupports) {
    int d = 3;
    MatrixXd m = (power_projector(VectorXd::Unit(2, 0), d) + power_projector(VectorXd::Unit(2, 1), d)) / 2;
    Reduction r = find_reduction(DensityMatrix::from_real(m, d, 2));
    ASSERT_TRUE(r.reducible);
    EXPECT_EQ(r.blocks.size(), 2u);
    for (const auto &c : r.components) {
        EXPECT_EQ(range_kernel(c.component).rank, 1);
    }
}

TEST(FindReduction, PurePowerIsIrreducible) {
    VectorXd x(2);
    x << 1, 1;
    x.normalize();
    EXPECT_FALSE(find_reduction(DensityMatrix::from_real(power_projector(x, 3), 3, 2)).reducible);
}

TEST(FindReduction, DependentVectorInsideBlock) {
    // x_3 lies in span{x_0, x_1}; x_2 and x_4 stand alone.
    oracle::Gen g(11);
    int d = 3, N = 5;
    std::vector<VectorXd> xs(5, VectorXd::Zero(N));
    xs[0] << 1, 1, 0, 0, 0;
    xs[1] << 1, -2, 0, 0, 0;
    xs[2] = VectorXd::Unit(N, 2);
    xs[3] << 3, 1, 0, 0, 0;
    xs[4] << 0, 0, 0, 1, 2;
    MatrixXd m = MatrixXd::Zero(125, 125);
    for (auto &x : xs) {
        x.normalize();
        m += g.uniform(0.2, 1) * power_projector(x, d);
    }
    m /= m.trace();
    Reduction r = find_reduction(DensityMatrix::from_real(m, d, N));
    ASSERT_TRUE(r.reducible);
    EXPECT_EQ(r.blocks.size(), 3u);
    auto parts = decompose_direct_sum(DensityMatrix::from_real(m, d, N));
    EXPECT_EQ(parts.size(), 3u);
    EXPECT_LT(embedded_error(DensityMatrix::from_real(m, d, N), parts), 1e-10);
}

TEST(DecomposeDirectSum, DiagonalGivesPurePieces) {
    int d = 2, N = 3;
    MatrixXd m = MatrixXd::Zero(9, 9);
    for (int k = 0; k < N; k++) {
        m += (k + 1) * power_projector(VectorXd::Unit(N, k), d);
    }
    m /= m.trace();
    DensityMatrix rho = DensityMatrix::from_real(m, d, N);
    auto parts = decompose_direct_sum(rho);
    EXPECT_EQ(parts.size(), 3u);
    EXPECT_LT(embedded_error(rho, parts), 1e-10);
}

TEST(DecomposeDirectSum, RotatedBlocks) {
    oracle::Gen g(12);
    int d = 3, N = 4;
    MatrixXd Q = Eigen::HouseholderQR<MatrixXd>(g.invertible(N)).householderQ();
    MatrixXd m = MatrixXd::Zero(64, 64);
    for (int i = 0; i < 3; i++) {
        VectorXd a = VectorXd::Zero(N), b = VectorXd::Zero(N);
        a.head(2) = g.unit(2);
        b.tail(2) = g.unit(2);
        m += g.uniform(0.2, 1) * power_projector(Q * a, d) + g.uniform(0.2, 1) * power_projector(Q * b, d);
    }
    m /= m.trace();
    DensityMatrix rho = DensityMatrix::from_real(m, d, N);
    auto parts = decompose_direct_sum(rho);
    EXPECT_EQ(parts.size(), 2u);
    EXPECT_LT(embedded_error(rho, parts), 1e-10);
    for (const auto &p : parts) {
        EXPECT_TRUE(is_cs(p.component).ok);
        EXPECT_GE(p.component.min_eigenvalue(), -1e-12);
    }
}

TEST(DecomposeDirectSum, IrreducibleSingleton) {
    oracle::Gen g(13);
    auto mix = oracle::random_symmetric_mixture(g, 2, 3, 6);
    EXPECT_EQ(decompose_direct_sum(DensityMatrix::from_real(mix.rho, 2, 3)).size(), 1u);
}

TEST(FindReduction, RejectsNonCs) {
    EXPECT_THROW(find_reduction(DensityMatrix::from_real(MatrixXd::Identity(4, 4) / 4, 2, 2)), InputError);
}

TEST(FindReduction, MatchesReducedState) {
    oracle::Gen g(14);
    for (int trial = 0; trial < 20; trial++) {
        int d = 3, N = 3;
        bool split = trial % 2 == 0;
        MatrixXd m = MatrixXd::Zero(27, 27);
        for (int i = 0; i < 4; i++) {
            VectorXd x = g.unit(N);
            if (split) {
                if (i % 2) x[0] = 0; else x.tail(2).setZero();
                x.normalize();
            }
            m += g.uniform(0.2, 1) * power_projector(x, d);
        }
        m /= m.trace();
        DensityMatrix rho = DensityMatrix::from_real(m, d, N);
        EXPECT_EQ(find_reduction(rho).reducible, find_reduction(partial_trace(rho, {2})).reducible);
        EXPECT_EQ(find_reduction(rho).reducible, split);
    }
}

TEST(DirectSum, VerdictIsConjunction) {
    oracle::Gen g(15);
    int d = 2, N = 4;
    MatrixXd m = MatrixXd::Zero(16, 16);
    for (int i = 0; i < 3; i++) {
        VectorXd a = VectorXd::Zero(N), b = VectorXd::Zero(N);
        a.head(2) = g.unit(2);
        b.tail(2) = g.unit(2);
        m += power_projector(a, d) + power_projector(b, d);
    }
    m /= m.trace();
    Certificate c = classify(DensityMatrix::from_real(m, d, N));
    EXPECT_EQ(c.verdict, Verdict::Separable);
    EXPECT_NE(c.rule.find(rules::kDirectSum), std::string::npos);
}

}  // namespace
}  // namespace cssep
