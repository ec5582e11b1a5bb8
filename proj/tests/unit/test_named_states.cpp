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

#include "cssep/named_states.hpp"
#include "cssep/product_search.hpp"
#include "oracles.hpp"

namespace cssep {
namespace {

TEST(Sigma, Structure) {
    DensityMatrix s = build_sigma().state;
    EXPECT_EQ(range_kernel(s).rank, 7);
    EXPECT_TRUE(is_cs(s).ok);
    EXPECT_TRUE(is_ppt(s));
}

TEST(Sigma, RejectsNonpositiveWeights) {
    EXPECT_THROW(build_sigma({1, 0, 0, 0, 0, 0, 0}), InputError);
}

TEST(Sigma, RandomWeightsKeepEightVectors) {
    oracle::Gen g(61);
    std::array<double, 7> w;
    for (auto &x : w) x = g.uniform(0.1, 1);
    auto r = symmetric_product_vectors(range_kernel(build_sigma(w).state).range, 2, 4);
    EXPECT_EQ(r.vectors.size(), 8u);
}

TEST(Sigma, GeneratorProjectorsIndependent) {
    auto xs = sigma_generators();
    MatrixXd cols(256, 8);
    for (int i = 0; i < 8; i++) {
        VectorXd p = oracle::kron_power(xs[i], 2);
        MatrixXd P = p * p.transpose();
        cols.col(i) = Eigen::Map<VectorXd>(P.data(), 256);
    }
    EXPECT_EQ(oracle::numeric_rank(cols.transpose() * cols), 8);
}

TEST(EntangledRankSix, Structure) {
    DensityMatrix r = build_entangled_rank6().state;
    EXPECT_EQ(range_kernel(r).rank, 6);
    EXPECT_TRUE(is_cs(r).ok);
    EXPECT_TRUE(is_ppt(r));
}

TEST(EntangledRankSix, LambdaAboveLimitRejected) {
    MatrixXd m = sigma_matrix({1. / 7, 1. / 7, 1. / 7, 1. / 7, 1. / 7, 1. / 7, 1. / 7});
    double lmax = max_subtraction(m);
    EXPECT_THROW(build_entangled_rank6({1. / 7, 1. / 7, 1. / 7, 1. / 7, 1. / 7, 1. / 7, 1. / 7}, lmax * 1.01), InputError);
    EXPECT_NO_THROW(build_entangled_rank6({1. / 7, 1. / 7, 1. / 7, 1. / 7, 1. / 7, 1. / 7, 1. / 7}, lmax * 0.5));
}

TEST(EntangledRankSix, ConditionedIsNonnegative) {
    DensityMatrix r = build_nonnegative_conditioned().state;
    EXPECT_GE(r.real().minCoeff(), -1e-14);
    EXPECT_EQ(range_kernel(r).rank, 6);
}

TEST(EdgeExtreme, EntangledRankSix) {
    EdgeExtreme e = check_edge_extreme(build_entangled_rank6().state);
    EXPECT_TRUE(e.edge);
    EXPECT_TRUE(e.extreme);
}

TEST(EdgeExtreme, BlokoviIsNotEdge) {
    EdgeExtreme e = check_edge_extreme(build_blokovi().rho);
    EXPECT_FALSE(e.edge);
    EXPECT_GT(e.product_vectors, 0);
}

TEST(EdgeExtreme, SeparableRankSixIsNotEdge) {
    oracle::Gen g(62);
    auto mix = oracle::random_symmetric_mixture(g, 2, 4, 6);
    EdgeExtreme e = check_edge_extreme(DensityMatrix::from_real(mix.rho, 2, 4));
    EXPECT_FALSE(e.edge);
}

TEST(Blokovi, Ranks) {
    Blokovi b = build_blokovi();
    EXPECT_EQ(range_kernel(b.alpha).rank, 4);
    EXPECT_EQ(range_kernel(b.rho).rank, 6);
    EXPECT_TRUE(is_ppt(b.rho));
    EXPECT_EQ(b.gamma.size(), 6u);
}

TEST(Blokovi, ZeroEpsIsAlpha) {
    Blokovi b = build_blokovi(1, 1, 1, 1, 0);
    EXPECT_EQ(range_kernel(b.rho).rank, 4);
    EXPECT_LT((b.rho.matrix() - b.alpha_embedded.matrix()).norm(), 1e-14);
}

TEST(Blokovi, ProductVectorInGammaSpan) {
    Blokovi b = build_blokovi(1, 1, 1, 1);
    MatrixXd G(16, 6);
    for (int i = 0; i < 6; i++) G.col(i) = b.gamma[i];
    VectorXd xy = Eigen::Map<const VectorXd>(MatrixXd(b.y * b.x.transpose()).data(), 16);
    Eigen::ColPivHouseholderQR<MatrixXd> qr(G);
    VectorXd fit = G * qr.solve(xy);
    EXPECT_LT((fit - xy).norm(), 1e-10);
}

TEST(HPerturbation, Spectrum) {
    VectorXd u = VectorXd::Zero(4), v = VectorXd::Zero(4);
    u << 0, 1, 1, 0;
    v << 1, 0, 0, -1;
    MatrixXd H = u * u.transpose() - v * v.transpose();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(H);
    EXPECT_NEAR(es.eigenvalues()[0], -2, 1e-12);
    EXPECT_NEAR(es.eigenvalues()[3], 2, 1e-12);
    // H^{T1} = H for this pair.
    MatrixXd pt(4, 4);
    for (int i = 0; i < 2; i++)
        for (int j = 0; j < 2; j++)
            for (int k = 0; k < 2; k++)
                for (int l = 0; l < 2; l++) pt(2 * i + k, 2 * j + l) = H(2 * j + k, 2 * i + l);
    EXPECT_LT((pt - H).norm(), 1e-14);
}

TEST(HPerturbation, WindowForFullRankTwoQubit) {
    MatrixXd m = MatrixXd::Identity(4, 4) / 4;
    m(1, 2) = m(2, 1) = 0.1;
    m(1, 1) = m(2, 2) = 0.3;
    m(0, 0) = m(3, 3) = 0.2;
    HPerturbation h = build_h_perturbation(DensityMatrix::from_real(m, 2, 2));
    EXPECT_LT(h.eps_lo, h.eps_hi);
}

TEST(NamedState, Lookup) {
    for (const auto &n : named_state_names()) EXPECT_EQ(named_state(n).name, n);
    EXPECT_THROW(named_state("nope"), InputError);
}

}  // namespace
}  // namespace cssep
