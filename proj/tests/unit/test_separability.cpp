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
#include "cssep/separability.hpp"
#include "oracles.hpp"

namespace cssep {
namespace {

MatrixXd power_projector(const VectorXd &x, int d) {
    VectorXd p = oracle::kron_power(x, d);
    return p * p.transpose();
}

void expect_reconstructs(const DensityMatrix &rho, const Certificate &c) {
    ASSERT_TRUE(c.has_decomposition) << c.rule;
    EXPECT_LT(reconstruction_error(rho, c.decomposition), 1e-8);
    for (const auto &t : c.decomposition) EXPECT_GT(t.weight, 0);
}

TEST(Peel, PurePower) {
    int d = 3;
    VectorXd e0 = VectorXd::Unit(2, 0);
    PeelResult r = peel(DensityMatrix::from_real(power_projector(e0, d), d, 2), ProductVector::from_real(e0, d));
    EXPECT_NEAR(r.lambda, 1, 1e-12);
    EXPECT_LT(r.residual.matrix().norm(), 1e-12);
}

TEST(Peel, OrthogonalPair) {
    int d = 2;
    MatrixXd p0 = power_projector(VectorXd::Unit(2, 0), d), p1 = power_projector(VectorXd::Unit(2, 1), d);
    PeelResult r = peel(DensityMatrix::from_real((p0 + p1) / 2, d, 2), ProductVector::from_real(VectorXd::Unit(2, 0), d));
    EXPECT_NEAR(r.lambda, 0.5, 1e-12);
    EXPECT_LT((r.residual.real() - p1 / 2).norm(), 1e-12);
}

TEST(Peel, SigmaAlongX7) {
    DensityMatrix sigma = build_sigma().state;
    VectorXd x7 = sigma_generators()[7];
    VectorXd phi = oracle::kron_power(x7, 2);
    Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(sigma.real());
    double lambda = 1 / phi.dot(cod.pseudoInverse() * phi);
    PeelResult r = peel(sigma, ProductVector::from_real(x7 / x7.norm(), 2));
    EXPECT_NEAR(r.lambda, lambda * phi.squaredNorm(), 1e-8 * lambda * phi.squaredNorm());
    EXPECT_EQ(r.rank_before, 7);
    EXPECT_EQ(r.rank_after, 6);
    EXPECT_TRUE(is_cs(r.residual).ok);
}

TEST(SDecompose, PureState) {
    oracle::Gen g(31);
    VectorXd x = g.unit(3);
    DensityMatrix rho = DensityMatrix::from_real(power_projector(x, 3), 3, 3);
    Certificate c = s_decompose(rho);
    EXPECT_EQ(c.verdict, Verdict::Separable);
    expect_reconstructs(rho, c);
    EXPECT_EQ(c.decomposition.size(), 1u);
}

TEST(SDecompose, FiveTermMixture) {
    oracle::Gen g(32);
    auto mix = oracle::random_symmetric_mixture(g, 2, 4, 5);
    DensityMatrix rho = DensityMatrix::from_real(mix.rho, 2, 4);
    Certificate c = s_decompose(rho);
    EXPECT_EQ(c.verdict, Verdict::Separable);
    expect_reconstructs(rho, c);
}

TEST(SDecompose, EntangledRankSix) {
    EXPECT_EQ(s_decompose(build_entangled_rank6().state).verdict, Verdict::Entangled);
}

TEST(Classify, ThreeQubits) {
    oracle::Gen g(33);
    auto mix = oracle::random_symmetric_mixture(g, 3, 2, 3);
    DensityMatrix rho = DensityMatrix::from_real(mix.rho, 3, 2);
    Certificate c = classify(rho);
    EXPECT_EQ(c.verdict, Verdict::Separable);
    EXPECT_EQ(c.rule.rfind(rules::kMultiQubit, 0), 0u) << c.rule;
    expect_reconstructs(rho, c);
}

TEST(Classify, EntangledRankSix) {
    Certificate c = classify(build_entangled_rank6().state);
    EXPECT_EQ(c.verdict, Verdict::Entangled);
    EXPECT_EQ(c.rule, rules::kRank6Empty);
    EXPECT_FALSE(c.transcript.empty());
}

TEST(Classify, RankFiveFourByFour) {
    oracle::Gen g(34);
    auto mix = oracle::random_symmetric_mixture(g, 2, 4, 5);
    DensityMatrix rho = DensityMatrix::from_real(mix.rho, 2, 4);
    Certificate c = classify(rho);
    EXPECT_EQ(c.verdict, Verdict::Separable);
    EXPECT_EQ(c.rule.rfind(rules::kRankAtMost5, 0), 0u) << c.rule;
    expect_reconstructs(rho, c);
}

TEST(Classify, SigmaSeparable) {
    DensityMatrix rho = build_sigma().state;
    Certificate c = classify(rho);
    EXPECT_EQ(c.verdict, Verdict::Separable);
    expect_reconstructs(rho, c);
}

TEST(Classify, RankEqualsN) {
    oracle::Gen g(35);
    auto mix = oracle::random_symmetric_mixture(g, 3, 3, 3);
    DensityMatrix rho = DensityMatrix::from_real(mix.rho, 3, 3);
    Certificate c = classify(rho);
    EXPECT_EQ(c.verdict, Verdict::Separable);
    expect_reconstructs(rho, c);
}

TEST(Classify, RejectsNonCs) {
    EXPECT_THROW(classify(DensityMatrix::from_real(MatrixXd::Identity(4, 4) / 4, 2, 2)), InputError);
}

TEST(BisepCheck, SeparableCuts) {
    oracle::Gen g(36);
    for (int d : {3, 4}) {
        auto mix = oracle::random_symmetric_mixture(g, d, 2, 2);
        DensityMatrix rho = DensityMatrix::from_real(mix.rho, d, 2);
        Certificate c = classify(rho);
        std::vector<int> A = d == 4 ? std::vector<int>{0, 1} : std::vector<int>{0};
        BisepDiagnostic diag = bisep_equals_fullsep_check(rho, c, A);
        EXPECT_TRUE(diag.checked);
        EXPECT_TRUE(diag.all_product);
    }
}

TEST(BisepCheck, SkippedForEntangled) {
    DensityMatrix rho = build_entangled_rank6().state;
    EXPECT_FALSE(bisep_equals_fullsep_check(rho, classify(rho), {0}).checked);
}

}  // namespace
}  // namespace cssep
