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

#include "cssep/gme.hpp"
#include "cssep/tensor.hpp"
#include "oracles.hpp"

namespace cssep {
namespace {

DensityMatrix pure(const VectorXd &v, int d, int N) {
    return DensityMatrix::from_real(v * v.transpose(), d, N);
}

TEST(GmePowerIteration, ProductState) {
    GmeResult r = gme_power_iteration(pure(VectorXd::Unit(4, 0), 2, 2));
    EXPECT_NEAR(r.mu, 1, 1e-12);
    EXPECT_NEAR(r.gme, 0, 1e-12);
    EXPECT_NEAR(std::abs(r.a[0]), 1, 1e-9);
}

TEST(GmePowerIteration, DickeState) {
    GmeResult r = gme_power_iteration(pure(dicke(2, 1), 2, 2));
    EXPECT_NEAR(r.mu, 0.5, 1e-10);
    EXPECT_NEAR(r.gme, 1, 1e-9);
    EXPECT_NEAR(r.a[0], r.a[1], 1e-6);
}

TEST(GmePowerIteration, MuIsTheObjective) {
    oracle::Gen g(51);
    auto mix = oracle::random_symmetric_mixture(g, 3, 3, 4, true);
    GmeResult r = gme_power_iteration(DensityMatrix::from_real(mix.rho, 3, 3));
    VectorXd p = oracle::kron_power(r.a, 3);
    EXPECT_NEAR(p.dot(mix.rho * p), r.mu, 1e-12);
    EXPECT_LT(r.worst_decrease, 1e-12);
}

TEST(GmePowerIteration, AgreesWithGrid) {
    oracle::Gen g(52);
    for (int trial = 0; trial < 4; trial++) {
        int N = 2 + trial % 3;
        auto mix = oracle::random_symmetric_mixture(g, 2, N, 3, true);
        GmeResult r = gme_power_iteration(DensityMatrix::from_real(mix.rho, 2, N));
        EXPECT_NEAR(r.mu, oracle::grid_gme_mu(mix.rho, N, 10000, 100 + trial), 1e-5);
    }
}

TEST(GmePowerIteration, RejectsNegativeEntries) {
    VectorXd v(4);
    v << 1, 0, 0, -1;
    v /= std::sqrt(2.0);
    EXPECT_THROW(gme_power_iteration(pure(v, 2, 2)), InputError);
}

TEST(GmeClosedForm, ConditionedMatchesPowerIteration) {
    RankSixCoefficients c = solve_conditioned(1, 1, 0.001);
    ClosedFormGme cf = gme_closed_form(c);
    DensityMatrix rho = DensityMatrix::from_real(rank_six_matrix(c), 2, 4);
    GmeResult r = gme_power_iteration(rho);
    EXPECT_NEAR(cf.mu, r.mu, 1e-6);
    EXPECT_TRUE(verify_kkt(rho.normalized(), VectorXd::Constant(4, 0.5), cf.mu));
}

TEST(GmeClosedForm, StationaryPointIsNotAlwaysTheMaximum) {
    // With l_5 = l_4 / 100 the KKT point (1,1,1,1)/2 is beaten by a vector near |0>.
    RankSixCoefficients c = solve_conditioned(1, 1, 0.01);
    ClosedFormGme cf = gme_closed_form(c);
    MatrixXd m = rank_six_matrix(c);
    DensityMatrix rho = DensityMatrix::from_real(m, 2, 4);
    EXPECT_TRUE(verify_kkt(rho.normalized(), VectorXd::Constant(4, 0.5), cf.mu));
    double grid = oracle::grid_gme_mu(m / m.trace(), 4, 10000, 3);
    EXPECT_GT(grid, cf.mu + 0.05);
    EXPECT_NEAR(gme_power_iteration(rho).mu, grid, 1e-6);
}

TEST(GmeClosedForm, NoSubtraction) {
    double c = 0.7;
    ClosedFormGme cf = gme_closed_form(conditioned_coefficients(c, c, 0, 0));
    EXPECT_NEAR(cf.mu_raw, c / 4 + 16 * c, 1e-12);
}

TEST(GmeClosedForm, RejectsZeroAndViolations) {
    EXPECT_THROW(gme_closed_form(RankSixCoefficients{}), InputError);
    RankSixCoefficients c = conditioned_coefficients(1, 1, 0.01, 0);
    c.l[1] += 1;
    try {
        gme_closed_form(c);
        FAIL();
    } catch (const InputError &e) {
        EXPECT_NE(std::string(e.what()).find("l1"), std::string::npos);
    }
}

TEST(VerifyKkt, Examples) {
    EXPECT_TRUE(verify_kkt(pure(VectorXd::Unit(4, 0), 2, 2), VectorXd::Unit(2, 0), 1));
    EXPECT_TRUE(verify_kkt(pure(dicke(2, 1), 2, 2), VectorXd::Unit(2, 0), 0));
}

TEST(DoubledState, TwoCopyAdditivity) {
    oracle::Gen g(53);
    auto mix = oracle::random_symmetric_mixture(g, 2, 2, 3, true);
    DensityMatrix rho = DensityMatrix::from_real(mix.rho, 2, 2);
    GmeResult one = gme_power_iteration(rho);
    GmeResult two = gme_power_iteration(doubled_state(rho));
    EXPECT_NEAR(two.gme, 2 * one.gme, 1e-5);
}

}  // namespace
}  // namespace cssep
