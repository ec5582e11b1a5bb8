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

#include "cssep/io.hpp"
#include "oracles.hpp"

namespace cssep {
namespace {

TEST(StateJson, DenseRoundTripIsFixedPoint) {
    oracle::Gen g(71);
    auto mix = oracle::random_symmetric_mixture(g, 2, 3, 3);
    json a = state_to_json(DensityMatrix::from_real(mix.rho, 2, 3));
    json b = state_to_json(parse_state(a));
    EXPECT_EQ(a.dump(), b.dump());
}

TEST(StateJson, CompressedRoundTrip) {
    oracle::Gen g(72);
    auto mix = oracle::random_symmetric_mixture(g, 3, 2, 3);
    DensityMatrix rho = DensityMatrix::from_real(mix.rho, 3, 2);
    json c = state_to_json(rho, StateFormat::CsCompressed);
    EXPECT_FALSE(c.contains("dense"));
    DensityMatrix back = parse_state(c);
    EXPECT_LT((back.matrix() - rho.matrix()).norm(), 1e-15);
    EXPECT_EQ(state_to_json(back, StateFormat::CsCompressed).dump(), c.dump());
}

TEST(StateJson, CompressedNeedsCs) {
    EXPECT_THROW(state_to_json(DensityMatrix::from_real(MatrixXd::Identity(4, 4) / 4, 2, 2), StateFormat::CsCompressed), InputError);
}

TEST(StateJson, MalformedInputs) {
    EXPECT_THROW(parse_state_text("{not json"), InputError);
    EXPECT_THROW(parse_state_text("[1, 2]"), InputError);
    EXPECT_THROW(parse_state_text(R"({"parties": 2, "dim": 2, "format": "dense", "dense": [[1]]})"), InputError);
    EXPECT_THROW(parse_state_text(R"({"parties": 2, "dim": 2, "format": "other"})"), InputError);
    EXPECT_THROW(parse_state_text(R"({"parties": 2, "dim": 2, "format": "cs-compressed", "csEntries": [{"index": [0], "value": 1}]})"),
                 InputError);
}

TEST(StateJson, DimensionOverflow) {
    try {
        parse_state_text(R"({"parties": 7, "dim": 4, "format": "cs-compressed", "csEntries": []})");
        FAIL();
    } catch (const InputError &e) {
        EXPECT_NE(std::string(e.what()).find("4096"), std::string::npos);
    }
}

TEST(CertificateJson, Fields) {
    Certificate c;
    c.verdict = Verdict::Entangled;
    c.rule = rules::kRank6Empty;
    json j = certificate_to_json(c);
    EXPECT_EQ(j["verdict"], "Entangled");
    EXPECT_TRUE(j["terms"].is_null());
}

TEST(VandermondeJson, InfinityNode) {
    VandermondeTerm t;
    t.weight = 1;
    t.infinite = true;
    EXPECT_EQ(vandermonde_to_json({t})[0]["node"], "Infinity");
}

}  // namespace
}  // namespace cssep
