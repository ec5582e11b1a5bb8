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

#ifndef CSSEP_SRC_RANDOM_HPP
#define CSSEP_SRC_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace cssep {

// std::mt19937_64 is fully specified by the standard, but the distributions are not. The two
// samplers below are written out so seeded runs agree across standard libraries.
class Rng {
   public:
    explicit Rng(uint64_t seed) : engine_(seed) {
    }

    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }
    double normal() {
        double u1 = 0;
        while (u1 <= 0) {
            u1 = uniform();
        }
        double u2 = uniform();
        return std::sqrt(-2 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);
    }
    Eigen::VectorXd normal_vector(Eigen::Index n) {
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; i++) {
            v[i] = normal();
        }
        return v;
    }
    Eigen::VectorXd unit_vector(Eigen::Index n) {
        Eigen::VectorXd v = normal_vector(n);
        return v / v.norm();
    }
    Eigen::MatrixXd orthogonal(Eigen::Index n) {
        Eigen::MatrixXd g(n, n);
        for (Eigen::Index i = 0; i < n; i++) {
            g.col(i) = normal_vector(n);
        }
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
        Eigen::MatrixXd q = qr.householderQ();
        return q;
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace cssep

#endif
