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

#include "cssep/gme.hpp"

#include <cmath>

#include "cssep/tensor.hpp"
#include "random.hpp"

namespace cssep {

namespace {

double objective(const MatrixXd &m, const VectorXd &a, int d) {
    VectorXd p = tensor_power(a, d);
    return p.dot(m * p);
}

VectorXd contract(const MatrixXd &m, const VectorXd &a, int d) {
    Eigen::Index N = a.size();
    VectorXd w = m * tensor_power(a, d);
    if (d == 1) {
        return w;
    }
    VectorXd rest = tensor_power(a, d - 1);
    // Row-major flattening: party 0 is the most significant digit.
    Eigen::Map<const MatrixXd> W(w.data(), rest.size(), N);
    return W.transpose() * rest;
}

MatrixXd checked_nonnegative(const DensityMatrix &rho) {
    if (!rho.uniform()) {
        throw InputError("GME needs equal local dimensions");
    }
    if (!rho.is_real(1e-12 * std::max(1.0, rho.matrix().cwiseAbs().maxCoeff()))) {
        throw InputError("GME power iteration needs a real state");
    }
    MatrixXd m = rho.real();
    double scale = m.cwiseAbs().maxCoeff();
    if (m.minCoeff() < -1e-12 * scale) {
        throw InputError("GME power iteration needs an entrywise nonnegative state");
    }
    m = m.cwiseMax(0.0);
    int d = rho.parties();
    for (int k = 0; k + 1 < d; k++) {
        std::vector<int> perm(d);
        for (int i = 0; i < d; i++) {
            perm[i] = i;
        }
        std::swap(perm[k], perm[k + 1]);
        if ((permute_parties(rho, perm).real() - rho.real()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
            throw InputError("GME power iteration needs a party-permutation invariant state");
        }
    }
    return m;
}

}  // namespace

VectorXd gme_contraction(const DensityMatrix &rho, const VectorXd &a) {
    return contract(rho.real(), a, rho.parties());
}

GmeResult gme_power_iteration(const DensityMatrix &rho, const GmeOptions &opts) {
    MatrixXd m = checked_nonnegative(rho);
    double tr = m.trace();
    if (!(tr > 0)) {
        throw InputError("GME of the zero state is undefined");
    }
    m /= tr;
    int d = rho.parties();
    int N = rho.local_dim();
    Rng rng(opts.seed);
    GmeResult best;
    best.mu = -1;
    // Uniform start, one start near each basis vector, then random nonnegative starts.
    int total = std::max(1, opts.starts) + N;
    for (int s = 0; s < total; s++) {
        VectorXd a;
        if (s == 0) {
            a = VectorXd::Ones(N);
        } else if (s <= N) {
            a = VectorXd::Constant(N, 0.05);
            a[s - 1] = 1;
        } else {
            a = rng.normal_vector(N).cwiseAbs();
        }
        a /= a.norm();
        double f = objective(m, a, d);
        double shift = 0;
        GmeResult r;
        for (r.iterations = 0; r.iterations < opts.max_iter; r.iterations++) {
            VectorXd step = contract(m, a, d) + shift * a;
            double nrm = step.norm();
            if (!(nrm > 0)) {
                break;
            }
            VectorXd next = step / nrm;
            double fn = objective(m, next, d);
            if (fn < f - 1e-15 * std::max(1.0, std::abs(f))) {
                // Larger shifts make the step a smaller move along the gradient.
                shift = shift == 0 ? 1.0 : 2 * shift;
                if (shift > 1e12) {
                    break;
                }
                continue;
            }
            r.worst_decrease = std::max(r.worst_decrease, f - fn);
            double delta = (next - a).norm();
            a = next;
            f = fn;
            if (delta < opts.tol) {
                r.converged = true;
                break;
            }
        }
        r.a = a;
        r.mu = f;
        if (r.mu > best.mu) {
            best = r;
        }
    }
    best.kkt_residual = (contract(m, best.a, d) - best.mu * best.a).norm();
    best.gme = -std::log2(best.mu);
    return best;
}

ClosedFormGme gme_closed_form(const RankSixCoefficients &c) {
    const auto &l = c.l;
    double scale = 0;
    for (double v : l) {
        scale = std::max(scale, std::abs(v));
    }
    if (scale == 0) {
        throw InputError("zero state: every coefficient vanishes");
    }
    auto require = [&](double lhs, double rhs, const char *name) {
        if (std::abs(lhs - rhs) > 1e-12 * std::max(1.0, scale)) {
            throw InputError(std::string("coefficients violate ") + name);
        }
    };
    require(l[0], l[3] + 3040 * l[5] - 11000.0 / 81 * l[7], "l0 = l3 + 3040 l5 - (11000/81) l7");
    require(l[1], l[3] + 2016 * l[5], "l1 = l3 + 2016 l5");
    require(l[2], l[3] + 1056 * l[5] - 11000.0 / 81 * l[7], "l2 = l3 + 1056 l5 - (11000/81) l7");
    require(l[6], l[5], "l6 = l5");
    for (int i = 0; i < 8; i++) {
        if (l[i] < 0) {
            throw InputError("coefficient l" + std::to_string(i) + " is negative");
        }
    }
    MatrixXd m = rank_six_matrix(c);
    double top = m.cwiseAbs().maxCoeff();
    if (m.minCoeff() < -1e-12 * top) {
        throw InputError("state is not entrywise nonnegative");
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10 * es.eigenvalues().cwiseAbs().maxCoeff()) {
        throw InputError("state is not positive semidefinite");
    }
    ClosedFormGme out;
    out.mu_raw = l[0] / 4 + 16 * l[4] + 248 * l[5] + 250.0 / 27 * l[7];
    out.trace = m.trace();
    if (!(out.trace > 0)) {
        throw InputError("zero state");
    }
    out.mu = out.mu_raw / out.trace;
    out.gme = -std::log2(out.mu);
    return out;
}

bool verify_kkt(const DensityMatrix &rho, const VectorXd &a, double mu, double tol) {
    if (a.size() != rho.local_dim() || std::abs(a.norm() - 1) > 1e-9) {
        throw InputError("KKT check needs a unit vector of the local dimension");
    }
    if (a.minCoeff() < -1e-12) {
        return false;
    }
    return (contract(rho.real(), a, rho.parties()) - mu * a).norm() < tol;
}

DensityMatrix doubled_state(const DensityMatrix &rho) {
    if (!rho.uniform()) {
        throw InputError("doubled state needs equal local dimensions");
    }
    int d = rho.parties();
    int N = rho.local_dim();
    if (checked_pow(N, 2 * d, kMaxDenseDim) > kMaxDenseDim) {
        throw InputError("doubled state exceeds the dense size limit");
    }
    const MatrixXcd &m = rho.matrix();
    Eigen::Index n = m.rows();
    MatrixXcd k(n * n, n * n);
    for (Eigen::Index i = 0; i < n; i++) {
        for (Eigen::Index j = 0; j < n; j++) {
            k.block(i * n, j * n, n, n) = m(i, j) * m;
        }
    }
    std::vector<int> perm(2 * d);
    for (int p = 0; p < d; p++) {
        perm[2 * p] = p;
        perm[2 * p + 1] = d + p;
    }
    DensityMatrix joined = permute_parties(DensityMatrix(k, std::vector<int>(2 * d, N)), perm);
    return DensityMatrix(joined.matrix(), std::vector<int>(d, N * N));
}

}  // namespace cssep
