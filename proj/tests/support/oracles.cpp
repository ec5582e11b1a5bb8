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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

VectorXd Gen::unit(int n) {
    VectorXd v(n);
    for (int i = 0; i < n; i++) {
        v[i] = normal();
    }
    return v / v.norm();
}

VectorXd Gen::nonnegative_unit(int n) {
    return unit(n).cwiseAbs();
}

MatrixXd Gen::invertible(int n) {
    MatrixXd a(n, n);
    for (;;) {
        for (int i = 0; i < n; i++) {
            for (int j = 0; j < n; j++) {
                a(i, j) = normal();
            }
        }
        Eigen::JacobiSVD<MatrixXd> svd(a);
        if (svd.singularValues()[0] / svd.singularValues()[n - 1] < 50) {
            return a;
        }
    }
}

VectorXd kron_power(const VectorXd &x, int d) {
    VectorXd out = VectorXd::Ones(1);
    for (int k = 0; k < d; k++) {
        VectorXd next(out.size() * x.size());
        for (Eigen::Index i = 0; i < out.size(); i++) {
            next.segment(i * x.size(), x.size()) = out[i] * x;
        }
        out = next;
    }
    return out;
}

Mixture random_symmetric_mixture(Gen &g, int d, int N, int terms, bool nonnegative) {
    Mixture m;
    Eigen::Index n = kron_power(VectorXd::Ones(N), d).size();
    m.rho = MatrixXd::Zero(n, n);
    double total = 0;
    for (int t = 0; t < terms; t++) {
        VectorXd x = nonnegative ? g.nonnegative_unit(N) : g.unit(N);
        double w = g.uniform(0.2, 1.0);
        VectorXd p = kron_power(x, d);
        m.rho += w * p * p.transpose();
        m.xs.push_back(x);
        m.ws.push_back(w);
        total += w;
    }
    m.rho /= total;
    for (auto &w : m.ws) {
        w /= total;
    }
    return m;
}

int numeric_rank(const MatrixXd &m, double tol) {
    Eigen::JacobiSVD<MatrixXd> svd(m);
    const VectorXd &s = svd.singularValues();
    if (s.size() == 0 || s[0] == 0) {
        return 0;
    }
    return static_cast<int>((s.array() > tol * s[0]).count());
}

MatrixXd kernel_basis(const MatrixXd &m, double tol) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
    double top = es.eigenvalues().cwiseAbs().maxCoeff();
    int k = static_cast<int>((es.eigenvalues().array() <= tol * top).count());
    return es.eigenvectors().leftCols(k);
}

namespace {

VectorXd residual(const MatrixXd &Kt, const VectorXd &x) {
    VectorXd r(Kt.rows() + 1);
    r.head(Kt.rows()) = Kt * kron_power(x, 2);
    r[Kt.rows()] = x.squaredNorm() - 1;
    return r;
}

MatrixXd jacobian(const MatrixXd &Kt, const VectorXd &x) {
    Eigen::Index N = x.size();
    MatrixXd J(N * N, N);
    for (Eigen::Index j = 0; j < N; j++) {
        for (Eigen::Index a = 0; a < N; a++) {
            for (Eigen::Index b = 0; b < N; b++) {
                J(a * N + b, j) = (a == j ? x[b] : 0) + (b == j ? x[a] : 0);
            }
        }
    }
    MatrixXd out(Kt.rows() + 1, N);
    out.topRows(Kt.rows()) = Kt * J;
    out.bottomRows(1) = 2 * x.transpose();
    return out;
}

}  // namespace

std::vector<VectorXd> grid_symmetric_product_vectors(const MatrixXd &kernel, int N, long samples, uint64_t seed) {
    MatrixXd Kt = kernel.transpose();
    Gen g(seed);
    auto worse = [](const std::pair<double, VectorXd> &a, const std::pair<double, VectorXd> &b) { return a.first < b.first; };
    // Max-heap on the residual keeps the `keep` best samples.
    std::vector<std::pair<double, VectorXd>> best;
    const size_t keep = 4000;
    for (long s = 0; s < samples; s++) {
        VectorXd x = g.unit(N);
        double r = (Kt * kron_power(x, 2)).squaredNorm();
        if (best.size() < keep) {
            best.emplace_back(r, x);
            std::push_heap(best.begin(), best.end(), worse);
        } else if (r < best.front().first) {
            std::pop_heap(best.begin(), best.end(), worse);
            best.back() = {r, x};
            std::push_heap(best.begin(), best.end(), worse);
        }
    }
    std::sort(best.begin(), best.end(), worse);
    std::vector<VectorXd> found;
    for (auto &[r0, x0] : best) {
        VectorXd x = x0;
        for (int it = 0; it < 60; it++) {
            VectorXd r = residual(Kt, x);
            if (r.norm() < 1e-15) {
                break;
            }
            MatrixXd J = jacobian(Kt, x);
            x -= J.colPivHouseholderQr().solve(r);
        }
        x /= x.norm();
        if ((Kt * kron_power(x, 2)).norm() > 1e-12) {
            continue;
        }
        bool dup = false;
        for (const auto &f : found) {
            dup = dup || line_angle(f, x) < 1e-6;
        }
        if (!dup) {
            found.push_back(x);
        }
    }
    return found;
}

double grid_gme_mu(const MatrixXd &rho, int N, int samples, uint64_t seed) {
    Gen g(seed);
    auto f = [&](const VectorXd &a) {
        VectorXd p = kron_power(a, 2);
        return p.dot(rho * p);
    };
    VectorXd best = g.nonnegative_unit(N);
    double fb = f(best);
    for (int s = 0; s < samples; s++) {
        VectorXd a = g.nonnegative_unit(N);
        double v = f(a);
        if (v > fb) {
            fb = v;
            best = a;
        }
    }
    // Projected gradient ascent with backtracking.
    double step = 0.1;
    for (int it = 0; it < 20000 && step > 1e-16; it++) {
        VectorXd p = kron_power(best, 2);
        VectorXd w = rho * p;
        VectorXd grad = VectorXd::Zero(N);
        for (int a = 0; a < N; a++) {
            for (int b = 0; b < N; b++) {
                grad[a] += 2 * w[a * N + b] * best[b];
                grad[b] += 2 * w[a * N + b] * best[a];
            }
        }
        VectorXd cand = (best + step * grad).cwiseMax(0.0);
        cand /= cand.norm();
        double v = f(cand);
        if (v > fb) {
            best = cand;
            fb = v;
            step *= 1.5;
        } else {
            step *= 0.5;
        }
    }
    return fb;
}

double line_angle(const VectorXd &a, const VectorXd &b) {
    double c = std::abs(a.dot(b)) / (a.norm() * b.norm());
    VectorXd ua = a / a.norm();
    VectorXd ub = b / b.norm();
    double s = std::min((ua - ub).norm(), (ua + ub).norm());
    // Half-chord form keeps precision for tiny angles.
    return c > 0.5 ? 2 * std::asin(std::min(1.0, s / 2)) : std::acos(std::min(1.0, c));
}

MatrixXd planted_hankel(const std::vector<double> &nodes, const std::vector<double> &weights, int n, double infinity_weight) {
    MatrixXd H = MatrixXd::Zero(n, n);
    for (size_t i = 0; i < nodes.size(); i++) {
        VectorXd z(n);
        double p = 1;
        for (int k = 0; k < n; k++) {
            z[k] = p;
            p *= nodes[i];
        }
        H += weights[i] * z * z.transpose();
    }
    H(n - 1, n - 1) += infinity_weight;
    return H;
}

}  // namespace oracle
