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

#include "cssep/reducibility.hpp"

#include <algorithm>
#include <cmath>

#include "cssep/tensor.hpp"
#include "random.hpp"

namespace cssep {

namespace {

// Applies X to factor `party` of every column of V (columns live in (R^N)^{⊗d}).
MatrixXd apply_party(const MatrixXd &V, int d, int N, int party, const MatrixXd &X) {
    Eigen::Index post = static_cast<Eigen::Index>(checked_pow(N, d - party - 1));
    Eigen::Index pre = static_cast<Eigen::Index>(checked_pow(N, party));
    MatrixXd out = MatrixXd::Zero(V.rows(), V.cols());
    for (Eigen::Index p = 0; p < pre; p++) {
        for (int j = 0; j < N; j++) {
            for (int i = 0; i < N; i++) {
                double a = X(j, i);
                if (a != 0) {
                    out.middleRows((p * N + j) * post, post) += a * V.middleRows((p * N + i) * post, post);
                }
            }
        }
    }
    return out;
}

// Orthonormal basis of the support of the single-party marginal.
MatrixXd local_support(const DensityMatrix &rho, double tol) {
    DensityMatrix m = marginal(rho, 0);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(m.real());
    double top = es.eigenvalues().cwiseAbs().maxCoeff();
    std::vector<int> keep;
    for (Eigen::Index i = es.eigenvalues().size() - 1; i >= 0; i--) {
        if (es.eigenvalues()[i] > tol * top) {
            keep.push_back(static_cast<int>(i));
        }
    }
    MatrixXd Q(m.size(), keep.size());
    for (size_t k = 0; k < keep.size(); k++) {
        Q.col(k) = es.eigenvectors().col(keep[k]);
    }
    return Q;
}

MatrixXd null_space(const MatrixXd &A, double tol) {
    Eigen::JacobiSVD<MatrixXd> svd(A, Eigen::ComputeFullV);
    const VectorXd &s = svd.singularValues();
    double top = s.size() ? s[0] : 0;
    Eigen::Index r = 0;
    while (r < s.size() && s[r] > tol * std::max(top, 1e-300)) {
        r++;
    }
    return svd.matrixV().rightCols(A.cols() - r);
}

}  // namespace

DensityMatrix embed(const DirectSumComponent &c) {
    return apply_local(c.component, c.embedding);
}

Reduction find_reduction(const DensityMatrix &rho, double tol) {
    if (!is_cs(rho, 1e-9).ok) {
        throw InputError("find_reduction needs a CS state");
    }
    int d = rho.parties();
    int N = rho.local_dim();
    if (d < 2) {
        throw InputError("find_reduction needs at least two parties");
    }
    Reduction red;
    MatrixXd Q = local_support(rho, tol);
    int n = static_cast<int>(Q.cols());
    DensityMatrix r = apply_local(rho, Q.transpose());
    if (n < N) {
        red.transcript.push_back("restricted to local support of dimension " + std::to_string(n));
    }
    auto single = [&]() {
        red.reducible = false;
        red.basis = Q;
        red.blocks = {std::vector<int>(n)};
        for (int i = 0; i < n; i++) {
            red.blocks[0][i] = i;
        }
        red.components = {DirectSumComponent{Q, r}};
        red.reconstruction_error = (embed(red.components[0]).matrix() - rho.matrix()).norm();
        return red;
    };
    if (n <= 1) {
        red.transcript.push_back("local support is one dimensional");
        return single();
    }

    RangeKernel rk = range_kernel(r, tol);
    MatrixXd V = rk.range.real_basis();
    // Linear system for X: columns indexed by the N^2 matrix units.
    MatrixXd A(V.rows() * V.cols(), n * n);
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            MatrixXd E = MatrixXd::Zero(n, n);
            E(a, b) = 1;
            MatrixXd D = apply_party(V, d, n, 0, E) - apply_party(V, d, n, 1, E);
            A.col(a * n + b) = Eigen::Map<VectorXd>(D.data(), D.size());
        }
    }
    MatrixXd alg = null_space(A, 1e-9);
    red.transcript.push_back("local algebra dimension " + std::to_string(alg.cols()));
    if (alg.cols() <= 1) {
        return single();
    }

    Rng rng(0xa11ce);
    VectorXd coeff = rng.normal_vector(alg.cols());
    VectorXd xv = alg * coeff;
    MatrixXd X(n, n);
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            X(a, b) = xv[a * n + b];
        }
    }
    Eigen::EigenSolver<MatrixXd> es(X, false);
    VectorXcd ev = es.eigenvalues();
    double spread = 0;
    for (Eigen::Index i = 0; i < ev.size(); i++) {
        for (Eigen::Index j = 0; j < ev.size(); j++) {
            spread = std::max(spread, std::abs(ev[i] - ev[j]));
        }
    }
    if (ev.imag().cwiseAbs().maxCoeff() > 1e-8 * std::max(spread, 1e-300)) {
        red.transcript.push_back("algebra element has non-real spectrum; no real split attempted");
        return single();
    }
    std::vector<double> vals(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); i++) {
        vals[i] = ev[i].real();
    }
    std::sort(vals.begin(), vals.end());
    std::vector<double> centers;
    std::vector<int> mult;
    for (double v : vals) {
        if (centers.empty() || v - centers.back() > 1e-6 * spread) {
            centers.push_back(v);
            mult.push_back(0);
        }
        mult.back()++;
    }
    if (centers.size() < 2) {
        return single();
    }
    // Generalized eigenspaces: the mult smallest singular directions of (X - c)^mult. Any error
    // shows up in the block leakage check below.
    double xscale = std::max(spread, X.norm());
    MatrixXd B(n, 0);
    std::vector<std::vector<int>> blocks;
    for (size_t k = 0; k < centers.size(); k++) {
        MatrixXd shifted = (X - centers[k] * MatrixXd::Identity(n, n)) / xscale;
        MatrixXd P = MatrixXd::Identity(n, n);
        for (int j = 0; j < mult[k]; j++) {
            P = P * shifted;
        }
        Eigen::JacobiSVD<MatrixXd> psvd(P, Eigen::ComputeFullV);
        MatrixXd W = psvd.matrixV().rightCols(mult[k]);
        std::vector<int> blk;
        for (Eigen::Index c = 0; c < W.cols(); c++) {
            blk.push_back(static_cast<int>(B.cols() + c));
        }
        MatrixXd nb(n, B.cols() + W.cols());
        nb << B, W;
        B = nb;
        blocks.push_back(blk);
    }
    if (B.cols() != n) {
        red.transcript.push_back("generalized eigenspaces do not span the support");
        return single();
    }
    Eigen::JacobiSVD<MatrixXd> bsvd(B);
    double cond = bsvd.singularValues()[0] / bsvd.singularValues()[n - 1];
    if (!(cond < 1e10)) {
        red.transcript.push_back("block basis is ill conditioned");
        return single();
    }
    MatrixXd Binv = B.inverse();
    DensityMatrix t = apply_local(r, Binv);
    MatrixXd tm = t.real();
    std::vector<int> block_of(n);
    for (size_t k = 0; k < blocks.size(); k++) {
        for (int i : blocks[k]) {
            block_of[i] = static_cast<int>(k);
        }
    }
    double scale = tm.cwiseAbs().maxCoeff();
    double cross = 0;
    Eigen::Index dim = tm.rows();
    std::vector<int> label(dim);
    for (Eigen::Index i = 0; i < dim; i++) {
        auto s = unflatten(i, n, d);
        int b0 = block_of[s[0]];
        label[i] = b0;
        for (int k : s) {
            if (block_of[k] != b0) {
                label[i] = -1;
            }
        }
    }
    for (Eigen::Index i = 0; i < dim; i++) {
        for (Eigen::Index j = 0; j < dim; j++) {
            if (label[i] < 0 || label[i] != label[j]) {
                cross = std::max(cross, std::abs(tm(i, j)));
            }
        }
    }
    red.transcript.push_back("largest entry outside the blocks " + std::to_string(cross / std::max(scale, 1e-300)));
    if (cross > 1e-8 * scale) {
        return single();
    }
    red.reducible = true;
    red.basis = Q * B;
    red.blocks = blocks;
    MatrixXd recon = MatrixXd::Zero(rho.size(), rho.size());
    for (const auto &blk : blocks) {
        int nk = static_cast<int>(blk.size());
        MatrixXd sel = MatrixXd::Zero(nk, n);
        for (int i = 0; i < nk; i++) {
            sel(i, blk[i]) = 1;
        }
        DensityMatrix comp = apply_local(t, sel);
        MatrixXd emb = Q * B * sel.transpose();
        DirectSumComponent c{emb, comp};
        recon += embed(c).real();
        red.components.push_back(std::move(c));
    }
    red.reconstruction_error = (recon - rho.real()).norm();
    red.transcript.push_back("split into " + std::to_string(blocks.size()) + " blocks");
    return red;
}

std::vector<DirectSumComponent> decompose_direct_sum(const DensityMatrix &rho, double tol) {
    Reduction red = find_reduction(rho, tol);
    if (!red.reducible) {
        return red.components;
    }
    std::vector<DirectSumComponent> out;
    for (const auto &c : red.components) {
        if (c.component.local_dim() <= 1) {
            out.push_back(c);
            continue;
        }
        for (auto &sub : decompose_direct_sum(c.component, tol)) {
            out.push_back(DirectSumComponent{c.embedding * sub.embedding, sub.component});
        }
    }
    return out;
}

}  // namespace cssep
