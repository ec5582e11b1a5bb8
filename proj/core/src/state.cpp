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

#include "cssep/state.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "cssep/tensor.hpp"

namespace cssep {

namespace {

size_t product(const std::vector<int> &dims) {
    size_t n = 1;
    for (int d : dims) {
        if (d <= 0) {
            throw InputError("party dimensions must be positive");
        }
        n *= static_cast<size_t>(d);
        if (n > kMaxDenseDim) {
            throw InputError("dense dimension exceeds 4096");
        }
    }
    return n;
}

std::vector<int> digits(size_t idx, const std::vector<int> &dims) {
    std::vector<int> out(dims.size());
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; k--) {
        out[k] = static_cast<int>(idx % dims[k]);
        idx /= dims[k];
    }
    return out;
}

size_t undigits(const std::vector<int> &ds, const std::vector<int> &dims) {
    size_t r = 0;
    for (size_t k = 0; k < dims.size(); k++) {
        r = r * dims[k] + ds[k];
    }
    return r;
}

// Left-multiplies factor `party` of the row space of X by A (rows of A give the new dimension).
MatrixXcd left_apply(const MatrixXcd &X, const std::vector<int> &dims, int party, const MatrixXcd &A) {
    size_t pre = 1;
    for (int k = 0; k < party; k++) {
        pre *= dims[k];
    }
    size_t post = 1;
    for (size_t k = party + 1; k < dims.size(); k++) {
        post *= dims[k];
    }
    int D = dims[party];
    int Dn = static_cast<int>(A.rows());
    MatrixXcd out = MatrixXcd::Zero(pre * Dn * post, X.cols());
    for (size_t p = 0; p < pre; p++) {
        for (int j = 0; j < Dn; j++) {
            for (int i = 0; i < D; i++) {
                cplx a = A(j, i);
                if (a == cplx(0)) {
                    continue;
                }
                size_t src = (p * D + i) * post;
                size_t dst = (p * Dn + j) * post;
                out.middleRows(dst, post) += a * X.middleRows(src, post);
            }
        }
    }
    return out;
}

}  // namespace

DensityMatrix::DensityMatrix(MatrixXcd m, std::vector<int> dims) : m_(std::move(m)), dims_(std::move(dims)) {
    if (dims_.empty()) {
        throw InputError("a state needs at least one party");
    }
    size_t n = product(dims_);
    if (static_cast<size_t>(m_.rows()) != n || static_cast<size_t>(m_.cols()) != n) {
        throw InputError("matrix shape does not match the party dimensions");
    }
    double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-12 * scale) {
        throw InputError("matrix is not Hermitian");
    }
    // Symmetrize away rounding so downstream eigen solvers see an exactly Hermitian matrix.
    m_ = (m_ + m_.adjoint()).eval() * 0.5;
}

DensityMatrix::DensityMatrix(MatrixXcd m, int parties, int local_dim)
    : DensityMatrix(std::move(m), std::vector<int>(std::max(parties, 0), local_dim)) {
}

DensityMatrix DensityMatrix::from_real(const MatrixXd &m, int parties, int local_dim) {
    return DensityMatrix(m.cast<cplx>(), parties, local_dim);
}

DensityMatrix DensityMatrix::checked(MatrixXcd m, std::vector<int> dims, double tol) {
    DensityMatrix out(std::move(m), std::move(dims));
    VectorXd ev = out.eigenvalues();
    double top = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    if (ev.minCoeff() < -tol * top) {
        throw InputError("matrix is not positive semidefinite (min eigenvalue " + std::to_string(ev.minCoeff()) + ")");
    }
    return out;
}

bool DensityMatrix::uniform() const {
    return std::all_of(dims_.begin(), dims_.end(), [&](int d) { return d == dims_[0]; });
}

int DensityMatrix::local_dim() const {
    if (!uniform()) {
        throw InputError("parties have different local dimensions");
    }
    return dims_[0];
}

bool DensityMatrix::is_real(double tol) const {
    return m_.imag().cwiseAbs().maxCoeff() <= tol * std::max(1.0, m_.cwiseAbs().maxCoeff());
}

DensityMatrix DensityMatrix::normalized() const {
    double t = trace();
    if (!(t > 0)) {
        throw InputError("cannot normalize a state with nonpositive trace");
    }
    return DensityMatrix(m_ / t, dims_);
}

VectorXd DensityMatrix::eigenvalues() const {
    if (is_real(0)) {
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(m_.real(), Eigen::EigenvaluesOnly);
        return es.eigenvalues();
    }
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double DensityMatrix::min_eigenvalue() const {
    return eigenvalues().minCoeff();
}

double Subspace::residual(const VectorXcd &v) const {
    if (basis.cols() == 0) {
        return v.norm();
    }
    return (v - basis * (basis.adjoint() * v)).norm();
}

MatrixXd Subspace::real_basis(double tol) const {
    if (basis.cols() == 0) {
        return MatrixXd(basis.rows(), 0);
    }
    MatrixXd stacked(basis.rows(), 2 * basis.cols());
    stacked << basis.real(), basis.imag();
    Eigen::JacobiSVD<MatrixXd> svd(stacked, Eigen::ComputeThinU);
    const VectorXd &s = svd.singularValues();
    int r = 0;
    while (r < s.size() && s[r] > tol * std::max(1.0, s[0])) {
        r++;
    }
    if (r != basis.cols()) {
        throw InputError("subspace is not closed under complex conjugation");
    }
    return svd.matrixU().leftCols(r);
}

CsReport is_cs(const DensityMatrix &rho, double tol) {
    if (!rho.uniform()) {
        return {false, std::numeric_limits<double>::infinity()};
    }
    int d = rho.parties();
    int N = rho.local_dim();
    const MatrixXcd &m = rho.matrix();
    double worst = m.imag().cwiseAbs().maxCoeff();
    Eigen::Index n = m.rows();
    std::vector<int> slots(2 * d);
    for (Eigen::Index r = 0; r < n; r++) {
        auto rs = unflatten(r, N, d);
        for (Eigen::Index c = 0; c < n; c++) {
            auto cs = unflatten(c, N, d);
            std::copy(rs.begin(), rs.end(), slots.begin());
            std::copy(cs.begin(), cs.end(), slots.begin() + d);
            double v = m(r, c).real();
            for (int k = 0; k + 1 < 2 * d; k++) {
                if (slots[k] == slots[k + 1]) {
                    continue;
                }
                std::swap(slots[k], slots[k + 1]);
                size_t r2 = flat_index(std::span<const int>(slots.data(), d), N);
                size_t c2 = flat_index(std::span<const int>(slots.data() + d, d), N);
                worst = std::max(worst, std::abs(m(r2, c2).real() - v));
                std::swap(slots[k], slots[k + 1]);
            }
        }
    }
    // Violations are measured relative to the largest entry once entries exceed unit scale.
    worst /= std::max(1.0, m.cwiseAbs().maxCoeff());
    return {worst <= tol, worst};
}

DensityMatrix partial_trace(const DensityMatrix &rho, const std::vector<int> &traced) {
    const auto &dims = rho.dims();
    int d = rho.parties();
    std::vector<bool> gone(d, false);
    for (int k : traced) {
        if (k < 0 || k >= d) {
            throw InputError("party index out of range");
        }
        gone[k] = true;
    }
    std::vector<int> keep_dims;
    std::vector<int> tr_dims;
    for (int k = 0; k < d; k++) {
        (gone[k] ? tr_dims : keep_dims).push_back(dims[k]);
    }
    if (keep_dims.empty()) {
        throw InputError("cannot trace out every party");
    }
    size_t n = rho.size();
    size_t nt = 1;
    for (int x : tr_dims) {
        nt *= x;
    }
    std::vector<std::vector<std::pair<size_t, size_t>>> groups(nt);
    for (size_t i = 0; i < n; i++) {
        auto ds = digits(i, dims);
        std::vector<int> kd;
        std::vector<int> td;
        for (int k = 0; k < d; k++) {
            (gone[k] ? td : kd).push_back(ds[k]);
        }
        groups[undigits(td, tr_dims)].push_back({i, undigits(kd, keep_dims)});
    }
    size_t nk = n / nt;
    MatrixXcd out = MatrixXcd::Zero(nk, nk);
    const MatrixXcd &m = rho.matrix();
    for (const auto &g : groups) {
        for (const auto &[a, ka] : g) {
            for (const auto &[b, kb] : g) {
                out(ka, kb) += m(a, b);
            }
        }
    }
    return DensityMatrix(std::move(out), keep_dims);
}

DensityMatrix marginal(const DensityMatrix &rho, int party) {
    std::vector<int> traced;
    for (int k = 0; k < rho.parties(); k++) {
        if (k != party) {
            traced.push_back(k);
        }
    }
    if (traced.empty()) {
        return rho;
    }
    return partial_trace(rho, traced);
}

MatrixXcd partial_transpose(const DensityMatrix &rho, const std::vector<int> &parties) {
    const auto &dims = rho.dims();
    for (int k : parties) {
        if (k < 0 || k >= rho.parties()) {
            throw InputError("party index out of range");
        }
    }
    size_t n = rho.size();
    std::vector<std::vector<int>> dig(n);
    for (size_t i = 0; i < n; i++) {
        dig[i] = digits(i, dims);
    }
    MatrixXcd out(n, n);
    const MatrixXcd &m = rho.matrix();
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < n; c++) {
            auto rd = dig[r];
            auto cd = dig[c];
            for (int k : parties) {
                std::swap(rd[k], cd[k]);
            }
            out(undigits(rd, dims), undigits(cd, dims)) = m(r, c);
        }
    }
    return out;
}

std::vector<double> ppt_min_eigenvalues(const DensityMatrix &rho) {
    std::vector<double> out;
    for (int k = 0; k < rho.parties(); k++) {
        DensityMatrix pt(partial_transpose(rho, {k}), rho.dims());
        out.push_back(pt.min_eigenvalue());
    }
    return out;
}

bool is_ppt(const DensityMatrix &rho, double tol) {
    double top = std::max(rho.eigenvalues().maxCoeff(), 1e-300);
    for (double e : ppt_min_eigenvalues(rho)) {
        if (e < -tol * top) {
            return false;
        }
    }
    return true;
}

DensityMatrix apply_local(const DensityMatrix &rho, const MatrixXd &A) {
    if (!rho.uniform() || A.cols() != rho.local_dim()) {
        throw InputError("local operator does not match the local dimension");
    }
    MatrixXcd Ac = A.cast<cplx>();
    std::vector<int> dims = rho.dims();
    MatrixXcd X = rho.matrix();
    for (int k = 0; k < rho.parties(); k++) {
        X = left_apply(X, dims, k, Ac);
        dims[k] = static_cast<int>(A.rows());
    }
    MatrixXcd Y = X.adjoint();
    std::vector<int> cdims = rho.dims();
    for (int k = 0; k < rho.parties(); k++) {
        Y = left_apply(Y, cdims, k, Ac);
        cdims[k] = static_cast<int>(A.rows());
    }
    Y = (Y + Y.adjoint()).eval() * 0.5;
    return DensityMatrix(std::move(Y), dims);
}

DensityMatrix apply_rilo(const DensityMatrix &rho, const MatrixXd &A) {
    if (A.rows() != A.cols()) {
        throw InputError("RILO must be square");
    }
    Eigen::JacobiSVD<MatrixXd> svd(A);
    const VectorXd &s = svd.singularValues();
    if (s[s.size() - 1] == 0 || s[0] / s[s.size() - 1] > 1e12) {
        throw InputError("RILO is numerically singular (condition number > 1e12)");
    }
    return apply_local(rho, A);
}

RangeKernel range_kernel(const DensityMatrix &rho, double tol) {
    Eigen::Index n = rho.size();
    MatrixXcd vecs;
    VectorXd vals;
    if (rho.is_real(1e-14)) {
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(rho.real());
        vals = es.eigenvalues();
        vecs = es.eigenvectors().cast<cplx>();
    } else {
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho.matrix());
        vals = es.eigenvalues();
        vecs = es.eigenvectors();
    }
    double top = vals.cwiseAbs().maxCoeff();
    int rank = 0;
    for (Eigen::Index i = 0; i < n; i++) {
        if (vals[i] > tol * top && top > 0) {
            rank++;
        }
    }
    RangeKernel rk;
    rk.rank = rank;
    rk.eigenvalues = vals;
    rk.range = Subspace{n, vecs.rightCols(rank), tol};
    rk.kernel = Subspace{n, vecs.leftCols(n - rank), tol};
    return rk;
}

int local_rank(const DensityMatrix &rho, int party, double tol) {
    return range_kernel(marginal(rho, party), tol).rank;
}

bool is_supported(const DensityMatrix &rho, double tol) {
    for (int k = 0; k < rho.parties(); k++) {
        if (local_rank(rho, k, tol) != rho.dims()[k]) {
            return false;
        }
    }
    return true;
}

double marginal_spread(const DensityMatrix &rho) {
    if (!rho.uniform()) {
        throw InputError("marginal comparison needs equal local dimensions");
    }
    MatrixXcd first = marginal(rho, 0).matrix();
    double worst = 0;
    for (int k = 1; k < rho.parties(); k++) {
        worst = std::max(worst, (marginal(rho, k).matrix() - first).norm());
    }
    return worst;
}

DensityMatrix permute_parties(const DensityMatrix &rho, const std::vector<int> &perm) {
    int d = rho.parties();
    std::vector<int> check = perm;
    std::sort(check.begin(), check.end());
    for (int k = 0; k < d; k++) {
        if (static_cast<int>(check.size()) != d || check[k] != k) {
            throw InputError("not a permutation of the parties");
        }
    }
    const auto &dims = rho.dims();
    std::vector<int> out_dims(d);
    for (int k = 0; k < d; k++) {
        out_dims[k] = dims[perm[k]];
    }
    size_t n = rho.size();
    std::vector<size_t> src(n);
    std::vector<int> in(d);
    for (size_t o = 0; o < n; o++) {
        auto od = digits(o, out_dims);
        for (int k = 0; k < d; k++) {
            in[perm[k]] = od[k];
        }
        src[o] = undigits(in, dims);
    }
    MatrixXcd out(n, n);
    const MatrixXcd &m = rho.matrix();
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < n; c++) {
            out(r, c) = m(src[r], src[c]);
        }
    }
    return DensityMatrix(std::move(out), out_dims);
}

DensityMatrix bipartition_view(const DensityMatrix &rho, const std::vector<int> &A) {
    int d = rho.parties();
    std::vector<bool> in_a(d, false);
    for (int k : A) {
        if (k < 0 || k >= d || in_a[k]) {
            throw InputError("invalid bipartition");
        }
        in_a[k] = true;
    }
    if (A.empty() || static_cast<int>(A.size()) == d) {
        throw InputError("bipartition must be a proper nonempty subset");
    }
    std::vector<int> perm;
    int da = 1;
    int db = 1;
    for (int k = 0; k < d; k++) {
        if (in_a[k]) {
            perm.push_back(k);
            da *= rho.dims()[k];
        }
    }
    for (int k = 0; k < d; k++) {
        if (!in_a[k]) {
            perm.push_back(k);
            db *= rho.dims()[k];
        }
    }
    DensityMatrix p = permute_parties(rho, perm);
    return DensityMatrix(p.matrix(), std::vector<int>{da, db});
}

}  // namespace cssep
