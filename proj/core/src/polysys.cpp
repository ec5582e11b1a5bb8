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

#include "cssep/polysys.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <tuple>

#include "random.hpp"

namespace cssep {

Polynomial Polynomial::constant(int nvars, double c) {
    Polynomial p{nvars, {}};
    if (c != 0) {
        p.terms[std::vector<int>(nvars, 0)] = c;
    }
    return p;
}

Polynomial Polynomial::variable(int nvars, int i) {
    Polynomial p{nvars, {}};
    std::vector<int> e(nvars, 0);
    e[i] = 1;
    p.terms[e] = 1;
    return p;
}

int Polynomial::degree() const {
    int d = 0;
    for (const auto &[e, c] : terms) {
        d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    }
    return d;
}

cplx Polynomial::eval(const VectorXcd &x) const {
    cplx s = 0;
    for (const auto &[e, c] : terms) {
        cplx t = c;
        for (int i = 0; i < nvars; i++) {
            for (int k = 0; k < e[i]; k++) {
                t *= x[i];
            }
        }
        s += t;
    }
    return s;
}

double Polynomial::eval(const VectorXd &x) const {
    return eval(VectorXcd(x.cast<cplx>())).real();
}

VectorXcd Polynomial::gradient(const VectorXcd &x) const {
    VectorXcd g = VectorXcd::Zero(nvars);
    for (const auto &[e, c] : terms) {
        for (int i = 0; i < nvars; i++) {
            if (e[i] == 0) {
                continue;
            }
            cplx t = c * static_cast<double>(e[i]);
            for (int j = 0; j < nvars; j++) {
                int p = e[j] - (j == i ? 1 : 0);
                for (int k = 0; k < p; k++) {
                    t *= x[j];
                }
            }
            g[i] += t;
        }
    }
    return g;
}

Polynomial Polynomial::operator+(const Polynomial &o) const {
    Polynomial r = *this;
    for (const auto &[e, c] : o.terms) {
        r.terms[e] += c;
    }
    return r;
}

Polynomial Polynomial::operator*(const Polynomial &o) const {
    Polynomial r{nvars, {}};
    std::vector<int> e(nvars);
    for (const auto &[a, ca] : terms) {
        for (const auto &[b, cb] : o.terms) {
            for (int i = 0; i < nvars; i++) {
                e[i] = a[i] + b[i];
            }
            r.terms[e] += ca * cb;
        }
    }
    return r;
}

Polynomial Polynomial::operator*(double s) const {
    Polynomial r = *this;
    for (auto &[e, c] : r.terms) {
        c *= s;
    }
    return r;
}

void Polynomial::prune(double tol) {
    std::erase_if(terms, [&](const auto &kv) { return std::abs(kv.second) <= tol; });
}

namespace {

// All exponent vectors of total degree <= D in n variables, graded then lexicographic.
std::vector<std::vector<int>> monomials_upto(int n, int D) {
    std::vector<std::vector<int>> out;
    for (int deg = 0; deg <= D; deg++) {
        std::vector<int> e(n, 0);
        // Enumerate compositions of deg into n parts.
        std::function<void(int, int)> rec = [&](int i, int left) {
            if (i == n - 1) {
                e[i] = left;
                out.push_back(e);
                return;
            }
            for (int k = left; k >= 0; k--) {
                e[i] = k;
                rec(i + 1, left - k);
            }
        };
        if (n == 0) {
            if (deg == 0) {
                out.push_back(e);
            }
        } else {
            rec(0, deg);
        }
    }
    return out;
}

void newton_polish(const std::vector<Polynomial> &eqs, VectorXcd &y, int iters) {
    int n = static_cast<int>(y.size());
    for (int it = 0; it < iters; it++) {
        VectorXcd F(n);
        MatrixXcd J(n, n);
        for (int i = 0; i < n; i++) {
            F[i] = eqs[i].eval(y);
            J.row(i) = eqs[i].gradient(y).transpose();
        }
        Eigen::ColPivHouseholderQR<MatrixXcd> qr(J);
        if (qr.rank() < n) {
            return;
        }
        VectorXcd step = qr.solve(F);
        if (!step.allFinite()) {
            return;
        }
        y -= step;
        if (step.norm() < 1e-15 * std::max(1.0, y.norm())) {
            return;
        }
    }
}

}  // namespace

PolySolveResult solve_square_system(const std::vector<Polynomial> &eqs, uint64_t seed, int max_columns) {
    PolySolveResult res;
    int n = static_cast<int>(eqs.size());
    if (n == 0) {
        res.complete = true;
        res.bezout = 1;
        res.null_dim = 1;
        res.roots.push_back(VectorXcd(0));
        return res;
    }
    for (const auto &p : eqs) {
        if (p.nvars != n) {
            throw InputError("solve_square_system needs as many equations as unknowns");
        }
    }
    std::vector<int> degs;
    int D = 1;
    long long bezout = 1;
    for (const auto &p : eqs) {
        int dg = p.degree();
        if (dg == 0) {
            res.note = "constant equation";
            return res;
        }
        degs.push_back(dg);
        D += dg - 1;
        bezout *= dg;
    }
    res.bezout = static_cast<int>(bezout);

    auto cols = monomials_upto(n, D);
    if (static_cast<int>(cols.size()) > max_columns) {
        res.note = "Macaulay matrix too large";
        return res;
    }
    std::map<std::vector<int>, int> col_of;
    for (size_t i = 0; i < cols.size(); i++) {
        col_of[cols[i]] = static_cast<int>(i);
    }

    std::vector<std::tuple<int, int, double>> trip;
    int nrows = 0;
    std::vector<int> e(n);
    for (int q = 0; q < n; q++) {
        for (const auto &mu : monomials_upto(n, D - degs[q])) {
            for (const auto &[a, c] : eqs[q].terms) {
                for (int i = 0; i < n; i++) {
                    e[i] = a[i] + mu[i];
                }
                trip.emplace_back(nrows, col_of.at(e), c);
            }
            nrows++;
        }
    }
    MatrixXd M = MatrixXd::Zero(std::max(nrows, 1), cols.size());
    for (const auto &[r, c, v] : trip) {
        M(r, c) += v;
    }
    // Row scaling keeps the singular value gap clean.
    for (int r = 0; r < M.rows(); r++) {
        double nr = M.row(r).norm();
        if (nr > 0) {
            M.row(r) /= nr;
        }
    }

    Eigen::BDCSVD<MatrixXd> svd(M, Eigen::ComputeFullV);
    VectorXd s = VectorXd::Zero(cols.size());
    s.head(svd.singularValues().size()) = svd.singularValues();
    double smax = std::max(s[0], 1e-300);
    int null_dim = 0;
    for (Eigen::Index i = 0; i < s.size(); i++) {
        if (s[i] < 1e-9 * smax) {
            null_dim++;
        }
    }
    res.null_dim = null_dim;
    if (null_dim != bezout) {
        res.note = "null space dimension " + std::to_string(null_dim) + " differs from Bezout number " +
                   std::to_string(bezout);
        return res;
    }
    // Also require a visible gap above the null space.
    double gap_lo = s[cols.size() - null_dim - 1];
    if (gap_lo < 1e-6 * smax) {
        res.note = "no clear singular value gap";
        return res;
    }
    MatrixXd Z = svd.matrixV().rightCols(null_dim);

    std::vector<int> srows;
    for (size_t i = 0; i < cols.size(); i++) {
        if (std::accumulate(cols[i].begin(), cols[i].end(), 0) <= D - 1) {
            srows.push_back(static_cast<int>(i));
        }
    }
    MatrixXd ZS(srows.size(), null_dim);
    MatrixXd ZH = MatrixXd::Zero(srows.size(), null_dim);
    Rng rng(seed);
    VectorXd shift(n);
    for (int l = 0; l < n; l++) {
        shift[l] = rng.normal();
    }
    for (size_t k = 0; k < srows.size(); k++) {
        const auto &a = cols[srows[k]];
        ZS.row(k) = Z.row(srows[k]);
        for (int l = 0; l < n; l++) {
            e = a;
            e[l]++;
            ZH.row(k) += shift[l] * Z.row(col_of.at(e));
        }
    }
    Eigen::JacobiSVD<MatrixXd> zsvd(ZS, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const VectorXd &zs = zsvd.singularValues();
    if (zs[zs.size() - 1] < 1e-8 * zs[0]) {
        res.note = "degree-truncated null space is rank deficient";
        return res;
    }
    MatrixXd pinv = zsvd.matrixV() * zs.cwiseInverse().asDiagonal() * zsvd.matrixU().transpose();
    MatrixXd B = pinv * ZH;
    Eigen::EigenSolver<MatrixXd> es(B);
    if (es.info() != Eigen::Success) {
        res.note = "eigenvalue solver failed";
        return res;
    }
    MatrixXcd K = ZS.cast<cplx>() * es.eigenvectors();
    int one = 0;  // row of the constant monomial within srows
    std::vector<int> var_row(n);
    for (int l = 0; l < n; l++) {
        std::vector<int> el(n, 0);
        el[l] = 1;
        var_row[l] = static_cast<int>(std::find(srows.begin(), srows.end(), col_of.at(el)) - srows.begin());
    }
    bool finite = true;
    for (int j = 0; j < null_dim; j++) {
        cplx denom = K(one, j);
        if (std::abs(denom) < 1e-12 * K.col(j).norm()) {
            finite = false;
            continue;
        }
        VectorXcd y(n);
        for (int l = 0; l < n; l++) {
            y[l] = K(var_row[l], j) / denom;
        }
        newton_polish(eqs, y, 8);
        res.roots.push_back(y);
    }
    res.complete = finite;
    if (!finite) {
        res.note = "a root sits at infinity in this chart";
    }
    return res;
}

}  // namespace cssep
