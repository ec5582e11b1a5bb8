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

#include "cssep/product_search.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cssep/polysys.hpp"
#include "cssep/tensor.hpp"
#include "random.hpp"

namespace cssep {

VectorXd canonical_sign(const VectorXd &x) {
    double n = x.norm();
    if (n == 0) {
        throw InputError("zero vector has no direction");
    }
    VectorXd y = x / n;
    for (Eigen::Index i = 0; i < y.size(); i++) {
        if (std::abs(y[i]) > 1e-12) {
            if (y[i] < 0) {
                y = -y;
            }
            break;
        }
    }
    return y;
}

double line_angle(const VectorXd &x, const VectorXd &y) {
    VectorXd a = x.normalized();
    VectorXd b = y.normalized();
    if (a.dot(b) < 0) {
        b = -b;
    }
    // Half-chord formula stays accurate for tiny angles.
    return 2 * std::asin(std::min(1.0, (a - b).norm() / 2));
}

ProductVector ProductVector::from_real(const VectorXd &x, int power) {
    return ProductVector{canonical_sign(x).cast<cplx>(), power};
}

ProductVector ProductVector::from_complex(const VectorXcd &x, int power) {
    double n = x.norm();
    if (n == 0) {
        throw InputError("zero vector has no direction");
    }
    VectorXcd y = x / n;
    for (Eigen::Index i = 0; i < y.size(); i++) {
        if (std::abs(y[i]) > 1e-12) {
            y *= std::conj(y[i]) / std::abs(y[i]);
            break;
        }
    }
    return ProductVector{y, power};
}

bool ProductVector::is_real(double tol) const {
    return local.imag().cwiseAbs().maxCoeff() <= tol;
}

VectorXcd ProductVector::expand() const {
    return tensor_power(local, power);
}

TakagiFactorization takagi(const MatrixXcd &M) {
    if (M.rows() != M.cols()) {
        throw InputError("takagi needs a square matrix");
    }
    Eigen::Index n = M.rows();
    double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw InputError("takagi needs a complex symmetric matrix");
    }
    TakagiFactorization t;
    std::vector<std::pair<double, VectorXcd>> cols;
    if (M.imag().cwiseAbs().maxCoeff() <= 1e-14 * scale) {
        t.real_input = true;
        MatrixXd A = M.real();
        A = (A + A.transpose()).eval() / 2;
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(A);
        std::vector<std::tuple<double, int, VectorXd>> terms;
        for (Eigen::Index i = 0; i < n; i++) {
            double lam = es.eigenvalues()[i];
            terms.emplace_back(std::abs(lam), lam < 0 ? -1 : 1, canonical_sign(es.eigenvectors().col(i)));
        }
        std::stable_sort(terms.begin(), terms.end(), [](const auto &a, const auto &b) { return std::get<0>(a) > std::get<0>(b); });
        t.D.resize(n);
        t.U.resize(n, n);
        t.orthogonal.resize(n, n);
        for (Eigen::Index i = 0; i < n; i++) {
            auto &[dv, sg, v] = terms[i];
            t.D[i] = dv;
            t.signs.push_back(sg);
            t.orthogonal.col(i) = v;
            t.U.col(i) = v.cast<cplx>() * (sg < 0 ? cplx(0, 1) : cplx(1, 0));
        }
    } else {
        MatrixXd A = M.real();
        MatrixXd B = M.imag();
        MatrixXd E(2 * n, 2 * n);
        E << A, B, B, -A;
        E = (E + E.transpose()).eval() / 2;
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(E);
        double top = es.eigenvalues().cwiseAbs().maxCoeff();
        std::vector<std::pair<double, VectorXcd>> pos;
        for (Eigen::Index i = 2 * n - 1; i >= 0 && static_cast<Eigen::Index>(pos.size()) < n; i--) {
            double s = es.eigenvalues()[i];
            if (s <= 1e-13 * top) {
                break;
            }
            VectorXd v = es.eigenvectors().col(i);
            VectorXcd u(n);
            for (Eigen::Index k = 0; k < n; k++) {
                u[k] = cplx(v[k], v[n + k]);
            }
            pos.emplace_back(s, u / u.norm());
        }
        Eigen::Index r = static_cast<Eigen::Index>(pos.size());
        t.U.resize(n, n);
        t.D = VectorXd::Zero(n);
        for (Eigen::Index i = 0; i < r; i++) {
            t.D[i] = pos[i].first;
            t.U.col(i) = pos[i].second;
        }
        if (r < n) {
            // Any orthonormal completion works for the zero Takagi values.
            MatrixXcd seed = MatrixXcd::Identity(n, n);
            MatrixXcd basis(n, n);
            // Gram-Schmidt of the identity columns against the found columns.
            int filled = static_cast<int>(r);
            basis.leftCols(r) = t.U.leftCols(r);
            for (Eigen::Index k = 0; k < n && filled < n; k++) {
                VectorXcd v = seed.col(k);
                for (int j = 0; j < filled; j++) {
                    v -= basis.col(j) * basis.col(j).dot(v);
                }
                for (int j = 0; j < filled; j++) {
                    v -= basis.col(j) * basis.col(j).dot(v);
                }
                if (v.norm() > 1e-6) {
                    basis.col(filled++) = v / v.norm();
                }
            }
            t.U = basis;
        }
        t.signs.assign(n, 1);
    }
    t.residual = (t.U * t.D.asDiagonal() * t.U.transpose() - M).cwiseAbs().maxCoeff();
    return t;
}

std::vector<SignedFactor> symmetric_decompose_pure(const VectorXcd &psi) {
    Eigen::Index N = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(psi.size()))));
    if (N * N != psi.size()) {
        throw InputError("vector length is not a square");
    }
    MatrixXcd M(N, N);
    for (Eigen::Index i = 0; i < N; i++) {
        for (Eigen::Index j = 0; j < N; j++) {
            M(i, j) = psi[i * N + j];
        }
    }
    double scale = std::max(psi.norm(), 1e-300);
    if ((M - M.transpose()).norm() > 1e-10 * scale) {
        throw InputError("vector is not in the symmetric subspace");
    }
    TakagiFactorization t = takagi(M);
    std::vector<SignedFactor> out;
    for (Eigen::Index i = 0; i < N; i++) {
        if (t.D[i] <= 1e-14 * scale) {
            continue;
        }
        if (t.real_input) {
            out.push_back({t.signs[i], (std::sqrt(t.D[i]) * t.orthogonal.col(i)).cast<cplx>()});
        } else {
            out.push_back({1, std::sqrt(t.D[i]) * t.U.col(i)});
        }
    }
    return out;
}

bool segre_guarantee(int n, int N) {
    if (N < 1 || n < 0 || n > N * (N + 1) / 2) {
        throw InputError("subspace dimension out of range");
    }
    return n >= N * (N - 1) / 2 + 1;
}

std::optional<ProductPair> qubit_product_step(const std::vector<VectorXcd> &kernel, int M) {
    int r = static_cast<int>(kernel.size());
    for (const auto &f : kernel) {
        if (f.size() != 2 * M) {
            throw InputError("kernel vectors must have length 2M");
        }
    }
    if (r == 0) {
        return ProductPair{VectorXd::Unit(2, 0), VectorXd::Unit(M, 0), 0.0};
    }
    if (r >= M) {
        return std::nullopt;
    }
    MatrixXcd F0(r, M);
    MatrixXcd F1(r, M);
    for (int i = 0; i < r; i++) {
        F0.row(i) = kernel[i].head(M).conjugate().transpose();
        F1.row(i) = kernel[i].tail(M).conjugate().transpose();
    }
    const double s = 1 / std::sqrt(2.0);
    std::vector<VectorXd> xs = {VectorXd::Unit(2, 0), VectorXd::Unit(2, 1), (VectorXd(2) << s, s).finished(),
                                (VectorXd(2) << s, -s).finished()};
    Rng rng(0x51);
    for (int k = 0; k < 16; k++) {
        xs.push_back(rng.unit_vector(2));
    }
    std::optional<ProductPair> best;
    for (const auto &x : xs) {
        MatrixXcd Nx = x[0] * F0 + x[1] * F1;
        MatrixXd stacked(2 * r, M);
        stacked << Nx.real(), Nx.imag();
        Eigen::JacobiSVD<MatrixXd> svd(stacked, Eigen::ComputeFullV);
        VectorXd y = canonical_sign(svd.matrixV().col(M - 1));
        VectorXcd xy(2 * M);
        xy << x[0] * y.cast<cplx>(), x[1] * y.cast<cplx>();
        double res = 0;
        for (const auto &f : kernel) {
            res = std::max(res, std::abs(f.dot(xy)) / f.norm());
        }
        if (!best || res < best->residual) {
            best = ProductPair{canonical_sign(x), y * (x[0] < 0 || (x[0] == 0 && x[1] < 0) ? -1.0 : 1.0), res};
        }
        if (res < 1e-12) {
            break;
        }
    }
    if (best->residual > 1e-10) {
        return std::nullopt;
    }
    best->y = canonical_sign(best->y);
    return best;
}

std::vector<double> real_quadratic_roots(double a, double b, double c) {
    double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    if (scale == 0) {
        return {0.0};  // every x solves 0 = 0; report one representative
    }
    if (std::abs(a) <= 1e-14 * scale) {
        if (std::abs(b) <= 1e-14 * scale) {
            return {};
        }
        return {-c / b};
    }
    double disc = b * b - 4 * a * c;
    if (disc < -1e-14 * scale * scale) {
        return {};
    }
    disc = std::max(disc, 0.0);
    // Numerically stable pair.
    double q = -0.5 * (b + (b >= 0 ? 1 : -1) * std::sqrt(disc));
    std::vector<double> roots;
    roots.push_back(q / a);
    if (q != 0) {
        roots.push_back(c / q);
    } else {
        roots.push_back(0.0);
    }
    std::sort(roots.begin(), roots.end());
    if (std::abs(roots[0] - roots[1]) <= 1e-15 * std::max(1.0, std::abs(roots[0]))) {
        roots.pop_back();
    }
    return roots;
}

namespace {

MatrixXd orthonormalize(const MatrixXd &A, double tol = 1e-10) {
    if (A.cols() == 0) {
        return A;
    }
    Eigen::JacobiSVD<MatrixXd> svd(A, Eigen::ComputeThinU);
    const VectorXd &s = svd.singularValues();
    int r = 0;
    while (r < s.size() && s[r] > tol * std::max(1.0, s[0])) {
        r++;
    }
    return svd.matrixU().leftCols(r);
}

MatrixXd complement(const MatrixXd &S, Eigen::Index dim) {
    if (S.cols() == 0) {
        return MatrixXd::Identity(dim, dim);
    }
    Eigen::JacobiSVD<MatrixXd> svd(S, Eigen::ComputeFullU);
    return svd.matrixU().rightCols(dim - S.cols());
}

MatrixXd sym_coords_of(const Subspace &range, int d, int N) {
    MatrixXd R = range.real_basis();
    SymBasis sb(d, N);
    MatrixXd B = sb.embedding();
    if (B.rows() != range.ambient) {
        throw InputError("range dimension does not equal N^d");
    }
    MatrixXd S = B.transpose() * R;
    if (R.cols() > 0 && (B * S - R).cwiseAbs().maxCoeff() > 1e-8) {
        throw InputError("range basis is not inside the symmetric subspace");
    }
    return orthonormalize(S);
}

VectorXcd complex_power_coords(const SymBasis &sb, const VectorXcd &x) {
    VectorXcd out(sb.size());
    for (int a = 0; a < sb.size(); a++) {
        cplx p = sb.weights()[a];
        for (int s : sb.multisets()[a]) {
            p *= x[s];
        }
        out[a] = p;
    }
    return out;
}

// Residual of x^{⊗d} against the range, with K an orthonormal basis of the complement.
double kernel_residual(const SymBasis &sb, const MatrixXd &K, const VectorXd &x) {
    VectorXd u = x.normalized();
    return (K.transpose() * sb.power_coords(u)).norm();
}

// Levenberg-Marquardt on the unit sphere for min |K^T phi(x)|^2.
VectorXd lm_sphere(const SymBasis &sb, const MatrixXd &K, VectorXd x, int iters) {
    x.normalize();
    Eigen::Index N = x.size();
    VectorXd r = K.transpose() * sb.power_coords(x);
    double mu = 1e-3;
    for (int it = 0; it < iters; it++) {
        double rn = r.norm();
        if (rn < 1e-15) {
            break;
        }
        MatrixXd P = MatrixXd::Identity(N, N) - x * x.transpose();
        MatrixXd J = K.transpose() * sb.power_jacobian(x) * P;
        MatrixXd H = J.transpose() * J;
        VectorXd g = J.transpose() * r;
        bool improved = false;
        for (int tries = 0; tries < 12; tries++) {
            VectorXd step = (H + mu * MatrixXd::Identity(N, N)).ldlt().solve(-g);
            VectorXd xn = (x + step).normalized();
            VectorXd rn2 = K.transpose() * sb.power_coords(xn);
            if (rn2.norm() < rn) {
                x = xn;
                r = rn2;
                mu = std::max(mu / 3, 1e-15);
                improved = true;
                break;
            }
            mu *= 4;
        }
        if (!improved) {
            break;
        }
    }
    return x;
}

void add_unique(std::vector<VectorXd> &found, const VectorXd &x, double angle) {
    VectorXd c = canonical_sign(x);
    for (const auto &f : found) {
        if (line_angle(f, c) < angle) {
            return;
        }
    }
    found.push_back(c);
}

void sort_lex(std::vector<VectorXd> &v) {
    std::sort(v.begin(), v.end(), [](const VectorXd &a, const VectorXd &b) {
        for (Eigen::Index i = 0; i < a.size(); i++) {
            if (a[i] != b[i]) {
                return a[i] < b[i];
            }
        }
        return false;
    });
}

std::vector<VectorXd> multistart(const SymBasis &sb, const MatrixXd &K, const ProductSearchOptions &opts) {
    Rng rng(opts.seed);
    std::vector<VectorXd> found;
    int N = sb.local_dim();
    for (int k = 0; k < opts.restarts; k++) {
        VectorXd x = lm_sphere(sb, K, rng.unit_vector(N), 200);
        if (kernel_residual(sb, K, x) < opts.residual_tol) {
            add_unique(found, x, opts.dedup_angle);
        }
    }
    return found;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

}  // namespace

ProductSearchResult symmetric_product_vectors(const Subspace &range, int d, int N, const ProductSearchOptions &opts) {
    return symmetric_product_vectors_sym(sym_coords_of(range, d, N), d, N, opts);
}

ProductSearchResult symmetric_product_vectors_sym(const MatrixXd &range_sym, int d, int N, const ProductSearchOptions &opts) {
    SymBasis sb(d, N);
    if (range_sym.rows() != sb.size()) {
        throw InputError("range basis has the wrong number of symmetric coordinates");
    }
    ProductSearchResult res;
    MatrixXd S = orthonormalize(range_sym);
    MatrixXd K = complement(S, sb.size());
    int m = static_cast<int>(K.cols());
    int n = N - 1;
    res.transcript.push_back("range dim " + std::to_string(S.cols()) + " in symmetric space of dim " +
                             std::to_string(sb.size()) + ", " + std::to_string(m) + " vanishing forms");
    if (S.cols() == 0) {
        res.complete = true;
        res.method = "empty-range";
        return res;
    }
    if (m == 0) {
        res.whole_space = true;
        res.method = "whole-space";
        for (int i = 0; i < N; i++) {
            res.vectors.push_back(ProductVector::from_real(VectorXd::Unit(N, i), d));
        }
        res.transcript.push_back("range is the full symmetric space; every real vector qualifies");
        return res;
    }

    std::vector<VectorXd> found;
    bool exhaustive_ok = false;
    if (opts.allow_exhaustive && m >= n) {
        Rng rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
        MatrixXd A = rng.orthogonal(N);
        MatrixXd C(m, n);
        if (m == n) {
            C.setIdentity();
        } else {
            for (int j = 0; j < m; j++) {
                for (int i = 0; i < n; i++) {
                    C(j, i) = rng.normal();
                }
            }
        }
        // Linear chart x = A (1, y).
        std::vector<Polynomial> xs;
        for (int k = 0; k < N; k++) {
            Polynomial p = Polynomial::constant(n, A(k, 0));
            for (int l = 0; l < n; l++) {
                p = p + Polynomial::variable(n, l) * A(k, l + 1);
            }
            xs.push_back(p);
        }
        std::vector<Polynomial> mons;
        for (int a = 0; a < sb.size(); a++) {
            Polynomial p = Polynomial::constant(n, sb.weights()[a]);
            for (int s : sb.multisets()[a]) {
                p = p * xs[s];
            }
            mons.push_back(p);
        }
        std::vector<Polynomial> eqs;
        MatrixXd coef = K * C;  // sym coords x combos
        for (int i = 0; i < n; i++) {
            Polynomial g{n, {}};
            for (int a = 0; a < sb.size(); a++) {
                if (coef(a, i) != 0) {
                    g = g + mons[a] * coef(a, i);
                }
            }
            double top = 0;
            for (const auto &[e, c] : g.terms) {
                top = std::max(top, std::abs(c));
            }
            g = g * (1 / std::max(top, 1e-300));
            g.prune(1e-15);
            eqs.push_back(std::move(g));
        }
        PolySolveResult ps = solve_square_system(eqs, opts.seed + 17, opts.max_macaulay_columns);
        res.bezout = ps.bezout;
        res.transcript.push_back("square subsystem: " + std::to_string(n) + " forms of degree " + std::to_string(d) +
                                 ", Bezout number " + std::to_string(ps.bezout) + ", Macaulay null space " +
                                 std::to_string(ps.null_dim));
        if (!ps.complete) {
            res.transcript.push_back("algebraic enumeration unavailable: " + ps.note);
        } else {
            std::vector<VectorXcd> sols;
            bool distinct = true;
            int extraneous = 0;
            for (const auto &y : ps.roots) {
                VectorXcd h(N);
                h[0] = 1;
                h.tail(n) = y;
                VectorXcd x = A.cast<cplx>() * h;
                x /= x.norm();
                Eigen::Index p = 0;
                x.cwiseAbs().maxCoeff(&p);
                x *= std::conj(x[p]) / std::abs(x[p]);
                for (const auto &s : sols) {
                    if (1 - std::abs(s.dot(x)) < 1e-10) {
                        distinct = false;
                    }
                }
                sols.push_back(x);
                double full = (K.transpose().cast<cplx>() * complex_power_coords(sb, x)).norm();
                if (full > 1e-6) {
                    extraneous++;
                    continue;
                }
                if (x.imag().norm() < 1e-6) {
                    VectorXd xr = lm_sphere(sb, K, x.real(), 20);
                    if (kernel_residual(sb, K, xr) < opts.residual_tol) {
                        add_unique(found, xr, opts.dedup_angle);
                        continue;
                    }
                }
                res.complex_solutions++;
            }
            res.transcript.push_back(std::to_string(ps.roots.size()) + " roots of the square subsystem: " +
                                     std::to_string(extraneous) + " fail the remaining forms, " +
                                     std::to_string(found.size()) + " real solutions, " +
                                     std::to_string(res.complex_solutions) + " non-real solutions");
            if (!distinct) {
                res.transcript.push_back("repeated roots detected; completeness not certified");
            } else {
                exhaustive_ok = true;
            }
        }
    } else if (m < n) {
        res.transcript.push_back("fewer forms than unknowns: the real solution set may be positive dimensional");
    }

    if (exhaustive_ok) {
        res.method = "exhaustive";
        res.complete = true;
    } else {
        res.method = "multistart";
        for (const auto &x : multistart(sb, K, opts)) {
            add_unique(found, x, opts.dedup_angle);
        }
        res.transcript.push_back("multistart with " + std::to_string(opts.restarts) + " restarts found " +
                                 std::to_string(found.size()) + " vectors (enumeration incomplete)");
    }
    sort_lex(found);
    for (const auto &x : found) {
        res.vectors.push_back(ProductVector::from_real(x, d));
    }

    if (!opts.rational_generators.empty()) {
        auto forms = exact_vanishing_forms(opts.rational_generators, d);
        res.transcript.push_back("exact layer: " + std::to_string(forms.size()) + " rational vanishing forms");
        for (const auto &x : found) {
            auto q = rationalize_direction(x);
            if (q && exact_vanishes_all(forms, *q, d)) {
                res.exact_verified++;
                std::string s = "exact solution (";
                for (size_t i = 0; i < q->size(); i++) {
                    s += (i ? ", " : "") + (*q)[i].str();
                }
                res.transcript.push_back(s + ")");
            }
        }
    }
    for (const auto &x : found) {
        res.transcript.push_back("vector residual " + fmt(kernel_residual(sb, K, x)));
    }
    return res;
}

std::optional<ProductVector> two_qutrit_product_step(const Subspace &range) {
    MatrixXd S = sym_coords_of(range, 2, 3);
    if (S.cols() < 5) {
        throw InputError("two_qutrit_product_step needs a range of dimension at least 5");
    }
    SymBasis sb(2, 3);
    MatrixXd K = complement(S, sb.size());
    if (K.cols() == 0) {
        return ProductVector::from_real(VectorXd::Unit(3, 0), 2);
    }
    VectorXd l = K.col(0);
    // Quadratic form x^T L x = <l, phi(x)>.
    MatrixXd L = MatrixXd::Zero(3, 3);
    for (int a = 0; a < sb.size(); a++) {
        int i = sb.multisets()[a][0];
        int j = sb.multisets()[a][1];
        if (i == j) {
            L(i, i) = l[a];
        } else {
            L(i, j) = L(j, i) = l[a] * sb.weights()[a] / 2;
        }
    }
    auto accept = [&](const VectorXd &x) -> std::optional<ProductVector> {
        if (x.norm() == 0) {
            return std::nullopt;
        }
        if (kernel_residual(sb, K, x) < 1e-9) {
            return ProductVector::from_real(x, 2);
        }
        return std::nullopt;
    };
    for (int i = 0; i < 3; i++) {
        if (auto p = accept(VectorXd::Unit(3, i))) {
            return p;
        }
    }
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (const auto &pr : pairs) {
        int i = pr[0];
        int j = pr[1];
        // x = t e_i + e_j gives L_ii t^2 + 2 L_ij t + L_jj = 0.
        for (double t : real_quadratic_roots(L(i, i), 2 * L(i, j), L(j, j))) {
            VectorXd x = VectorXd::Unit(3, j);
            x[i] = t;
            if (auto p = accept(x)) {
                return p;
            }
        }
    }
    // An isotropic vector of an indefinite form mixes the two eigenvectors of opposite sign.
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(L);
    double lo = es.eigenvalues()[0];
    double hi = es.eigenvalues()[2];
    if (lo <= 0 && hi >= 0) {
        VectorXd x = std::sqrt(std::max(hi, 0.0)) * es.eigenvectors().col(0) + std::sqrt(std::max(-lo, 0.0)) * es.eigenvectors().col(2);
        if (auto p = accept(x)) {
            return p;
        }
    }
    return std::nullopt;
}

BipartiteSearchResult bipartite_product_vectors(const Subspace &range, int dA, int dB, const ProductSearchOptions &opts) {
    if (range.ambient != static_cast<Eigen::Index>(dA) * dB) {
        throw InputError("range dimension does not equal dA * dB");
    }
    MatrixXd R = range.real_basis();
    MatrixXd K = complement(orthonormalize(R), range.ambient);
    BipartiteSearchResult res;
    auto resid = [&](const VectorXd &x, const VectorXd &y) -> VectorXd {
        VectorXd xy(dA * dB);
        for (int i = 0; i < dA; i++) {
            xy.segment(i * dB, dB) = x[i] * y;
        }
        return K.transpose() * xy;
    };
    Rng rng(opts.seed);
    std::vector<ProductPair> found;
    for (int k = 0; k < opts.restarts; k++) {
        VectorXd x = rng.unit_vector(dA);
        VectorXd y = rng.unit_vector(dB);
        VectorXd r = resid(x, y);
        double mu = 1e-3;
        for (int it = 0; it < 300 && r.norm() > 1e-15; it++) {
            // Jacobian with respect to (x, y), projected on the tangent spaces of both spheres.
            MatrixXd J(K.cols(), dA + dB);
            for (int i = 0; i < dA; i++) {
                VectorXd e = VectorXd::Unit(dA, i);
                J.col(i) = resid(e, y);
            }
            for (int j = 0; j < dB; j++) {
                VectorXd e = VectorXd::Unit(dB, j);
                J.col(dA + j) = resid(x, e);
            }
            MatrixXd P = MatrixXd::Zero(dA + dB, dA + dB);
            P.topLeftCorner(dA, dA) = MatrixXd::Identity(dA, dA) - x * x.transpose();
            P.bottomRightCorner(dB, dB) = MatrixXd::Identity(dB, dB) - y * y.transpose();
            J = J * P;
            MatrixXd H = J.transpose() * J;
            VectorXd g = J.transpose() * r;
            bool improved = false;
            for (int tries = 0; tries < 12; tries++) {
                VectorXd step = (H + mu * MatrixXd::Identity(dA + dB, dA + dB)).ldlt().solve(-g);
                VectorXd xn = (x + step.head(dA)).normalized();
                VectorXd yn = (y + step.tail(dB)).normalized();
                VectorXd rn = resid(xn, yn);
                if (rn.norm() < r.norm()) {
                    x = xn;
                    y = yn;
                    r = rn;
                    mu = std::max(mu / 3, 1e-15);
                    improved = true;
                    break;
                }
                mu *= 4;
            }
            if (!improved) {
                break;
            }
        }
        if (r.norm() < opts.residual_tol) {
            VectorXd cx = canonical_sign(x);
            VectorXd cy = canonical_sign(y);
            bool dup = false;
            for (const auto &f : found) {
                if (line_angle(f.x, cx) < opts.dedup_angle && line_angle(f.y, cy) < opts.dedup_angle) {
                    dup = true;
                }
            }
            if (!dup) {
                found.push_back({cx, cy, r.norm()});
            }
        }
    }
    std::sort(found.begin(), found.end(), [](const ProductPair &a, const ProductPair &b) {
        for (Eigen::Index i = 0; i < a.x.size(); i++) {
            if (a.x[i] != b.x[i]) {
                return a.x[i] < b.x[i];
            }
        }
        for (Eigen::Index i = 0; i < a.y.size(); i++) {
            if (a.y[i] != b.y[i]) {
                return a.y[i] < b.y[i];
            }
        }
        return false;
    });
    res.pairs = std::move(found);
    return res;
}

}  // namespace cssep
