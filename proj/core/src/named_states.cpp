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

#include "cssep/named_states.hpp"

#include <cmath>
#include <limits>

#include <boost/math/tools/toms748_solve.hpp>

#include "cssep/product_search.hpp"
#include "cssep/tensor.hpp"

namespace cssep {

namespace {

VectorXd phi(const VectorXd &x) {
    return tensor_power(x, 2);
}

DensityMatrix normalized_4x4(const MatrixXd &m) {
    return DensityMatrix::from_real(m / m.trace(), 2, 4);
}

}  // namespace

std::vector<VectorXd> sigma_generators() {
    std::vector<VectorXd> xs;
    for (int i = 0; i < 4; i++) {
        xs.push_back(VectorXd::Unit(4, i));
    }
    VectorXd v(4);
    v << 1, 1, 1, 1;
    xs.push_back(v);
    v << 1, 2, 3, 4;
    xs.push_back(v);
    v << 1, -2, 3, -4;
    xs.push_back(v);
    v << 1, -8.0 / 3, 1, -8.0 / 3;
    xs.push_back(v);
    return xs;
}

MatrixXd sigma_matrix(const std::array<double, 7> &weights) {
    auto xs = sigma_generators();
    MatrixXd m = MatrixXd::Zero(16, 16);
    for (int i = 0; i < 7; i++) {
        VectorXd p = phi(xs[i]);
        m += weights[i] * p * p.transpose();
    }
    return m;
}

NamedState build_sigma(const std::array<double, 7> &weights) {
    NamedState s{"sigma", {}, normalized_4x4(MatrixXd::Identity(16, 16)), ""};
    for (int i = 0; i < 7; i++) {
        if (!(weights[i] > 0)) {
            throw InputError("sigma weights must be positive (weight " + std::to_string(i) + ")");
        }
        s.params["w" + std::to_string(i)] = weights[i];
    }
    MatrixXd m = sigma_matrix(weights);
    s.params["trace"] = m.trace();
    s.state = normalized_4x4(m);
    s.description = "rank-7 separable 4x4 CS state built from x_0..x_6";
    return s;
}

double max_subtraction(const MatrixXd &m) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
    double top = es.eigenvalues().cwiseAbs().maxCoeff();
    VectorXd p = phi(sigma_generators()[7]);
    double inv = 0;
    VectorXd proj = VectorXd::Zero(p.size());
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        if (es.eigenvalues()[i] > 1e-10 * top) {
            double c = es.eigenvectors().col(i).dot(p);
            inv += c * c / es.eigenvalues()[i];
            proj += c * es.eigenvectors().col(i);
        }
    }
    if ((proj - p).norm() > 1e-9 * p.norm()) {
        throw NumericError("phi_7 is not in the range");
    }
    return 1 / inv;
}

NamedState build_entangled_rank6(const std::array<double, 7> &weights, std::optional<double> lambda) {
    NamedState s = build_sigma(weights);
    MatrixXd m = sigma_matrix(weights);
    double lmax = max_subtraction(m);
    double l = lambda.value_or(lmax);
    if (!(l > 0)) {
        throw InputError("subtracted weight must be positive");
    }
    VectorXd p = phi(sigma_generators()[7]);
    MatrixXd r = m - l * p * p.transpose();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(r, Eigen::EigenvaluesOnly);
    double min_ev = es.eigenvalues().minCoeff();
    if (min_ev < -1e-12 * es.eigenvalues().cwiseAbs().maxCoeff()) {
        throw InputError("subtracted weight " + std::to_string(l) + " exceeds the PSD limit " + std::to_string(lmax));
    }
    s.name = "entangled-rank6";
    s.params["lambda"] = l;
    s.params["lambda_max"] = lmax;
    s.params["trace"] = r.trace();
    s.state = normalized_4x4(r);
    s.description = "sigma minus the largest PSD multiple of phi_7 phi_7^T";
    return s;
}

RankSixCoefficients conditioned_coefficients(double l3, double l4, double l5, double l7) {
    RankSixCoefficients c;
    c.l[3] = l3;
    c.l[4] = l4;
    c.l[5] = l5;
    c.l[6] = l5;
    c.l[7] = l7;
    c.l[0] = l3 + 3040 * l5 - 11000.0 / 81 * l7;
    c.l[1] = l3 + 2016 * l5;
    c.l[2] = l3 + 1056 * l5 - 11000.0 / 81 * l7;
    return c;
}

MatrixXd rank_six_matrix(const RankSixCoefficients &c) {
    auto xs = sigma_generators();
    MatrixXd m = MatrixXd::Zero(16, 16);
    for (int i = 0; i < 8; i++) {
        VectorXd p = phi(xs[i]);
        m += (i == 7 ? -c.l[7] : c.l[i]) * p * p.transpose();
    }
    return m;
}

RankSixCoefficients solve_conditioned(double l3, double l4, double l5) {
    if (!(l3 > 0 && l4 > 0 && l5 > 0)) {
        throw InputError("conditioned coefficients must be positive");
    }
    // g(l7) = max_subtraction(M(l7)) - l7 is decreasing: larger l7 lowers l_0 and l_2.
    auto g = [&](double l7) {
        RankSixCoefficients c = conditioned_coefficients(l3, l4, l5, l7);
        c.l[7] = 0;
        if (!(std::min(c.l[0], c.l[2]) > 0)) {
            return -l7;  // phi_7 has left the range; nothing can be subtracted
        }
        return max_subtraction(rank_six_matrix(c)) - l7;
    };
    RankSixCoefficients base = conditioned_coefficients(l3, l4, l5, 0);
    double hi = std::min(base.l[0], base.l[2]) * 81.0 / 11000.0;
    if (!(g(0) > 0) || !(g(hi) < 0)) {
        throw NumericError("no subtracted weight keeps l_0 and l_2 positive at the PSD boundary");
    }
    boost::uintmax_t iters = 200;
    auto root = boost::math::tools::toms748_solve(g, 0.0, hi, boost::math::tools::eps_tolerance<double>(52), iters);
    return conditioned_coefficients(l3, l4, l5, 0.5 * (root.first + root.second));
}

NamedState build_nonnegative_conditioned(double l3, double l4, double l5) {
    RankSixCoefficients c = solve_conditioned(l3, l4, l5);
    MatrixXd m = rank_six_matrix(c);
    if (m.minCoeff() < -1e-12 * m.cwiseAbs().maxCoeff()) {
        throw NumericError("conditioned state has a negative entry; choose a smaller l_5");
    }
    m = m.cwiseMax(0.0);
    NamedState s{"nonnegative-conditioned", {}, normalized_4x4(m), "entrywise nonnegative rank-6 CS state"};
    for (int i = 0; i < 8; i++) {
        s.params["l" + std::to_string(i)] = c.l[i];
    }
    s.params["trace"] = m.trace();
    return s;
}

EdgeExtreme check_edge_extreme(const DensityMatrix &rho) {
    if (rho.dims() != std::vector<int>{4, 4}) {
        throw InputError("edge/extreme check needs a 4x4 state");
    }
    RangeKernel rk = range_kernel(rho);
    EdgeExtreme out;
    out.rank = rk.rank;
    if (rk.rank != 6) {
        throw InputError("edge/extreme check needs a rank-6 state (got " + std::to_string(rk.rank) + ")");
    }
    out.cs = is_cs(rho).ok;
    out.ppt = is_ppt(rho);
    if (out.cs) {
        ProductSearchResult search = symmetric_product_vectors(rk.range, 2, 4);
        out.transcript = search.transcript;
        out.product_vectors = static_cast<int>(search.vectors.size());
        out.search_complete = search.complete;
        out.edge = out.ppt && search.vectors.empty() && search.complete;
        out.extreme = out.edge;
        out.transcript.push_back(out.edge ? "no real symmetric product vector in the range; exhaustive enumeration"
                                          : "range contains a real symmetric product vector or the search is incomplete");
        return out;
    }
    BipartiteSearchResult search = bipartite_product_vectors(rk.range, 4, 4);
    out.product_vectors = static_cast<int>(search.pairs.size());
    out.search_complete = false;
    if (!search.pairs.empty()) {
        out.transcript.push_back("found " + std::to_string(search.pairs.size()) + " real product vector(s) in the range");
    } else {
        out.transcript.push_back("multistart found no product vector; edge property not certified");
    }
    out.transcript.push_back("extremality is only certified for CS states");
    return out;
}

Blokovi build_blokovi(double a, double b, double c, double d, double eps) {
    if (a == 0 || !(b > 0) || !(c > 0) || !(d > 0) || !(eps >= 0)) {
        throw InputError("block-matrix state needs a != 0, b, c, d > 0 and eps >= 0");
    }
    Blokovi out{MatrixXd::Zero(4, 9), DensityMatrix(MatrixXcd::Zero(9, 9), 2, 3), DensityMatrix(MatrixXcd::Zero(16, 16), 2, 4),
                DensityMatrix(MatrixXcd::Zero(16, 16), 2, 4), DensityMatrix(MatrixXcd::Zero(16, 16), 2, 4),
                MatrixXd::Zero(16, 9), {}, VectorXd::Zero(4), VectorXd::Zero(4)};
    MatrixXd &C = out.C;
    // Column 3k + j is |k, j>.
    C(0, 1) = a;
    C(0, 2) = b;
    C(1, 2) = 1;
    C(1, 5) = c;
    C(2, 5) = 1;
    C(3, 3) = 1;
    C(3, 5) = -1 / d;
    C(0, 7) = -1 / b;
    C(1, 7) = 1;
    C(2, 6) = 1;
    C(2, 7) = -c;
    C(3, 6) = d;
    MatrixXd E = MatrixXd::Zero(16, 9);
    const int second[3] = {3, 1, 2};
    for (int k = 0; k < 3; k++) {
        for (int j = 0; j < 3; j++) {
            E(4 * k + j, 3 * k + j) = 1;
            out.P(4 * k + second[j], 3 * k + j) = 1;
        }
    }
    MatrixXd alpha = C.transpose() * C;
    out.alpha = DensityMatrix::from_real(alpha, 2, 3);
    MatrixXd a16 = E * alpha * E.transpose();
    MatrixXd b16 = out.P * alpha * out.P.transpose();
    out.alpha_embedded = DensityMatrix::from_real(a16, 2, 4);
    out.beta = DensityMatrix::from_real(b16, 2, 4);
    out.rho = DensityMatrix::from_real(a16 + eps * b16, 2, 4);
    MatrixXd rows(8, 16);
    rows << C * E.transpose(), C * out.P.transpose();
    for (Eigen::Index r = 0; r < rows.rows(); r++) {
        bool seen = false;
        for (const auto &g : out.gamma) {
            seen = seen || (g - rows.row(r).transpose()).norm() < 1e-14;
        }
        if (!seen) {
            out.gamma.push_back(rows.row(r).transpose());
        }
    }
    out.x << 0, 1, 1 + d, 0;
    out.y << 1, 0, 0, -1;
    return out;
}

HPerturbation build_h_perturbation(const DensityMatrix &rho) {
    if (rho.parties() != 2 || !rho.uniform() || rho.local_dim() < 2) {
        throw InputError("H perturbation needs a two-party state with local dimension >= 2");
    }
    int N = rho.local_dim();
    VectorXd plus = VectorXd::Zero(N * N);
    VectorXd minus = VectorXd::Zero(N * N);
    plus[1] = 1;
    plus[N] = 1;
    minus[0] = 1;
    minus[N + 1] = -1;
    RangeKernel rk = range_kernel(rho);
    if (rk.range.residual(plus.cast<cplx>()) > 1e-9 || rk.range.residual(minus.cast<cplx>()) > 1e-9) {
        throw InputError("|01>+|10> and |00>-|11> must both lie in the range");
    }
    HPerturbation out;
    out.H = plus * plus.transpose() - minus * minus.transpose();
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho.matrix());
    const VectorXd &ev = es.eigenvalues();
    int r = rk.rank;
    MatrixXcd U = es.eigenvectors().rightCols(r);
    VectorXd s = ev.tail(r).cwiseSqrt().cwiseInverse();
    MatrixXcd K = s.asDiagonal() * (U.adjoint() * out.H.cast<cplx>() * U) * s.asDiagonal();
    Eigen::SelfAdjointEigenSolver<MatrixXcd> ks((K + K.adjoint()) / 2, Eigen::EigenvaluesOnly);
    double kmin = ks.eigenvalues().minCoeff();
    double kmax = ks.eigenvalues().maxCoeff();
    double inf = std::numeric_limits<double>::infinity();
    out.eps_hi = kmin < 0 ? -1 / kmin : inf;
    out.eps_lo = kmax > 0 ? -1 / kmax : -inf;
    return out;
}

std::vector<std::string> named_state_names() {
    return {"sigma", "entangled-rank6", "nonnegative-conditioned", "blokovi-alpha", "blokovi-rho"};
}

NamedState named_state(const std::string &name) {
    if (name == "sigma") {
        return build_sigma();
    }
    if (name == "entangled-rank6") {
        return build_entangled_rank6();
    }
    if (name == "nonnegative-conditioned") {
        return build_nonnegative_conditioned();
    }
    if (name == "blokovi-alpha" || name == "blokovi-rho") {
        Blokovi b = build_blokovi();
        const DensityMatrix &m = name == "blokovi-alpha" ? b.alpha : b.rho;
        NamedState s{name, {{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}, {"eps", 1e-2}}, m.normalized(), ""};
        s.description = name == "blokovi-alpha" ? "two-qutrit PPT entangled state of rank four"
                                                : "4x4 PPT entangled state of rank six with product vectors in its range";
        return s;
    }
    throw InputError("unknown state name '" + name + "'");
}

}  // namespace cssep
