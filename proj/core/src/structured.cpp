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

#include "cssep/structured.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cssep/tensor.hpp"
#include "random.hpp"

namespace cssep {

namespace {

double max_abs(const MatrixXd &m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

bool depends_on(const MatrixXd &s, bool on_sum, double tol) {
    double scale = std::max(max_abs(s), 1e-300);
    Eigen::Index n = s.rows();
    for (Eigen::Index i = 0; i < n; i++) {
        for (Eigen::Index j = 0; j < n; j++) {
            double ref = on_sum ? (i + j < n ? s(0, i + j) : s(i + j - n + 1, n - 1)) : s(std::abs(i - j), 0);
            if (std::abs(s(i, j) - ref) > tol * scale) {
                return false;
            }
        }
    }
    return true;
}

VectorXd sym_eigenvalues(const MatrixXd &m) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es((m + m.transpose()) / 2, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

void require_psd(const MatrixXd &m, const char *what) {
    VectorXd ev = sym_eigenvalues(m);
    double top = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    if (ev.minCoeff() < -1e-12 * top) {
        throw InputError(std::string(what) + " is not positive semidefinite (min eigenvalue " +
                         std::to_string(ev.minCoeff()) + ")");
    }
}

int rank_above(const MatrixXd &m, double cutoff) {
    return static_cast<int>((sym_eigenvalues(m).array() > cutoff).count());
}

// Sorts nodes and sums the weights of nodes closer than 1e-8.
template <class T, class Key>
std::vector<T> merge_close(std::vector<T> items, Key key) {
    std::sort(items.begin(), items.end(), [&](const T &a, const T &b) { return key(a) < key(b); });
    std::vector<T> out;
    for (const auto &t : items) {
        if (!out.empty() && std::abs(key(out.back()) - key(t)) < 1e-8) {
            out.back().weight += t.weight;
        } else {
            out.push_back(t);
        }
    }
    return out;
}

// Finite nodes from the pencil (shifted block, leading block) of size r.
std::vector<double> prony_nodes(const MatrixXd &H, int r) {
    MatrixXd H0 = H.topLeftCorner(r, r);
    MatrixXd H1 = H.block(1, 0, r, r);
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> ges((H1 + H1.transpose()) / 2, (H0 + H0.transpose()) / 2);
    if (ges.info() != Eigen::Success) {
        throw NumericError("Hankel pencil is not definite");
    }
    std::vector<double> t(ges.eigenvalues().data(), ges.eigenvalues().data() + r);
    return t;
}

std::vector<double> hankel_moments(const MatrixXd &H) {
    Eigen::Index n = H.rows();
    std::vector<double> h(2 * n - 1);
    for (Eigen::Index k = 0; k < 2 * n - 1; k++) {
        Eigen::Index i = std::min(k, n - 1);
        h[k] = H(i, k - i);
    }
    return h;
}

std::vector<VandermondeTerm> fit_hankel(const MatrixXd &H, std::vector<double> nodes, bool infinite) {
    Eigen::Index n = H.rows();
    std::vector<double> h = hankel_moments(H);
    std::vector<VandermondeTerm> terms;
    for (double t : nodes) {
        terms.push_back({1.0, t, false});
    }
    terms = merge_close(terms, [](const VandermondeTerm &v) { return v.node; });
    Eigen::Index rows = infinite ? 2 * n - 2 : 2 * n - 1;
    MatrixXd A(rows, terms.size());
    VectorXd b(rows);
    for (Eigen::Index k = 0; k < rows; k++) {
        b[k] = h[k];
        for (size_t i = 0; i < terms.size(); i++) {
            A(k, i) = std::pow(terms[i].node, static_cast<double>(k));
        }
    }
    if (!terms.empty()) {
        VectorXd w = A.colPivHouseholderQr().solve(b);
        for (size_t i = 0; i < terms.size(); i++) {
            terms[i].weight = w[i];
        }
    }
    if (infinite) {
        double rest = h[2 * n - 2];
        for (const auto &t : terms) {
            rest -= t.weight * std::pow(t.node, static_cast<double>(2 * n - 2));
        }
        terms.push_back({rest, 0.0, true});
    }
    return terms;
}

}  // namespace

MatrixXd dicke_weights(int d) {
    MatrixXd v = MatrixXd::Zero(d + 1, d + 1);
    for (int i = 0; i <= d; i++) {
        v(i, i) = std::sqrt(binomial(d, i));
    }
    return v;
}

MatrixXd dicke_basis(int d) {
    if (d < 1 || checked_pow(2, d, kMaxDenseDim) > kMaxDenseDim) {
        throw InputError("too many qubits for a dense state");
    }
    MatrixXd D(Eigen::Index{1} << d, d + 1);
    for (int k = 0; k <= d; k++) {
        D.col(k) = dicke(d, k);
    }
    return D;
}

MatrixXd DickeMatrix::moment() const {
    VectorXd inv = dicke_weights(d).diagonal().cwiseInverse();
    return inv.asDiagonal() * m * inv.asDiagonal();
}

std::string DickeMatrix::structure() const {
    if (diagonal) {
        return "diagonal";
    }
    if (hankel) {
        return "hankel";
    }
    if (toeplitz) {
        return "toeplitz";
    }
    return "generic";
}

DickeMatrix make_dicke_matrix(const MatrixXd &m, double flag_tol) {
    if (m.rows() != m.cols() || m.rows() < 2) {
        throw InputError("Dicke matrix must be square of size at least 2");
    }
    DickeMatrix out;
    out.m = (m + m.transpose()) / 2;
    out.d = static_cast<int>(m.rows()) - 1;
    double scale = std::max(max_abs(out.m), 1e-300);
    out.diagonal = (out.m - MatrixXd(out.m.diagonal().asDiagonal())).cwiseAbs().maxCoeff() <= flag_tol * scale;
    MatrixXd s = out.moment();
    out.hankel = depends_on(s, true, flag_tol);
    out.toeplitz = depends_on(s, false, flag_tol);
    return out;
}

DickeMatrix state_to_dicke_matrix(const DensityMatrix &rho, double flag_tol) {
    if (!rho.uniform() || rho.local_dim() != 2) {
        throw InputError("Dicke matrices need a multi-qubit state");
    }
    int d = rho.parties();
    MatrixXd D = dicke_basis(d);
    MatrixXcd mc = D.transpose() * rho.matrix() * D;
    double scale = std::max(1.0, rho.matrix().cwiseAbs().maxCoeff());
    if ((D * mc * D.transpose() - rho.matrix()).norm() > 1e-9 * scale) {
        throw InputError("range of the state escapes the symmetric subspace");
    }
    if (mc.imag().cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw InputError("Dicke matrix is not real");
    }
    return make_dicke_matrix(mc.real(), flag_tol);
}

DensityMatrix dicke_matrix_to_state(const MatrixXcd &m) {
    int d = static_cast<int>(m.rows()) - 1;
    if (m.rows() != m.cols() || d < 1) {
        throw InputError("Dicke matrix must be square of size at least 2");
    }
    MatrixXd D = dicke_basis(d);
    return DensityMatrix(D * m * D.transpose(), d, 2);
}

MatrixXd hankel_matrix(const VectorXd &a) {
    if (a.size() < 3 || a.size() % 2 == 0) {
        throw InputError("Hankel data must have odd length 2d+1 with d >= 1");
    }
    Eigen::Index n = (a.size() + 1) / 2;
    MatrixXd H(n, n);
    for (Eigen::Index i = 0; i < n; i++) {
        for (Eigen::Index j = 0; j < n; j++) {
            H(i, j) = a[i + j];
        }
    }
    return H;
}

MatrixXd toeplitz_matrix(const VectorXd &a) {
    if (a.size() < 2) {
        throw InputError("Toeplitz data must have length d+1 with d >= 1");
    }
    Eigen::Index n = a.size();
    MatrixXd T(n, n);
    for (Eigen::Index i = 0; i < n; i++) {
        for (Eigen::Index j = 0; j < n; j++) {
            T(i, j) = a[std::abs(i - j)];
        }
    }
    return T;
}

DensityMatrix hankel_to_state(const VectorXd &a) {
    MatrixXd H = hankel_matrix(a);
    require_psd(H, "Hankel matrix");
    int d = static_cast<int>(H.rows()) - 1;
    MatrixXd V = dicke_weights(d);
    return dicke_matrix_to_state((V * H * V).cast<cplx>());
}

VectorXd VandermondeTerm::vector(int n) const {
    VectorXd z = VectorXd::Zero(n);
    if (infinite) {
        z[n - 1] = 1;
        return z;
    }
    double p = 1;
    for (int k = 0; k < n; k++) {
        z[k] = p;
        p *= node;
    }
    return z;
}

VectorXd VandermondeTerm::local() const {
    // Basis order is (|0>, |1>); D_{d,k} has k zeros.
    VectorXd x(2);
    if (infinite) {
        x << 1, 0;
    } else {
        x << node, 1;
    }
    return x;
}

MatrixXd vandermonde_sum(const std::vector<VandermondeTerm> &terms, int n) {
    MatrixXd out = MatrixXd::Zero(n, n);
    for (const auto &t : terms) {
        VectorXd z = t.vector(n);
        out += t.weight * z * z.transpose();
    }
    return out;
}

std::vector<VandermondeTerm> hankel_psd_decompose(const MatrixXd &H, double tol) {
    Eigen::Index n = H.rows();
    if (n != H.cols() || n < 2) {
        throw InputError("Hankel matrix must be square of size at least 2");
    }
    if (n > 12) {
        throw InputError("Hankel decomposition is limited to size 12");
    }
    if (!depends_on(H, true, 1e-12)) {
        throw InputError("matrix is not Hankel");
    }
    require_psd(H, "Hankel matrix");
    VectorXd ev = sym_eigenvalues(H);
    double cutoff = tol * std::max(ev.maxCoeff(), 1e-300);
    int r = static_cast<int>((ev.array() > cutoff).count());
    std::vector<VandermondeTerm> terms;
    if (r == 0) {
        return terms;
    }
    if (r == n) {
        // Flat extension by one moment; the extra odd moment is free and set to zero.
        std::vector<double> h = hankel_moments(H);
        h.push_back(0.0);
        VectorXd b(n);
        for (Eigen::Index i = 0; i < n; i++) {
            b[i] = h[n + i];
        }
        h.push_back(b.dot(H.ldlt().solve(b)));
        MatrixXd E = hankel_matrix(Eigen::Map<VectorXd>(h.data(), h.size()));
        terms = fit_hankel(E, prony_nodes(E, static_cast<int>(n)), false);
    } else if (rank_above(H.topLeftCorner(r, r), cutoff) == r) {
        terms = fit_hankel(H, prony_nodes(H, r), false);
    } else {
        int rf = r - 1;
        if (rf > 0 && rank_above(H.topLeftCorner(rf, rf), cutoff) != rf) {
            throw NumericError("Hankel matrix has a degenerate leading block");
        }
        terms = fit_hankel(H, rf > 0 ? prony_nodes(H, rf) : std::vector<double>{}, true);
    }
    double scale = std::max(ev.maxCoeff(), 1e-300);
    std::vector<VandermondeTerm> kept;
    for (const auto &t : terms) {
        if (t.weight < -1e-9 * scale) {
            throw NumericError("Hankel decomposition produced a negative weight");
        }
        if (t.weight > 1e-14 * scale) {
            kept.push_back(t);
        }
    }
    if ((vandermonde_sum(kept, static_cast<int>(n)) - H).norm() > 1e-8 * std::max(1.0, H.norm())) {
        throw NumericError("Hankel decomposition does not reconstruct the input");
    }
    return kept;
}

DensityMatrix toeplitz_to_state(const VectorXd &a, ToeplitzConvention convention) {
    MatrixXd T = toeplitz_matrix(a);
    int d = static_cast<int>(T.rows()) - 1;
    MatrixXd M = T;
    if (convention == ToeplitzConvention::Weighted) {
        MatrixXd V = dicke_weights(d);
        M = V * T * V;
    }
    require_psd(M, "Dicke matrix");
    double tr = M.trace();
    if (!(tr > 0)) {
        throw InputError("Toeplitz state has zero trace");
    }
    return dicke_matrix_to_state((M / tr).cast<cplx>());
}

namespace {

std::vector<FourierTerm> fourier_rank_deficient(const MatrixXd &T, int r, double scale) {
    Eigen::Index n = T.rows();
    MatrixXd H0 = T.topLeftCorner(r, r);
    MatrixXd H1 = T.block(1, 0, r, r);
    Eigen::EigenSolver<MatrixXd> es(H0.ldlt().solve(H1), false);
    std::vector<FourierTerm> terms;
    for (Eigen::Index i = 0; i < r; i++) {
        double th = std::arg(es.eigenvalues()[i]);
        if (std::abs(std::abs(es.eigenvalues()[i]) - 1) > 1e-6) {
            throw NumericError("Toeplitz pencil has a node off the unit circle");
        }
        terms.push_back({1.0, th});
    }
    terms = merge_close(terms, [](const FourierTerm &t) { return t.theta; });
    MatrixXd A(2 * n, terms.size());
    VectorXd b = VectorXd::Zero(2 * n);
    for (Eigen::Index k = 0; k < n; k++) {
        b[k] = T(k, 0);
        for (size_t i = 0; i < terms.size(); i++) {
            A(k, i) = std::cos(k * terms[i].theta);
            A(n + k, i) = std::sin(k * terms[i].theta);
        }
    }
    VectorXd w = A.colPivHouseholderQr().solve(b);
    for (size_t i = 0; i < terms.size(); i++) {
        terms[i].weight = w[i];
        if (w[i] < -1e-9 * scale) {
            throw NumericError("Toeplitz decomposition produced a negative weight");
        }
    }
    return terms;
}

}  // namespace

std::vector<FourierTerm> toeplitz_psd_decompose(const MatrixXd &T, double tol) {
    Eigen::Index n = T.rows();
    if (n != T.cols() || n < 2) {
        throw InputError("Toeplitz matrix must be square of size at least 2");
    }
    if (!depends_on(T, false, 1e-12)) {
        throw InputError("matrix is not symmetric Toeplitz");
    }
    require_psd(T, "Toeplitz matrix");
    VectorXd ev = sym_eigenvalues(T);
    double scale = std::max(ev.maxCoeff(), 1e-300);
    double cutoff = tol * scale;
    std::vector<FourierTerm> terms;
    int r = static_cast<int>((ev.array() > cutoff).count());
    if (r == 0) {
        return terms;
    }
    if (r == n) {
        // Pisarenko: the smallest eigenvalue times the identity is a uniform comb of n nodes.
        double lmin = ev.minCoeff();
        MatrixXd rest = T - lmin * MatrixXd::Identity(n, n);
        int r2 = rank_above(rest, cutoff);
        if (r2 > 0) {
            terms = fourier_rank_deficient(rest, r2, scale);
        }
        for (Eigen::Index k = 0; k < n; k++) {
            double th = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
            if (th > std::numbers::pi) {
                th -= 2 * std::numbers::pi;
            }
            terms.push_back({lmin / static_cast<double>(n), th});
        }
        terms = merge_close(terms, [](const FourierTerm &t) { return t.theta; });
    } else {
        terms = fourier_rank_deficient(T, r, scale);
    }
    std::vector<FourierTerm> kept;
    MatrixXcd recon = MatrixXcd::Zero(n, n);
    for (const auto &t : terms) {
        if (t.weight <= 1e-14 * scale) {
            continue;
        }
        kept.push_back(t);
        VectorXcd u(n);
        for (Eigen::Index k = 0; k < n; k++) {
            u[k] = std::polar(1.0, k * t.theta);
        }
        recon += t.weight * u * u.adjoint();
    }
    if ((recon - T.cast<cplx>()).norm() > 1e-8 * std::max(1.0, T.norm())) {
        throw NumericError("Toeplitz decomposition does not reconstruct the input");
    }
    return kept;
}

Certificate classify_symmetric(const DensityMatrix &rho, const EngineOptions &opts) {
    DickeMatrix dm = state_to_dicke_matrix(rho);
    if (is_cs(rho, opts.tol.cs).ok) {
        return classify(rho, opts);
    }
    int d = rho.parties();
    Certificate cert;
    cert.evidence["dicke_structure_toeplitz"] = dm.toeplitz ? 1 : 0;
    if (d == 1) {
        cert.verdict = Verdict::Separable;
        cert.rule = rules::kSingleParty;
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho.matrix());
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); i++) {
            if (es.eigenvalues()[i] > opts.tol.rank * es.eigenvalues().cwiseAbs().maxCoeff()) {
                cert.decomposition.push_back(
                    {es.eigenvalues()[i], ProductVector::from_complex(es.eigenvectors().col(i), 1)});
            }
        }
        cert.has_decomposition = true;
        cert.evidence["reconstruction_error"] = reconstruction_error(rho, cert.decomposition);
        return cert;
    }
    std::vector<double> pt = ppt_min_eigenvalues(rho);
    double top = rho.eigenvalues().cwiseAbs().maxCoeff();
    double worst = *std::min_element(pt.begin(), pt.end());
    cert.evidence["min_pt_eigenvalue"] = worst;
    if (worst < -opts.tol.psd * top) {
        cert.verdict = Verdict::Entangled;
        cert.rule = rules::kPartialTransposeNegative;
        cert.transcript.push_back("a single-party partial transpose has eigenvalue " + std::to_string(worst));
        return cert;
    }
    if (dm.toeplitz) {
        try {
            std::vector<FourierTerm> f = toeplitz_psd_decompose(dm.moment(), opts.tol.rank);
            double scale = std::pow(2.0, d);
            for (const auto &t : f) {
                VectorXcd x(2);
                x << std::polar(1.0, t.theta), 1.0;
                cert.decomposition.push_back({t.weight * scale, ProductVector::from_complex(x / std::sqrt(2.0), d)});
            }
            double err = reconstruction_error(rho, cert.decomposition);
            cert.evidence["reconstruction_error"] = err;
            cert.transcript.push_back("moment matrix is Toeplitz; " + std::to_string(f.size()) + " Fourier nodes");
            if (err <= 1e-8 * std::max(1.0, rho.matrix().norm())) {
                cert.verdict = Verdict::Separable;
                cert.rule = rules::kToeplitzVandermonde;
                cert.has_decomposition = true;
                return cert;
            }
            cert.transcript.push_back("Fourier decomposition failed the reconstruction check");
        } catch (const NumericError &e) {
            cert.transcript.push_back(std::string("Toeplitz decomposition failed: ") + e.what());
        }
        cert.decomposition.clear();
    }
    if (d == 2) {
        cert.verdict = Verdict::Separable;
        cert.rule = std::string(rules::kTwoQubitPpt) + rules::kNotFoundSuffix;
        return cert;
    }
    cert.verdict = Verdict::Undetermined;
    cert.rule = rules::kNoRule;
    return cert;
}

namespace {

uint64_t derive_seed(uint64_t seed, int index) {
    // splitmix64 finalizer
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<uint64_t>(index) + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

VectorXd low_rank_column(Rng &rng, int d) {
    int k = 1 + static_cast<int>(rng.uniform() * ((d + 1) / 2));
    VectorXd a = VectorXd::Zero(d + 1);
    for (int j = 0; j < k; j++) {
        double th = rng.uniform(0, std::numbers::pi);
        double w = rng.uniform(0.1, 1.0);
        for (int m = 0; m <= d; m++) {
            a[m] += w * std::cos(m * th);
        }
    }
    return a / a[0];
}

}  // namespace

ScanReport toeplitz_scan(int samples, int d, uint64_t seed, ToeplitzConvention convention) {
    if (samples < 0) {
        throw InputError("sample count must be nonnegative");
    }
    if (d < 1 || d > 6) {
        throw InputError("toeplitz scan supports 1 <= d <= 6");
    }
    ScanReport report;
    report.samples = samples;
    report.d = d;
    report.seed = seed;
    report.convention = convention;
    MatrixXd V = dicke_weights(d);
    for (int i = 0; i < samples; i++) {
        ScanRecord rec;
        rec.index = i;
        rec.seed = derive_seed(seed, i);
        Rng rng(rec.seed);
        auto dicke_of = [&](const VectorXd &a) {
            MatrixXd T = toeplitz_matrix(a);
            return convention == ToeplitzConvention::Weighted ? MatrixXd(V * T * V) : T;
        };
        bool found = false;
        if (i % 4 != 3) {
            rec.kind = "rejection";
            for (int attempt = 0; attempt < 10000 && !found; attempt++) {
                VectorXd a(d + 1);
                a[0] = 1;
                for (int k = 1; k <= d; k++) {
                    a[k] = rng.uniform(-1, 1);
                }
                if (sym_eigenvalues(dicke_of(a)).minCoeff() >= 0) {
                    rec.a = a;
                    found = true;
                }
            }
        }
        if (!found) {
            rec.kind = "low-rank";
            rec.a = low_rank_column(rng, d);
        }
        rec.min_eigenvalue = sym_eigenvalues(dicke_of(rec.a)).minCoeff();
        try {
            DensityMatrix rho = toeplitz_to_state(rec.a, convention);
            EngineOptions opts;
            opts.seed = rec.seed;
            Certificate c = classify_symmetric(rho, opts);
            rec.verdict = c.verdict;
            rec.rule = c.rule;
            rec.transcript = c.transcript;
            if (c.has_decomposition) {
                rec.reconstruction_error = reconstruction_error(rho, c.decomposition);
            }
        } catch (const std::exception &e) {
            rec.verdict = Verdict::Undetermined;
            rec.rule = rules::kNoRule;
            rec.transcript.push_back(std::string("error: ") + e.what());
        }
        switch (rec.verdict) {
            case Verdict::Separable:
                report.separable++;
                break;
            case Verdict::Entangled:
                report.entangled++;
                break;
            default:
                report.undetermined++;
        }
        report.records.push_back(std::move(rec));
    }
    return report;
}

}  // namespace cssep
