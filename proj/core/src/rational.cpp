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

#include "cssep/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <numeric>

namespace cssep {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;
using RMat = std::vector<std::vector<cpp_rational>>;

cpp_rational to_q(const Fraction &f) {
    return cpp_rational(cpp_int(f.num), cpp_int(f.den));
}

Fraction from_q(const cpp_rational &q) {
    cpp_int n = boost::multiprecision::numerator(q);
    cpp_int d = boost::multiprecision::denominator(q);
    cpp_int lim = cpp_int(std::numeric_limits<int64_t>::max());
    if (boost::multiprecision::abs(n) > lim || d > lim) {
        throw NumericError("exact value does not fit a 64-bit fraction");
    }
    return Fraction(static_cast<int64_t>(n), static_cast<int64_t>(d));
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(RMat &m) {
    std::vector<int> pivots;
    if (m.empty()) {
        return pivots;
    }
    size_t rows = m.size();
    size_t cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; c++) {
        size_t p = r;
        while (p < rows && m[p][c] == 0) {
            p++;
        }
        if (p == rows) {
            continue;
        }
        std::swap(m[p], m[r]);
        cpp_rational inv = 1 / m[r][c];
        for (auto &v : m[r]) {
            v *= inv;
        }
        for (size_t i = 0; i < rows; i++) {
            if (i != r && m[i][c] != 0) {
                cpp_rational f = m[i][c];
                for (size_t j = c; j < cols; j++) {
                    m[i][j] -= f * m[r][j];
                }
            }
        }
        pivots.push_back(static_cast<int>(c));
        r++;
    }
    m.resize(r);
    return pivots;
}

RMat to_rmat(const std::vector<FractionVector> &rows) {
    RMat m;
    for (const auto &row : rows) {
        std::vector<cpp_rational> q;
        for (const auto &f : row) {
            q.push_back(to_q(f));
        }
        m.push_back(std::move(q));
    }
    return m;
}

}  // namespace

Fraction::Fraction(int64_t n, int64_t d) {
    if (d == 0) {
        throw InputError("zero denominator");
    }
    if (d < 0) {
        n = -n;
        d = -d;
    }
    int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) {
        g = 1;
    }
    num = n / g;
    den = d / g;
}

std::string Fraction::str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::vector<std::vector<int>> monomial_order(int d, int N) {
    std::vector<std::vector<int>> out;
    std::vector<int> ms(d, 0);
    while (true) {
        out.push_back(ms);
        int k = d - 1;
        while (k >= 0 && ms[k] == N - 1) {
            k--;
        }
        if (k < 0) {
            break;
        }
        ms[k]++;
        for (int j = k + 1; j < d; j++) {
            ms[j] = ms[k];
        }
    }
    return out;
}

std::vector<FractionVector> exact_vanishing_forms(const std::vector<FractionVector> &generators, int d) {
    if (generators.empty()) {
        throw InputError("need at least one generator");
    }
    int N = static_cast<int>(generators[0].size());
    auto mons = monomial_order(d, N);
    size_t M = mons.size();
    // Rows are generators, columns monomial values; forms are the right kernel of this matrix.
    RMat A;
    for (const auto &g : generators) {
        if (static_cast<int>(g.size()) != N) {
            throw InputError("generators have different lengths");
        }
        std::vector<cpp_rational> row;
        for (const auto &m : mons) {
            cpp_rational v = 1;
            for (int s : m) {
                v *= to_q(g[s]);
            }
            row.push_back(v);
        }
        A.push_back(std::move(row));
    }
    auto pivots = rref(A);
    std::vector<bool> is_pivot(M, false);
    for (int p : pivots) {
        is_pivot[p] = true;
    }
    RMat kernel;
    for (size_t f = 0; f < M; f++) {
        if (is_pivot[f]) {
            continue;
        }
        std::vector<cpp_rational> v(M, 0);
        v[f] = 1;
        for (size_t r = 0; r < pivots.size(); r++) {
            v[pivots[r]] = -A[r][f];
        }
        kernel.push_back(std::move(v));
    }
    rref(kernel);
    std::vector<FractionVector> out;
    for (auto &row : kernel) {
        // Scale to coprime integers.
        cpp_int l = 1;
        for (const auto &v : row) {
            l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(v));
        }
        cpp_int g = 0;
        for (const auto &v : row) {
            cpp_int n = boost::multiprecision::numerator(v) * (l / boost::multiprecision::denominator(v));
            g = boost::multiprecision::gcd(g, boost::multiprecision::abs(n));
        }
        FractionVector fv;
        for (const auto &v : row) {
            cpp_int n = boost::multiprecision::numerator(v) * (l / boost::multiprecision::denominator(v));
            fv.push_back(from_q(cpp_rational(n / (g == 0 ? cpp_int(1) : g))));
        }
        out.push_back(std::move(fv));
    }
    return out;
}

Fraction exact_evaluate(const FractionVector &form, const FractionVector &point, int d) {
    int N = static_cast<int>(point.size());
    auto mons = monomial_order(d, N);
    if (form.size() != mons.size()) {
        throw InputError("form length does not match the monomial count");
    }
    cpp_rational s = 0;
    for (size_t i = 0; i < mons.size(); i++) {
        cpp_rational t = to_q(form[i]);
        for (int k : mons[i]) {
            t *= to_q(point[k]);
        }
        s += t;
    }
    return from_q(s);
}

bool exact_vanishes_all(const std::vector<FractionVector> &forms, const FractionVector &point, int d) {
    for (const auto &f : forms) {
        if (exact_evaluate(f, point, d).num != 0) {
            return false;
        }
    }
    return true;
}

int exact_rank(const std::vector<FractionVector> &rows) {
    RMat m = to_rmat(rows);
    return static_cast<int>(rref(m).size());
}

bool exact_same_span(const std::vector<FractionVector> &a, const std::vector<FractionVector> &b) {
    int ra = exact_rank(a);
    int rb = exact_rank(b);
    std::vector<FractionVector> both = a;
    both.insert(both.end(), b.begin(), b.end());
    return ra == rb && exact_rank(both) == ra;
}

std::optional<FractionVector> rationalize_direction(const VectorXd &x, int64_t max_den, double tol) {
    Eigen::Index p = 0;
    x.cwiseAbs().maxCoeff(&p);
    if (x[p] == 0) {
        return std::nullopt;
    }
    std::vector<std::pair<int64_t, int64_t>> ratios;
    int64_t common = 1;
    for (Eigen::Index i = 0; i < x.size(); i++) {
        double r = x[i] / x[p];
        // Continued fraction convergents.
        int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
        double v = r;
        bool done = false;
        for (int it = 0; it < 64; it++) {
            double a = std::floor(v);
            int64_t ai = static_cast<int64_t>(a);
            int64_t h2 = ai * h1 + h0;
            int64_t k2 = ai * k1 + k0;
            if (k2 > max_den) {
                break;
            }
            h0 = h1;
            h1 = h2;
            k0 = k1;
            k1 = k2;
            if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - r) <= tol) {
                done = true;
                break;
            }
            double frac = v - a;
            if (frac < 1e-15) {
                break;
            }
            v = 1 / frac;
        }
        if (!done) {
            return std::nullopt;
        }
        ratios.push_back({h1, k1});
        common = std::lcm(common, k1);
        if (common > max_den) {
            return std::nullopt;
        }
    }
    FractionVector out;
    for (auto [h, k] : ratios) {
        out.emplace_back(h * (common / k), 1);
    }
    // Divide by the gcd so the direction is a primitive integer vector.
    int64_t g = 0;
    for (const auto &f : out) {
        g = std::gcd(g, f.num < 0 ? -f.num : f.num);
    }
    for (auto &f : out) {
        f = Fraction(f.num / g, 1);
    }
    return out;
}

}  // namespace cssep
