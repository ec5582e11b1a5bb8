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

#include "cssep/tensor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace cssep {

size_t checked_pow(size_t base, int exp, size_t limit) {
    size_t r = 1;
    for (int i = 0; i < exp; i++) {
        if (base != 0 && r > limit / base) {
            return limit + 1;
        }
        r *= base;
    }
    return r;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    double r = 1;
    for (int i = 1; i <= k; i++) {
        r = r * (n - k + i) / i;
    }
    return std::round(r);
}

MultiIndex canonical_index(const MultiIndex &idx) {
    for (int s : idx.slots) {
        if (s < 0 || s >= idx.dim) {
            throw InputError("slot " + std::to_string(s) + " out of range for dimension " + std::to_string(idx.dim));
        }
    }
    MultiIndex out = idx;
    std::sort(out.slots.begin(), out.slots.end());
    return out;
}

size_t flat_index(std::span<const int> slots, int dim) {
    size_t r = 0;
    for (int s : slots) {
        r = r * dim + s;
    }
    return r;
}

std::vector<int> unflatten(size_t offset, int dim, int length) {
    std::vector<int> out(length);
    for (int k = length - 1; k >= 0; k--) {
        out[k] = static_cast<int>(offset % dim);
        offset /= dim;
    }
    return out;
}

SymTensor::SymTensor(int order, int dim) : order_(order), dim_(dim) {
    if (order <= 0 || order % 2 != 0) {
        throw InputError("SymTensor order must be a positive even integer");
    }
    if (dim <= 0) {
        throw InputError("SymTensor dimension must be positive");
    }
}

std::vector<int> SymTensor::key(std::span<const int> idx) const {
    if (static_cast<int>(idx.size()) != order_) {
        throw InputError("index length does not match tensor order");
    }
    MultiIndex m{std::vector<int>(idx.begin(), idx.end()), dim_};
    return canonical_index(m).slots;
}

double SymTensor::get(std::span<const int> idx) const {
    auto it = entries_.find(key(idx));
    return it == entries_.end() ? 0.0 : it->second;
}

void SymTensor::set(std::span<const int> idx, double value) {
    auto k = key(idx);
    if (value == 0) {
        entries_.erase(k);
    } else {
        entries_[std::move(k)] = value;
    }
}

MatrixXd SymTensor::to_dense() const {
    int d = parties();
    size_t n = checked_pow(dim_, d, kMaxDenseDim);
    if (n > kMaxDenseDim) {
        throw InputError("dense expansion exceeds N^d <= 4096");
    }
    MatrixXd m(n, n);
    std::vector<int> idx(order_);
    for (size_t r = 0; r < n; r++) {
        auto rs = unflatten(r, dim_, d);
        std::copy(rs.begin(), rs.end(), idx.begin());
        for (size_t c = 0; c < n; c++) {
            auto cs = unflatten(c, dim_, d);
            std::copy(cs.begin(), cs.end(), idx.begin() + d);
            m(r, c) = get(idx);
        }
    }
    return m;
}

SymTensor SymTensor::from_dense(const MatrixXd &m, int parties, int dim, double drop_below) {
    SymTensor t(2 * parties, dim);
    // Enumerate sorted multisets of size 2d and read the entry at the split (first d | last d).
    std::vector<int> ms(2 * parties, 0);
    while (true) {
        size_t r = flat_index(std::span<const int>(ms.data(), parties), dim);
        size_t c = flat_index(std::span<const int>(ms.data() + parties, parties), dim);
        double v = m(r, c);
        if (std::abs(v) > drop_below) {
            t.entries_[ms] = v;
        }
        int k = 2 * parties - 1;
        while (k >= 0 && ms[k] == dim - 1) {
            k--;
        }
        if (k < 0) {
            break;
        }
        ms[k]++;
        for (int j = k + 1; j < 2 * parties; j++) {
            ms[j] = ms[k];
        }
    }
    return t;
}

VectorXd dicke(int d, int k) {
    if (d < 1 || d > 20) {
        throw InputError("dicke: party count out of range");
    }
    if (k < 0 || k > d) {
        throw InputError("dicke: k must lie in [0, d]");
    }
    size_t n = size_t{1} << d;
    VectorXd v = VectorXd::Zero(n);
    double amp = 1.0 / std::sqrt(binomial(d, k));
    for (size_t b = 0; b < n; b++) {
        // k zeros means d - k ones.
        if (std::popcount(b) == d - k) {
            v[b] = amp;
        }
    }
    return v;
}

namespace {

void check_length(Eigen::Index len, int d, int N) {
    size_t n = checked_pow(N, d, kMaxDenseDim * 64);
    if (d < 1 || N < 1 || static_cast<size_t>(len) != n) {
        throw InputError("vector length does not equal N^d");
    }
}

template <typename Vec>
Vec symmetrize(const Vec &v, int d, int N) {
    check_length(v.size(), d, N);
    // Average over each multiset orbit; this equals (1/d!) sum_pi U_pi.
    std::map<std::vector<int>, std::pair<typename Vec::Scalar, int>> orbit;
    std::vector<std::vector<int>> keys(v.size());
    for (Eigen::Index i = 0; i < v.size(); i++) {
        auto s = unflatten(i, N, d);
        std::sort(s.begin(), s.end());
        auto &acc = orbit[s];
        acc.first += v[i];
        acc.second += 1;
        keys[i] = std::move(s);
    }
    Vec out(v.size());
    for (Eigen::Index i = 0; i < v.size(); i++) {
        const auto &acc = orbit[keys[i]];
        out[i] = acc.first / static_cast<double>(acc.second);
    }
    return out;
}

}  // namespace

VectorXcd project_symmetric(const VectorXcd &v, int d, int N) {
    return symmetrize(v, d, N);
}

VectorXd project_symmetric(const VectorXd &v, int d, int N) {
    return symmetrize(v, d, N);
}

VectorXcd cyclic_shift(const VectorXcd &v, int d, int N) {
    check_length(v.size(), d, N);
    VectorXcd out(v.size());
    std::vector<int> t(d);
    for (Eigen::Index i = 0; i < v.size(); i++) {
        auto s = unflatten(i, N, d);
        for (int k = 0; k < d; k++) {
            t[(k + 1) % d] = s[k];
        }
        out[flat_index(t, N)] = v[i];
    }
    return out;
}

VectorXcd project_periodic(const VectorXcd &v, int d, int N) {
    check_length(v.size(), d, N);
    VectorXcd acc = v;
    VectorXcd cur = v;
    for (int k = 1; k < d; k++) {
        cur = cyclic_shift(cur, d, N);
        acc += cur;
    }
    return acc / static_cast<double>(d);
}

VectorXd tensor_power(const VectorXd &x, int d) {
    VectorXd out = VectorXd::Ones(1);
    for (int k = 0; k < d; k++) {
        VectorXd next(out.size() * x.size());
        for (Eigen::Index i = 0; i < out.size(); i++) {
            next.segment(i * x.size(), x.size()) = out[i] * x;
        }
        out = std::move(next);
    }
    return out;
}

VectorXcd tensor_power(const VectorXcd &x, int d) {
    VectorXcd out = VectorXcd::Ones(1);
    for (int k = 0; k < d; k++) {
        VectorXcd next(out.size() * x.size());
        for (Eigen::Index i = 0; i < out.size(); i++) {
            next.segment(i * x.size(), x.size()) = out[i] * x;
        }
        out = std::move(next);
    }
    return out;
}

SymBasis::SymBasis(int d, int N) : d_(d), N_(N) {
    if (d < 1 || N < 1) {
        throw InputError("SymBasis needs d >= 1 and N >= 1");
    }
    std::vector<int> ms(d, 0);
    while (true) {
        std::vector<int> e(N, 0);
        for (int s : ms) {
            e[s]++;
        }
        double orbit = std::tgamma(d + 1.0);
        for (int c : e) {
            orbit /= std::tgamma(c + 1.0);
        }
        lookup_[ms] = static_cast<int>(multisets_.size());
        multisets_.push_back(ms);
        exponents_.push_back(std::move(e));
        weights_.push_back(std::sqrt(std::round(orbit)));
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
}

MatrixXd SymBasis::embedding() const {
    size_t n = checked_pow(N_, d_, kMaxDenseDim);
    if (n > kMaxDenseDim) {
        throw InputError("symmetric embedding exceeds N^d <= 4096");
    }
    MatrixXd B = MatrixXd::Zero(n, size());
    for (size_t i = 0; i < n; i++) {
        auto s = unflatten(i, N_, d_);
        std::sort(s.begin(), s.end());
        int a = lookup_.at(s);
        B(i, a) = 1.0 / weights_[a];
    }
    return B;
}

VectorXd SymBasis::power_coords(const VectorXd &x) const {
    VectorXd out(size());
    for (int a = 0; a < size(); a++) {
        double p = weights_[a];
        for (int s : multisets_[a]) {
            p *= x[s];
        }
        out[a] = p;
    }
    return out;
}

MatrixXd SymBasis::power_jacobian(const VectorXd &x) const {
    MatrixXd J = MatrixXd::Zero(size(), N_);
    for (int a = 0; a < size(); a++) {
        const auto &e = exponents_[a];
        for (int i = 0; i < N_; i++) {
            if (e[i] == 0) {
                continue;
            }
            double p = weights_[a] * e[i];
            for (int j = 0; j < N_; j++) {
                int pw = e[j] - (j == i ? 1 : 0);
                for (int q = 0; q < pw; q++) {
                    p *= x[j];
                }
            }
            J(a, i) = p;
        }
    }
    return J;
}

int SymBasis::index_of(std::vector<int> multiset) const {
    std::sort(multiset.begin(), multiset.end());
    auto it = lookup_.find(multiset);
    if (it == lookup_.end()) {
        throw InputError("multiset not in symmetric basis");
    }
    return it->second;
}

}  // namespace cssep
