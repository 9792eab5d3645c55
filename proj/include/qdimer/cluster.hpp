#pragma once

#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "values.hpp"

namespace qdimer {

inline int positive_part(int x) { return x > 0 ? x : 0; }

/// Matrix mutation: negate row and column k, and
/// B_ij += (|B_ik| B_kj + B_ik |B_kj|) / 2 elsewhere.
inline IntMatrix mutate_matrix(const IntMatrix& b, std::size_t k) {
    const std::size_t n = b.size();
    if (k >= n) throw DomainError("mutation index out of range");
    IntMatrix out = b;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == k || j == k) out[i][j] = -b[i][j];
            else out[i][j] = b[i][j] + (std::abs(b[i][k]) * b[k][j] + b[i][k] * std::abs(b[k][j])) / 2;
        }
    return out;
}

template <class V>
struct ClusterSeed {
    IntMatrix b;
    std::vector<V> vars;
    std::set<std::size_t> frozen;
    friend bool operator==(const ClusterSeed&, const ClusterSeed&) = default;
};

template <class V>
struct YSeed {
    IntMatrix b;
    std::vector<V> y;
    std::set<std::size_t> frozen;
    friend bool operator==(const YSeed&, const YSeed&) = default;
};

template <class S>
void check_seed_shape(const S& s, std::size_t nvals) {
    if (!is_skew_symmetric(s.b)) throw DomainError("exchange matrix must be square and skew-symmetric");
    if (s.b.size() != nvals) throw DomainError("seed has " + std::to_string(nvals) + " values for a " +
                                               std::to_string(s.b.size()) + "x" + std::to_string(s.b.size()) + " matrix");
}

/// A'_k = A_k^{-1} (prod_{B_jk>0} A_j^{B_jk} + prod_{B_jk<0} A_j^{-B_jk}).
template <class V>
ClusterSeed<V> mutate_seed(const ClusterSeed<V>& s, std::size_t k) {
    check_seed_shape(s, s.vars.size());
    if (k >= s.vars.size()) throw DomainError("mutation index out of range");
    if (s.frozen.count(k)) throw FrozenError("cannot mutate frozen index " + std::to_string(k));
    V pos = one_like(s.vars[k]), neg = one_like(s.vars[k]);
    for (std::size_t j = 0; j < s.vars.size(); ++j) {
        int bjk = s.b[j][k];
        if (bjk > 0) pos = pos * power(s.vars[j], bjk);
        else if (bjk < 0) neg = neg * power(s.vars[j], -bjk);
    }
    ClusterSeed<V> out = s;
    out.b = mutate_matrix(s.b, k);
    out.vars[k] = divide_exact(pos + neg, s.vars[k]);
    return out;
}

/// y'_k = y_k^{-1}; y'_i = y_i y_k^{[B_ki]+} (1 + y_k)^{-B_ki}.
template <class V>
YSeed<V> mutate_yseed(const YSeed<V>& s, std::size_t k) {
    check_seed_shape(s, s.y.size());
    if (k >= s.y.size()) throw DomainError("mutation index out of range");
    if (s.frozen.count(k)) throw FrozenError("cannot mutate frozen index " + std::to_string(k));
    const V& yk = s.y[k];
    V one_plus = one_like(yk) + yk;
    YSeed<V> out = s;
    out.b = mutate_matrix(s.b, k);
    for (std::size_t i = 0; i < s.y.size(); ++i) {
        if (i == k) {
            out.y[i] = inverse_of(yk);
            continue;
        }
        int bki = s.b[k][i];
        if (bki == 0) continue;
        if (bki > 0 && value_is_zero(one_plus)) throw SingularityError("1 + y_k vanishes in y-seed mutation");
        out.y[i] = s.y[i] * power(yk, positive_part(bki)) * power(one_plus, -bki);
    }
    return out;
}

/// y_j = prod_i A_i^{B_ij}.
template <class V>
YSeed<V> tau(const ClusterSeed<V>& s) {
    check_seed_shape(s, s.vars.size());
    YSeed<V> out{s.b, {}, s.frozen};
    for (std::size_t j = 0; j < s.vars.size(); ++j) {
        V y = one_like(s.vars[j]);
        for (std::size_t i = 0; i < s.vars.size(); ++i)
            if (s.b[i][j] != 0) y = y * power(s.vars[i], s.b[i][j]);
        out.y.push_back(y);
    }
    return out;
}

template <class V, class F>
auto map_values(const ClusterSeed<V>& s, F f) {
    using W = decltype(f(s.vars[0]));
    ClusterSeed<W> out{s.b, {}, s.frozen};
    for (const auto& v : s.vars) out.vars.push_back(f(v));
    return out;
}

} // namespace qdimer
