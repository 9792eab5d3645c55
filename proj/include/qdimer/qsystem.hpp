#pragma once

#include <string>
#include <vector>

#include "laurent.hpp"
#include "matrix.hpp"
#include "values.hpp"

namespace qdimer {

enum class CartanType { A, B };

struct CartanSpec {
    CartanType type = CartanType::A;
    int rank = 1;
    IntMatrix c;         // Cartan matrix
    std::vector<int> t;  // t_alpha
    std::string name() const { return std::string(type == CartanType::A ? "A" : "B") + std::to_string(rank); }
};

inline CartanSpec cartan(CartanType type, int r) {
    if (r < 1) throw DomainError("rank must be positive");
    if (type == CartanType::B && r < 2) throw DomainError("type B needs rank >= 2");
    CartanSpec s;
    s.type = type;
    s.rank = r;
    s.c = int_zeros(static_cast<std::size_t>(r), static_cast<std::size_t>(r));
    s.t.assign(static_cast<std::size_t>(r), 1);
    for (int i = 0; i < r; ++i) {
        s.c[i][i] = 2;
        if (i > 0) s.c[i][i - 1] = -1;
        if (i + 1 < r) s.c[i][i + 1] = -1;
    }
    if (type == CartanType::B) {
        s.c[r - 1][r - 2] = -2;
        s.t[r - 1] = 2;
    }
    return s;
}

/// B = [[C - C^T, C^T], [-C, 0]].
inline IntMatrix exchange_matrix(const CartanSpec& s) {
    const std::size_t r = static_cast<std::size_t>(s.rank);
    IntMatrix b = int_zeros(2 * r, 2 * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            b[i][j] = s.c[i][j] - s.c[j][i];
            b[i][r + j] = s.c[j][i];
            b[r + i][j] = -s.c[i][j];
        }
    return b;
}

/// Symbol names for the initial Q values in cluster order A_1..A_{2r}:
/// Q{a}_0 and Q{a}_1 stand for Q_{a,0}, Q_{a,1} (for the short node of B these are Q_{r,0}, Q_{r,1}).
inline std::vector<std::string> q_symbol_names(const CartanSpec& s) {
    std::vector<std::string> out;
    for (int k = 0; k < 2; ++k)
        for (int a = 1; a <= s.rank; ++a) out.push_back("Q" + std::to_string(a) + "_" + std::to_string(k));
    return out;
}

/// State at step k in cluster order: A_i = Q_{i,k} (i <= r), A_{r+i} = Q_{i,k+1};
/// for type B the short node carries Q_{r,2k} and Q_{r,2k+1} instead.
template <class V>
struct QState {
    CartanSpec spec;
    int k = 0;
    std::vector<V> a;
};

template <class V>
QState<V> q_step(const QState<V>& s) {
    const int r = s.spec.rank;
    if (static_cast<int>(s.a.size()) != 2 * r) throw DomainError("Q-state has the wrong length");
    for (std::size_t i = 0; i < s.a.size(); ++i)
        if (value_is_zero(s.a[i]))
            throw SingularOrbitError("Q-state value " + std::to_string(i + 1) + " is zero at step " + std::to_string(s.k));
    const V one = one_like(s.a[0]);
    auto cur = [&](int al) -> V { return (al < 1 || al > r) ? one : s.a[static_cast<std::size_t>(al - 1)]; };
    auto nxt = [&](int al) -> V { return (al < 1 || al > r) ? one : s.a[static_cast<std::size_t>(r + al - 1)]; };
    QState<V> out{s.spec, s.k + 1, std::vector<V>(s.a.size())};
    for (int al = 1; al <= r; ++al) out.a[static_cast<std::size_t>(al - 1)] = nxt(al);
    if (s.spec.type == CartanType::A) {
        for (int al = 1; al <= r; ++al)
            out.a[static_cast<std::size_t>(r + al - 1)] =
                divide_exact(nxt(al) * nxt(al) + nxt(al + 1) * nxt(al - 1), cur(al));
        return out;
    }
    // type B: Q_{r,2k+2} first, then the long nodes, then Q_{r,2k+3}
    V qr2 = divide_exact(nxt(r) * nxt(r) + cur(r - 1) * nxt(r - 1), cur(r));
    auto nxt_or = [&](int al) -> V { return al == r ? qr2 : nxt(al); };
    for (int al = 1; al <= r - 1; ++al)
        out.a[static_cast<std::size_t>(r + al - 1)] =
            divide_exact(nxt(al) * nxt(al) + nxt_or(al + 1) * nxt(al - 1), cur(al));
    V qr3 = divide_exact(qr2 * qr2 + nxt(r - 1) * nxt(r - 1), nxt(r));
    out.a[static_cast<std::size_t>(r - 1)] = qr2;
    out.a[static_cast<std::size_t>(2 * r - 1)] = qr3;
    return out;
}

template <class V>
QState<V> q_initial(const CartanSpec& s, std::vector<V> a) {
    if (static_cast<int>(a.size()) != 2 * s.rank) throw DomainError("initial Q-state needs 2r values");
    return {s, 0, std::move(a)};
}

inline QState<LaurentPoly> q_symbolic_initial(const CartanSpec& s) {
    auto names = q_symbol_names(s);
    auto vars = sorted_variables(names);
    std::vector<LaurentPoly> a;
    for (const auto& n : names) a.push_back(LaurentPoly::variable(vars, n));
    return {s, 0, a};
}

} // namespace qdimer
