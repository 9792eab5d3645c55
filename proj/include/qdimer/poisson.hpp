#pragma once

#include <map>
#include <string>
#include <vector>

#include "hamiltonians.hpp"
#include "matrix.hpp"
#include "qsystem.hpp"
#include "torus_graph.hpp"

namespace qdimer {

/// Log-canonical bracket {A_i, A_j} = Omega_ij A_i A_j.
struct PoissonStructure {
    std::vector<std::string> vars;
    RationalMatrix omega;
};

/// Omega = -B^{-1}.
inline PoissonStructure poisson_from_exchange(const IntMatrix& b, std::vector<std::string> vars) {
    if (vars.size() != b.size()) throw DomainError("one variable per row of B is required");
    return {std::move(vars), -RationalMatrix::from_ints(b).inverse()};
}

inline PoissonStructure poisson_from_cartan(const CartanSpec& s) {
    std::vector<std::string> vars;
    for (int i = 1; i <= 2 * s.rank; ++i) vars.push_back(var_name(i));
    return poisson_from_exchange(exchange_matrix(s), std::move(vars));
}

namespace detail {
inline LaurentPoly into_structure(const LaurentPoly& p, const PoissonStructure& ps) {
    try {
        return p.with_variables(ps.vars);
    } catch (const AlignmentError& e) {
        throw DomainError(std::string("polynomial uses a variable outside the Poisson structure: ") + e.what());
    }
}
} // namespace detail

/// a^T Omega b for exponent tuples.
inline Rational log_pairing(const Exponent& a, const Exponent& b, const PoissonStructure& ps) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) s += ps.omega(i, j) * Rational(a[i] * b[j]);
    }
    return s;
}

inline LaurentPoly bracket(const LaurentPoly& p0, const LaurentPoly& q0, const PoissonStructure& ps) {
    LaurentPoly p = detail::into_structure(p0, ps), q = detail::into_structure(q0, ps);
    const std::size_t n = ps.vars.size();
    // Omega b for each term of q, reused against every term of p
    std::vector<std::pair<const Exponent*, std::vector<Rational>>> qo;
    for (const auto& [eb, cb] : q.terms()) {
        std::vector<Rational> ob(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (eb[j] != 0) ob[i] += ps.omega(i, j) * Rational(eb[j]);
        qo.push_back({&eb, std::move(ob)});
    }
    LaurentPoly out(ps.vars);
    Exponent e(n);
    std::size_t t = 0;
    for (const auto& [ea, ca] : p.terms()) {
        t = 0;
        for (const auto& [eb, cb] : q.terms()) {
            const auto& ob = qo[t++].second;
            Rational coef = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (ea[i] != 0) coef += Rational(ea[i]) * ob[i];
            if (coef.is_zero()) continue;
            for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, coef * ca * cb);
        }
    }
    return out;
}

/// epsilon with {w1, w2} = epsilon w1 w2, read off the loop weights' exponents.
inline Rational epsilon_pairing(const OrientedLoop& l1, const OrientedLoop& l2, const TorusGraph& g,
                                const PoissonStructure& ps) {
    LaurentPoly w1 = detail::into_structure(loop_weight(g, l1), ps);
    LaurentPoly w2 = detail::into_structure(loop_weight(g, l2), ps);
    return log_pairing(w1.terms().begin()->first, w2.terms().begin()->first, ps);
}

struct CommutationReport {
    bool all_commute = true;
    std::string status;  // "theorem" or "conjecture evidence"
    std::vector<Homology> classes;
    std::vector<std::vector<bool>> commute;
    std::map<std::pair<Homology, Homology>, LaurentPoly> nonzero;
};

inline CommutationReport commutation_check(const HamiltonianTable& t, const PoissonStructure& ps, std::string status) {
    CommutationReport rep;
    rep.status = std::move(status);
    for (const auto& [h, p] : t.entries) rep.classes.push_back(h);
    const std::size_t n = rep.classes.size();
    rep.commute.assign(n, std::vector<bool>(n, true));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            LaurentPoly b = bracket(t.entries.at(rep.classes[i]), t.entries.at(rep.classes[j]), ps);
            if (b.is_zero()) continue;
            rep.all_commute = false;
            rep.commute[i][j] = rep.commute[j][i] = false;
            rep.nonzero.emplace(std::make_pair(rep.classes[i], rep.classes[j]), b);
        }
    return rep;
}

struct CasimirReport {
    bool product_is_one = true;
    bool central = true;
    std::vector<OrientedLoop> zigzags;
    std::vector<LaurentPoly> weights;
    std::vector<Homology> classes;
    std::vector<std::string> failures;
    bool ok() const { return product_is_one && central; }
};

/// Zig-zag weights: their product is 1 and each commutes with every face-loop weight.
inline CasimirReport casimir_check(const TorusGraph& g, const PoissonStructure& ps) {
    CasimirReport rep;
    rep.zigzags = zigzag_loops(g);
    LaurentPoly prod(ps.vars, 1);
    for (const auto& z : rep.zigzags) {
        rep.weights.push_back(detail::into_structure(loop_weight(g, z), ps));
        rep.classes.push_back(loop_homology(g, z));
        prod = prod * rep.weights.back();
    }
    if (!(prod == LaurentPoly(ps.vars, 1))) {
        rep.product_is_one = false;
        rep.failures.push_back("product of zig-zag weights is " + prod.to_string());
    }
    auto faces = trace_faces(g);
    for (std::size_t i = 0; i < rep.weights.size(); ++i)
        for (const auto& f : faces) {
            LaurentPoly y = detail::into_structure(loop_weight(g, f.boundary), ps);
            LaurentPoly b = bracket(rep.weights[i], y, ps);
            if (!b.is_zero()) {
                rep.central = false;
                rep.failures.push_back("zig-zag " + std::to_string(i) + " does not commute with the loop around face '" +
                                       f.label + "'");
            }
        }
    return rep;
}

} // namespace qdimer
