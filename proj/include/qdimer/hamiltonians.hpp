#pragma once

#include <map>
#include <string>
#include <vector>

#include "graph_moves.hpp"
#include "matchings.hpp"
#include "rational_function.hpp"

namespace qdimer {

/// H_{(i,j)} = sum over matchings M with [M - M0] = (i,j) of w(M)/w(M0).
struct HamiltonianTable {
    std::map<Homology, LaurentPoly> entries;
    PerfectMatching reference;
    std::vector<std::string> variables;
    std::size_t matching_count = 0;

    LaurentPoly at(Homology h) const {
        auto it = entries.find(h);
        return it == entries.end() ? LaurentPoly(variables) : it->second;
    }
};

/// [M - M0] without tracing components: M contributes +disp per edge, M0 -disp.
inline Homology relative_class(const TorusGraph& g, const PerfectMatching& m, const PerfectMatching& m0) {
    Z2 h;
    for (int e : m.edges) h += g.edge(e).disp;
    for (int e : m0.edges) h -= g.edge(e).disp;
    return h;
}

inline HamiltonianTable hamiltonian_table(const TorusGraph& g, const PerfectMatching& m0) {
    if (!is_perfect(g, m0)) throw PreconditionError("reference is not a perfect matching of the graph");
    HamiltonianTable t;
    t.reference = m0;
    t.variables = face_variables(g);
    LaurentPoly inv0 = matching_weight(g, m0, t.variables).inverse();
    auto all = enumerate_matchings(g);
    t.matching_count = all.size();
    for (const auto& m : all) {
        Homology h = relative_class(g, m, m0);
        LaurentPoly term = matching_weight(g, m, t.variables) * inv0;
        auto it = t.entries.find(h);
        if (it == t.entries.end()) t.entries.emplace(h, term);
        else it->second += term;
    }
    return t;
}

/// Table with weights substituted: variable A_i -> w[i].
inline std::map<Homology, LaurentPoly> substitute_table(const HamiltonianTable& t, const FaceWeights<LaurentPoly>& w) {
    std::map<std::string, LaurentPoly> img;
    for (const auto& [i, v] : w) img[var_name(i)] = v;
    std::map<Homology, LaurentPoly> out;
    for (const auto& [h, p] : t.entries) out.emplace(h, substitute(p, img));
    return out;
}

inline std::map<Homology, Rational> evaluate_table(const HamiltonianTable& t, const FaceWeights<Rational>& w) {
    std::map<std::string, Rational> pt;
    for (const auto& [i, v] : w) pt[var_name(i)] = v;
    std::map<Homology, Rational> out;
    for (const auto& [h, p] : t.entries) out.emplace(h, evaluate(p, pt));
    return out;
}

/// For non-Laurent weights (e.g. symbolic Q-system orbits).
inline std::map<Homology, RationalFunction> evaluate_table(const HamiltonianTable& t,
                                                          const FaceWeights<RationalFunction>& w) {
    std::map<std::string, RationalFunction> pt;
    for (const auto& [i, v] : w) pt[var_name(i)] = v;
    std::map<Homology, RationalFunction> out;
    for (const auto& [h, p] : t.entries) out.emplace(h, evaluate_rational(p, pt));
    return out;
}

namespace detail {

/// p with variable `name` replaced by num/den, cleared of denominators:
/// returns p~ = p(num/den) * num^a * den^b with a, b the smallest making it polynomial in num, den.
inline LaurentPoly clear_substitution(const LaurentPoly& p, const std::string& name, const LaurentPoly& num,
                                      const LaurentPoly& den, int& a, int& b) {
    const auto& target = num.variables();
    int idx = p.index_of(name);
    int lo = 0, hi = 0;
    if (idx >= 0)
        for (const auto& [e, c] : p.terms()) {
            lo = std::min(lo, e[static_cast<std::size_t>(idx)]);
            hi = std::max(hi, e[static_cast<std::size_t>(idx)]);
        }
    a = -lo;
    b = hi;
    std::vector<int> where(p.variables().size(), -1);
    for (std::size_t i = 0; i < p.variables().size(); ++i) {
        if (static_cast<int>(i) == idx) continue;
        auto it = std::find(target.begin(), target.end(), p.variables()[i]);
        if (it == target.end()) throw AlignmentError("variable '" + p.variables()[i] + "' unknown on the other side");
        where[i] = static_cast<int>(it - target.begin());
    }
    std::map<int, LaurentPoly> npow, dpow;
    auto pw = [](std::map<int, LaurentPoly>& cache, const LaurentPoly& base, int e) -> const LaurentPoly& {
        auto it = cache.find(e);
        if (it == cache.end()) it = cache.emplace(e, base.pow(e)).first;
        return it->second;
    };
    LaurentPoly out(target);
    for (const auto& [e, c] : p.terms()) {
        Exponent rest(target.size(), 0);
        int k = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (static_cast<int>(i) == idx) k = e[i];
            else if (e[i] != 0) rest[static_cast<std::size_t>(where[i])] += e[i];
        }
        out += LaurentPoly::monomial(target, rest, c) * pw(npow, num, k + a) * pw(dpow, den, b - k);
    }
    return out;
}

} // namespace detail

struct InvarianceReport {
    enum class Status { passed, failed, skipped };
    Status status = Status::passed;
    std::string diagnostic;
    std::vector<Homology> mismatched;
    std::size_t matchings_before = 0;
    std::size_t matchings_after = 0;
    std::vector<std::string> warnings;
};

inline const char* status_name(InvarianceReport::Status s) {
    switch (s) {
    case InvarianceReport::Status::passed: return "passed";
    case InvarianceReport::Status::failed: return "failed";
    case InvarianceReport::Status::skipped: return "skipped";
    }
    return "?";
}

/// Exact check that the Hamiltonians are unchanged by mutation at face k,
/// for generic face weights: with P = A_{k1}A_{k3} + A_{k2}A_{k4},
/// H_{G'}(A'_k = P/A_k) must equal H_G, compared after clearing P and A_k.
inline InvarianceReport check_move_invariance(const TorusGraph& g, const PerfectMatching& m0, const std::string& k) {
    InvarianceReport rep;
    QuadFace q = quad_face(g, k);
    int sides = 0;
    for (Step s : q.boundary)
        if (m0.contains(s.edge)) ++sides;
    if (sides != 1) {
        rep.status = InvarianceReport::Status::skipped;
        rep.diagnostic = "reference matching has " + std::to_string(sides) + " sides of face '" + k + "', needs exactly 1";
        return rep;
    }
    StructuralMutation sm = mutate_structure(g, k);
    rep.warnings = sm.warnings;
    PerfectMatching m1 = induce_matching(m0, sm.records);
    if (!is_perfect(sm.graph, m1)) {
        rep.status = InvarianceReport::Status::failed;
        rep.diagnostic = "induced reference matching is not perfect";
        return rep;
    }
    HamiltonianTable before = hamiltonian_table(g, m0);
    HamiltonianTable after = hamiltonian_table(sm.graph, m1);
    rep.matchings_before = before.matching_count;
    rep.matchings_after = after.matching_count;

    const auto& vars = before.variables;
    auto sym = symbolic_weights(g);
    LaurentPoly one(vars, 1);
    auto val = [&](const std::string& lab) { return g.face(lab).frozen ? one : sym.at(g.face(lab).var); };
    LaurentPoly num = val(q.neighbors[0]) * val(q.neighbors[2]) + val(q.neighbors[1]) * val(q.neighbors[3]);
    LaurentPoly den = val(k);
    std::string mutated = var_name(sm.new_var);

    std::set<Homology> classes;
    for (const auto& [h, p] : before.entries) classes.insert(h);
    for (const auto& [h, p] : after.entries) classes.insert(h);
    for (Homology h : classes) {
        int a = 0, b = 0;
        LaurentPoly rhs = detail::clear_substitution(after.at(h), mutated, num, den, a, b);
        LaurentPoly lhs = before.at(h) * num.pow(a) * den.pow(b);
        if (!(lhs == rhs)) rep.mismatched.push_back(h);
    }
    if (!rep.mismatched.empty()) {
        rep.status = InvarianceReport::Status::failed;
        rep.diagnostic = std::to_string(rep.mismatched.size()) + " homology classes differ after mutating '" + k + "'";
    }
    return rep;
}

} // namespace qdimer
