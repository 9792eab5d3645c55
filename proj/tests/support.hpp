#pragma once

#include <random>
#include <string>
#include <vector>

#include "qdimer/qdimer.hpp"

namespace testing_support {

using namespace qdimer;

inline std::string data(const std::string& name) { return std::string(QDIMER_TEST_DATA) + "/" + name; }

inline TorusGraph load_graph(const std::string& name) { return graph_from_json(read_json_file(data(name))); }

inline Rational random_rational(std::mt19937_64& rng, int lo = -5, int hi = 5, bool nonzero = true) {
    std::uniform_int_distribution<int> n(lo, hi), d(1, 6);
    int p = n(rng);
    while (nonzero && p == 0) p = n(rng);
    return Rational(p, d(rng));
}

inline Rational random_positive(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(1, 9);
    int p = d(rng), q = d(rng);
    return Rational(p, q);
}

inline LaurentPoly random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars, int max_terms = 4,
                               int max_exp = 2) {
    std::uniform_int_distribution<int> nt(1, max_terms), ex(-max_exp, max_exp), co(-3, 3);
    LaurentPoly p(vars);
    int n = nt(rng);
    for (int t = 0; t < n; ++t) {
        Exponent e(vars.size());
        for (auto& x : e) x = ex(rng);
        int c = co(rng);
        p.add_term(e, Rational(c == 0 ? 1 : c));
    }
    return p;
}

inline LaurentPoly random_monomial(std::mt19937_64& rng, const std::vector<std::string>& vars, int max_exp = 3) {
    std::uniform_int_distribution<int> ex(-max_exp, max_exp);
    Exponent e(vars.size());
    for (auto& x : e) x = ex(rng);
    return LaurentPoly::monomial(vars, e);
}

/// Independent evaluation straight off the term map.
inline Rational eval_terms(const LaurentPoly& p, const std::map<std::string, Rational>& at) {
    Rational s = 0;
    for (const auto& [e, c] : p.terms()) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            const Rational& v = at.at(p.variables()[i]);
            int k = e[i];
            for (; k > 0; --k) t = t * v;
            for (; k < 0; ++k) t = t / v;
        }
        s = s + t;
    }
    return s;
}

/// Oracle: every subset of edges, kept when it covers each vertex exactly once.
inline std::vector<std::vector<int>> matchings_by_subsets(const TorusGraph& g) {
    std::vector<int> ids;
    for (const auto& [id, e] : g.edges) ids.push_back(id);
    std::vector<std::vector<int>> out;
    const std::size_t n = ids.size();
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        std::map<int, int> cover;
        std::vector<int> chosen;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1ul << i)) {
                chosen.push_back(ids[i]);
                ++cover[g.edge(ids[i]).black];
                ++cover[g.edge(ids[i]).white];
            }
        if (cover.size() != g.vertices.size()) continue;
        bool ok = true;
        for (const auto& [v, c] : cover) ok = ok && c == 1;
        if (ok) out.push_back(chosen);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Weight of a matching computed directly from edge face labels.
inline LaurentPoly weight_by_hand(const TorusGraph& g, const std::vector<int>& m, const std::vector<std::string>& vars) {
    LaurentPoly w(vars, 1);
    for (int id : m) {
        const Edge& e = g.edge(id);
        for (const auto& lab : {e.face_left, e.face_right}) {
            const FaceInfo& f = g.face(lab);
            if (!f.frozen) w = w * LaurentPoly::variable(vars, var_name(f.var)).inverse();
        }
    }
    return w;
}

/// Builders up to the sizes the suites use.
inline const BuilderOutput& builder(CartanType t, int r) {
    static std::map<std::pair<int, int>, BuilderOutput> cache;
    auto key = std::make_pair(t == CartanType::A ? 0 : 1, r);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build(cartan(t, r))).first;
    return it->second;
}

} // namespace testing_support
