#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "torus_graph.hpp"

namespace qdimer {

/// A perfect matching as its sorted edge-id list.
struct PerfectMatching {
    std::vector<int> edges;

    PerfectMatching() = default;
    explicit PerfectMatching(std::vector<int> e) : edges(std::move(e)) { std::sort(edges.begin(), edges.end()); }
    bool contains(int e) const { return std::binary_search(edges.begin(), edges.end(), e); }
    friend auto operator<=>(const PerfectMatching&, const PerfectMatching&) = default;
};

inline bool is_perfect(const TorusGraph& g, const PerfectMatching& m) {
    std::set<int> covered;
    for (int id : m.edges) {
        auto it = g.edges.find(id);
        if (it == g.edges.end()) return false;
        if (!covered.insert(it->second.black).second || !covered.insert(it->second.white).second) return false;
    }
    return covered.size() == g.vertices.size();
}

/// All perfect matchings, canonical order (lexicographic on sorted edge ids).
inline std::vector<PerfectMatching> enumerate_matchings(const TorusGraph& g) {
    std::vector<int> blacks;
    int whites = 0;
    for (const auto& [id, v] : g.vertices) {
        if (v.color == Color::black) blacks.push_back(id);
        else ++whites;
    }
    std::vector<PerfectMatching> out;
    if (static_cast<int>(blacks.size()) != whites) return out;

    std::map<int, std::vector<std::pair<int, int>>> adj;  // black -> (edge, white)
    for (const auto& [id, e] : g.edges) adj[e.black].push_back({id, e.white});

    std::set<int> used_white;
    std::vector<int> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == blacks.size()) {
            out.emplace_back(chosen);
            return;
        }
        for (auto [eid, w] : adj[blacks[i]]) {
            if (used_white.count(w)) continue;
            used_white.insert(w);
            chosen.push_back(eid);
            rec(i + 1);
            chosen.pop_back();
            used_white.erase(w);
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

/// w(M) = prod over matched edges of (A_i A_j)^{-1}.
inline LaurentPoly matching_weight(const TorusGraph& g, const PerfectMatching& m, const std::vector<std::string>& vars) {
    Exponent e(vars.size(), 0);
    for (int id : m.edges) {
        const Edge& ed = g.edge(id);
        bump_face(g, ed.face_left, -1, vars, e);
        bump_face(g, ed.face_right, -1, vars, e);
    }
    return LaurentPoly::monomial(vars, e);
}
inline LaurentPoly matching_weight(const TorusGraph& g, const PerfectMatching& m) {
    return matching_weight(g, m, face_variables(g));
}

/// Least cyclic rotation of the step sequence.
inline OrientedLoop canonical_loop(OrientedLoop loop) {
    if (loop.empty()) return loop;
    OrientedLoop best = loop;
    for (std::size_t r = 1; r < loop.size(); ++r) {
        std::rotate(loop.begin(), loop.begin() + 1, loop.end());
        if (loop < best) best = loop;
    }
    return best;
}

inline std::string loop_key(const OrientedLoop& loop) {
    std::string s;
    for (Step st : loop) {
        if (!s.empty()) s += ",";
        s += std::to_string(st.edge) + (st.dir == Direction::black_to_white ? "+" : "-");
    }
    return s;
}

struct RelativeCycle {
    std::vector<OrientedLoop> components;  // canonical, sorted
    Homology homology;
};

/// M - M0: matched edges of M run black-to-white, those of M0 white-to-black;
/// edges in both cancel.
inline RelativeCycle relative_cycle(const TorusGraph& g, const PerfectMatching& m, const PerfectMatching& m0) {
    std::set<int> sm(m.edges.begin(), m.edges.end()), s0(m0.edges.begin(), m0.edges.end());
    std::set<int> diff;
    for (int e : sm)
        if (!s0.count(e)) diff.insert(e);
    for (int e : s0)
        if (!sm.count(e)) diff.insert(e);

    std::map<int, std::vector<int>> at;  // vertex -> symmetric-difference edges
    for (int e : diff) {
        at[g.edge(e).black].push_back(e);
        at[g.edge(e).white].push_back(e);
    }
    for (const auto& [v, es] : at)
        if (es.size() != 2) throw StructureError("relative cycle is not a union of loops; inputs are not perfect matchings");

    RelativeCycle rc;
    std::set<int> seen;
    for (int e0 : diff) {
        if (seen.count(e0)) continue;
        OrientedLoop loop;
        int e = e0;
        while (!seen.count(e)) {
            seen.insert(e);
            Step s{e, sm.count(e) ? Direction::black_to_white : Direction::white_to_black};
            loop.push_back(s);
            int h = head(g, s);
            const auto& pair = at[h];
            e = pair[0] == e ? pair[1] : pair[0];
        }
        rc.homology += loop_homology(g, loop);
        rc.components.push_back(canonical_loop(std::move(loop)));
    }
    std::sort(rc.components.begin(), rc.components.end());
    return rc;
}

} // namespace qdimer
