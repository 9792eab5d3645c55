#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "builders.hpp"
#include "hamiltonians.hpp"
#include "matchings.hpp"

namespace qdimer {

/// Loops occurring as components of M - M0, joined when they share a vertex.
struct ConflictGraph {
    std::vector<OrientedLoop> loops;  // canonical, sorted
    std::vector<LaurentPoly> gammas;  // loop weights in face variables
    std::vector<Homology> classes;
    std::vector<std::vector<bool>> adj;
    std::vector<std::string> variables;
    std::vector<std::vector<int>> realized;  // per matching, the component indices

    std::size_t size() const { return loops.size(); }
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> e;
        for (std::size_t i = 0; i < adj.size(); ++i)
            for (std::size_t j = i + 1; j < adj.size(); ++j)
                if (adj[i][j]) e.push_back({static_cast<int>(i), static_cast<int>(j)});
        return e;
    }
};

inline std::set<int> loop_vertices(const TorusGraph& g, const OrientedLoop& l) {
    std::set<int> vs;
    for (Step s : l) vs.insert(tail(g, s));
    return vs;
}

inline ConflictGraph extract_conflict_graph(const TorusGraph& g, const PerfectMatching& m0) {
    if (!is_perfect(g, m0)) throw PreconditionError("reference is not a perfect matching of the graph");
    ConflictGraph cg;
    cg.variables = face_variables(g);
    auto all = enumerate_matchings(g);
    std::vector<std::vector<OrientedLoop>> comps;
    std::set<OrientedLoop> distinct;
    for (const auto& m : all) {
        comps.push_back(relative_cycle(g, m, m0).components);
        for (const auto& c : comps.back()) distinct.insert(c);
    }
    cg.loops.assign(distinct.begin(), distinct.end());
    std::map<OrientedLoop, int> index;
    for (std::size_t i = 0; i < cg.loops.size(); ++i) {
        index[cg.loops[i]] = static_cast<int>(i);
        cg.gammas.push_back(loop_weight(g, cg.loops[i], cg.variables));
        cg.classes.push_back(loop_homology(g, cg.loops[i]));
    }
    for (const auto& cs : comps) {
        std::vector<int> ids;
        for (const auto& c : cs) ids.push_back(index.at(c));
        std::sort(ids.begin(), ids.end());
        cg.realized.push_back(std::move(ids));
    }
    std::vector<std::set<int>> vs;
    for (const auto& l : cg.loops) vs.push_back(loop_vertices(g, l));
    const std::size_t n = cg.loops.size();
    cg.adj.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            bool meet = std::any_of(vs[i].begin(), vs[i].end(), [&](int v) { return vs[j].count(v) > 0; });
            cg.adj[i][j] = cg.adj[j][i] = meet;
        }
    return cg;
}

/// Same, with the gammas rewritten through face weights (e.g. Q symbols).
inline ConflictGraph extract_conflict_graph(const TorusGraph& g, const FaceWeights<LaurentPoly>& w,
                                            const PerfectMatching& m0) {
    ConflictGraph cg = extract_conflict_graph(g, m0);
    std::map<std::string, LaurentPoly> img;
    for (const auto& [i, v] : w) img[var_name(i)] = v;
    for (auto& gm : cg.gammas) gm = substitute(gm, img);
    if (!cg.gammas.empty()) cg.variables = cg.gammas.front().variables();
    return cg;
}

/// All k-subsets of pairwise nonadjacent vertices, lexicographic.
inline std::vector<std::vector<int>> independent_sets(const ConflictGraph& cg, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    const int n = static_cast<int>(cg.size());
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < n; ++v) {
            bool ok = std::none_of(cur.begin(), cur.end(), [&](int u) {
                return cg.adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
            });
            if (!ok) continue;
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    if (k >= 0) rec(0);
    return out;
}

/// Sum over hard-particle configurations of size k of the gamma products.
inline LaurentPoly hard_particle_partition(const ConflictGraph& cg, int k) {
    LaurentPoly total(cg.variables);
    for (const auto& s : independent_sets(cg, k)) {
        LaurentPoly t(cg.variables, 1);
        for (int i : s) t = t * cg.gammas[static_cast<std::size_t>(i)];
        total += t;
    }
    return total;
}

struct HardParticleReport {
    bool ok = true;
    std::vector<std::string> failures;
    int max_particles = 0;
};

/// H_{(0,k)} = sum over k-particle configurations, plus the bijection between
/// matchings and configurations.
inline HardParticleReport verify_hard_particle_identity(const TorusGraph& g, const PerfectMatching& m0) {
    HardParticleReport rep;
    auto fail = [&](std::string m) {
        rep.ok = false;
        rep.failures.push_back(std::move(m));
    };
    ConflictGraph cg = extract_conflict_graph(g, m0);
    HamiltonianTable t = hamiltonian_table(g, m0);
    for (std::size_t i = 0; i < cg.size(); ++i)
        if (cg.classes[i] != Homology{0, 1}) fail("loop " + loop_key(cg.loops[i]) + " has class " + cg.classes[i].to_string());

    std::set<std::vector<int>> realized(cg.realized.begin(), cg.realized.end());
    if (realized.size() != cg.realized.size()) fail("two matchings give the same loop collection");
    std::set<std::vector<int>> configs;
    for (int k = 0;; ++k) {
        auto sets = independent_sets(cg, k);
        if (sets.empty()) break;
        rep.max_particles = k;
        configs.insert(sets.begin(), sets.end());
        LaurentPoly h = t.at({0, k});
        if (!(h == hard_particle_partition(cg, k))) fail("H_(0," + std::to_string(k) + ") differs from the k-particle sum");
    }
    for (const auto& [h, p] : t.entries)
        if (h.x != 0 || h.y < 0 || h.y > rep.max_particles) fail("unexpected homology class " + h.to_string());
    if (configs != realized) fail("matchings and hard-particle configurations are not in bijection");
    // adjacency by shared vertex must coincide with "never realized together"
    const std::size_t n = cg.size();
    std::vector<std::vector<bool>> together(n, std::vector<bool>(n, false));
    for (const auto& ids : cg.realized)
        for (int i : ids)
            for (int j : ids) together[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (cg.adj[i][j] == together[i][j])
                fail("loops " + std::to_string(i) + " and " + std::to_string(j) + ": co-occurrence disagrees with adjacency");
    return rep;
}

inline HardParticleReport verify_hard_particle_identity(const BuilderOutput& b) {
    return verify_hard_particle_identity(b.graph, b.reference);
}

/// Closed forms of the type-A loop weights in Q symbols:
/// gamma_{2a-1} = Q_{a-1,k} Q_{a,k+1} / (Q_{a,k} Q_{a-1,k+1}), gamma_{2a} = Q_{a-1,k} Q_{a+1,k+1} / (Q_{a,k} Q_{a,k+1}).
inline std::vector<LaurentPoly> gamma_closed_form_A(int r) {
    CartanSpec s = cartan(CartanType::A, r);
    auto vars = sorted_variables(q_symbol_names(s));
    auto q = [&](int a, int k) {
        if (a < 1 || a > r) return LaurentPoly(vars, 1);
        return LaurentPoly::variable(vars, "Q" + std::to_string(a) + "_" + std::to_string(k));
    };
    std::vector<LaurentPoly> out;
    for (int i = 1; i <= 2 * r + 1; ++i) {
        if (i % 2 == 1) {
            int a = (i + 1) / 2;
            out.push_back(q(a - 1, 0) * q(a, 1) * (q(a, 0) * q(a - 1, 1)).inverse());
        } else {
            int a = i / 2;
            out.push_back(q(a - 1, 0) * q(a + 1, 1) * (q(a, 0) * q(a, 1)).inverse());
        }
    }
    return out;
}

} // namespace qdimer
