#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "matchings.hpp"
#include "torus_graph.hpp"
#include "values.hpp"

namespace qdimer {

/// Face weights keyed by variable index; frozen faces weigh 1.
template <class V>
using FaceWeights = std::map<int, V>;

template <class V>
V face_value(const TorusGraph& g, const FaceWeights<V>& w, const std::string& label) {
    if (w.empty()) throw DomainError("empty face weight map");
    const FaceInfo& f = g.face(label);
    if (f.frozen) return one_like(w.begin()->second);
    auto it = w.find(f.var);
    if (it == w.end()) throw DomainError("no weight for variable " + var_name(f.var) + " (face '" + label + "')");
    return it->second;
}

/// Identity weights: face variable i carries the symbol A_i.
inline FaceWeights<LaurentPoly> symbolic_weights(const TorusGraph& g) {
    auto vars = face_variables(g);
    FaceWeights<LaurentPoly> w;
    for (const auto& [lab, f] : g.faces)
        if (!f.frozen) w[f.var] = LaurentPoly::variable(vars, var_name(f.var));
    return w;
}

struct MoveRecord {
    enum class Kind { urban_renewal, shrink };
    Kind kind = Kind::urban_renewal;
    // urban renewal
    std::string face;
    std::array<int, 4> sides{};       // old square, ccw around the face
    std::array<int, 4> connectors{};  // corner v_i to new vertex u_i
    std::array<int, 4> inner{};       // u_i to u_{i+1}
    std::array<int, 4> new_vertices{};
    // shrink
    int vertex = -1;
    int survivor = -1;
    int absorbed = -1;
    std::vector<int> removed_edges;
    std::vector<int> added_edges;
};

/// A contractible square face, read off its counterclockwise boundary walk.
struct QuadFace {
    std::string label;
    std::array<Step, 4> boundary{};
    std::array<int, 4> corners{};             // boundary[i] runs corners[i] -> corners[i+1]
    std::array<std::string, 4> neighbors{};   // face across boundary[i]
};

inline QuadFace quad_face(const TorusGraph& g, const std::string& k) {
    if (g.face(k).frozen) throw FrozenError("face '" + k + "' is frozen");
    std::vector<OrientedLoop> walks;
    for (auto& f : trace_faces(g))
        if (f.label == k) walks.push_back(std::move(f.boundary));
    if (walks.size() != 1)
        throw ContractibilityError("face '" + k + "' has " + std::to_string(walks.size()) + " boundary walks");
    const OrientedLoop& w = walks.front();
    if (w.size() != 4) throw ShapeError("face '" + k + "' has " + std::to_string(w.size()) + " sides, not 4");
    if (!loop_homology(g, w).is_zero()) throw ContractibilityError("face '" + k + "' boundary winds around the torus");
    QuadFace q;
    q.label = k;
    std::set<int> es, vs;
    for (std::size_t i = 0; i < 4; ++i) {
        q.boundary[i] = w[i];
        q.corners[i] = tail(g, w[i]);
        q.neighbors[i] = right_face(g, w[i]);
        es.insert(w[i].edge);
        vs.insert(q.corners[i]);
    }
    if (es.size() != 4) throw ShapeError("face '" + k + "' repeats a side");
    if (vs.size() != 4) throw ShapeError("face '" + k + "' repeats a corner");
    for (int v : q.corners)
        if (g.degree(v) < 3) throw ShapeError("corner " + std::to_string(v) + " of face '" + k + "' is 2-valent");
    return q;
}

/// Spider move on a square face. Corners keep their positions, four new
/// vertices form the inner square, old sides disappear.
inline std::pair<TorusGraph, MoveRecord> urban_renewal(const TorusGraph& g, const std::string& k) {
    QuadFace q = quad_face(g, k);
    const auto& v = q.corners;
    std::array<int, 4> e{};
    for (std::size_t i = 0; i < 4; ++i) e[i] = q.boundary[i].edge;

    TorusGraph out = g;
    for (std::size_t i = 0; i < 3; ++i) out = gauge_to_zero(out, v[i + 1], e[i]);
    if (!out.edge(e[3]).disp.is_zero()) throw StructureError("square face gauge did not close up");

    MoveRecord rec;
    rec.kind = MoveRecord::Kind::urban_renewal;
    rec.face = k;
    rec.sides = e;
    int vid = out.next_vertex_id(), eid = out.next_edge_id();
    std::array<int, 4> u{}, c{}, s{};
    for (std::size_t i = 0; i < 4; ++i) {
        u[i] = vid + static_cast<int>(i);
        c[i] = eid + static_cast<int>(i);
        s[i] = eid + 4 + static_cast<int>(i);
    }
    rec.connectors = c;
    rec.inner = s;
    rec.new_vertices = u;

    auto col = [&](std::size_t i) { return out.color(v[i]); };
    for (std::size_t i = 0; i < 4; ++i) out.vertices[u[i]] = {u[i], opposite(col(i))};

    auto add_edge = [&](int id, int a, int b, const std::string& left_of_ab, const std::string& right_of_ab) {
        Edge ed;
        ed.id = id;
        bool a_black = out.color(a) == Color::black;
        ed.black = a_black ? a : b;
        ed.white = a_black ? b : a;
        ed.face_left = a_black ? left_of_ab : right_of_ab;
        ed.face_right = a_black ? right_of_ab : left_of_ab;
        out.edges[id] = ed;
    };
    for (std::size_t i = 0; i < 4; ++i) {
        std::size_t prev = (i + 3) % 4, next = (i + 1) % 4;
        add_edge(c[i], v[i], u[i], q.neighbors[prev], q.neighbors[i]);
        add_edge(s[i], u[i], u[next], k, q.neighbors[i]);
        (void)next;
    }

    for (std::size_t i = 0; i < 4; ++i) {
        std::size_t prev = (i + 3) % 4;
        Color cv = col(i);
        auto& rot = out.rotations.at(v[i]);
        std::size_t n = rot.size();
        std::size_t p = rotation_index(out, v[i], {e[i], cv});
        if (rot[(p + 1) % n] != EdgeEnd{e[prev], cv})
            throw StructureError("sides of face '" + k + "' are not consecutive at corner " + std::to_string(v[i]));
        std::vector<EdgeEnd> nr;
        for (std::size_t t = 2; t < n; ++t) nr.push_back(rot[(p + t) % n]);
        nr.push_back({c[i], cv});
        rot = std::move(nr);

        Color cu = opposite(cv);
        out.rotations[u[i]] = {{s[i], cu}, {s[prev], cu}, {c[i], cu}};
    }
    for (int id : e) out.edges.erase(id);
    rec.removed_edges.assign(e.begin(), e.end());
    rec.added_edges = {c[0], c[1], c[2], c[3], s[0], s[1], s[2], s[3]};
    return {out, rec};
}

/// Contract a 2-valent vertex together with its two neighbours.
inline std::pair<TorusGraph, MoveRecord> shrink_vertex(const TorusGraph& g, int v) {
    if (g.degree(v) != 2) throw ShapeError("vertex " + std::to_string(v) + " is not 2-valent");
    const auto& rv = g.rotation(v);
    int e1 = rv[0].edge, e2 = rv[1].edge;
    int b1 = g.other_endpoint(rv[0]), b2 = g.other_endpoint(rv[1]);
    Color cb = opposite(g.color(v));

    TorusGraph out = gauge_to_zero(g, v, e1);
    MoveRecord rec;
    rec.kind = MoveRecord::Kind::shrink;
    rec.vertex = v;
    rec.survivor = b1;
    rec.absorbed = b2;
    rec.removed_edges = {e1, e2};

    if (b1 == b2) {
        if (!out.edge(e2).disp.is_zero())
            throw TopologyError("vertex " + std::to_string(v) + " lies on a homologically nontrivial 2-cycle");
        auto& rot = out.rotations.at(b1);
        std::erase_if(rot, [&](EdgeEnd x) { return x.edge == e1 || x.edge == e2; });
    } else {
        out = gauge_to_zero(out, b2, e2);
        const auto r2 = out.rotation(b2);
        std::size_t p2 = rotation_index(out, b2, {e2, cb});
        std::vector<EdgeEnd> tail_seq;
        for (std::size_t t = 1; t < r2.size(); ++t) tail_seq.push_back(r2[(p2 + t) % r2.size()]);

        auto& r1 = out.rotations.at(b1);
        std::size_t p1 = rotation_index(out, b1, {e1, cb});
        std::vector<EdgeEnd> merged(r1.begin(), r1.begin() + static_cast<std::ptrdiff_t>(p1));
        merged.insert(merged.end(), tail_seq.begin(), tail_seq.end());
        merged.insert(merged.end(), r1.begin() + static_cast<std::ptrdiff_t>(p1) + 1, r1.end());
        r1 = std::move(merged);

        for (EdgeEnd x : tail_seq) {
            Edge& ed = out.edges.at(x.edge);
            (cb == Color::black ? ed.black : ed.white) = b1;
        }
        out.vertices.erase(b2);
        out.rotations.erase(b2);
    }
    out.edges.erase(e1);
    out.edges.erase(e2);
    out.vertices.erase(v);
    out.rotations.erase(v);
    return {out, rec};
}

/// Shrink 2-valent vertices, smallest id first, until none are left.
inline std::pair<TorusGraph, std::vector<MoveRecord>> shrink_all(const TorusGraph& g) {
    TorusGraph cur = g;
    std::vector<MoveRecord> recs;
    for (;;) {
        int target = -1;
        for (const auto& [id, rot] : cur.rotations)
            if (rot.size() == 2) {
                target = id;
                break;
            }
        if (target < 0) break;
        auto [next, rec] = shrink_vertex(cur, target);
        cur = std::move(next);
        recs.push_back(std::move(rec));
    }
    return {cur, recs};
}

/// Transport a reference matching through recorded moves. Each square must
/// carry exactly one matched side; each shrunk vertex is matched on one side.
inline PerfectMatching induce_matching(const PerfectMatching& m0, const std::vector<MoveRecord>& records) {
    std::set<int> m(m0.edges.begin(), m0.edges.end());
    for (const auto& r : records) {
        if (r.kind == MoveRecord::Kind::urban_renewal) {
            int count = 0;
            std::size_t j = 0;
            for (std::size_t i = 0; i < 4; ++i)
                if (m.count(r.sides[i])) {
                    ++count;
                    j = i;
                }
            if (count != 1)
                throw InductionError("reference matching has " + std::to_string(count) + " sides of face '" + r.face +
                                     "'; exactly one is required");
            m.erase(r.sides[j]);
            m.insert(r.connectors[j]);
            m.insert(r.connectors[(j + 1) % 4]);
            m.insert(r.inner[(j + 2) % 4]);
        } else {
            int count = 0;
            for (int e : r.removed_edges)
                if (m.count(e)) ++count;
            if (count != 1)
                throw InductionError("2-valent vertex " + std::to_string(r.vertex) + " is covered " + std::to_string(count) +
                                     " times by the reference matching");
            for (int e : r.removed_edges) m.erase(e);
        }
    }
    return PerfectMatching(std::vector<int>(m.begin(), m.end()));
}

inline int face_var_count(const TorusGraph& g, int var) {
    int n = 0;
    for (const auto& [lab, f] : g.faces)
        if (!f.frozen && f.var == var) ++n;
    return n;
}

/// The neighbour hypothesis of the seed/graph correspondence: cyclically
/// adjacent neighbours of the square must differ.
inline std::vector<std::string> neighbor_warnings(const QuadFace& q) {
    std::vector<std::string> w;
    for (std::size_t i = 0; i < 4; ++i)
        if (q.neighbors[i] == q.neighbors[(i + 1) % 4])
            w.push_back("face '" + q.label + "': adjacent neighbours coincide ('" + q.neighbors[i] + "')");
    return w;
}

/// Graph half of a mutation: spider move, shrink, and a fresh variable
/// index for the face if its old index is shared with another face.
struct StructuralMutation {
    TorusGraph graph;
    QuadFace quad;
    std::vector<MoveRecord> records;
    std::vector<std::string> warnings;
    int old_var = 0;
    int new_var = 0;
    bool fresh = false;
};

inline StructuralMutation mutate_structure(const TorusGraph& g, const std::string& k, int min_fresh = 0) {
    StructuralMutation out;
    out.quad = quad_face(g, k);
    out.warnings = neighbor_warnings(out.quad);
    auto [renewed, rec] = urban_renewal(g, k);
    auto [shrunk, srecs] = shrink_all(renewed);
    out.records.push_back(rec);
    out.records.insert(out.records.end(), srecs.begin(), srecs.end());
    out.graph = std::move(shrunk);
    out.old_var = out.new_var = g.face(k).var;
    if (face_var_count(g, out.old_var) > 1) {
        int top = min_fresh - 1;
        for (const auto& [lab, f] : g.faces)
            if (!f.frozen) top = std::max(top, f.var);
        out.fresh = true;
        out.new_var = top + 1;
        out.graph.faces[k].var = out.new_var;
    }
    return out;
}

template <class V>
struct GraphMutation {
    TorusGraph graph;
    FaceWeights<V> weights;
    std::vector<MoveRecord> records;
    std::vector<std::string> warnings;
    int fresh_var = -1;  // set when the mutated face shared its variable
};

/// Mutation of the weighted graph at face k:
/// A'_k = (A_{k1} A_{k3} + A_{k2} A_{k4}) / A_k, neighbours in cyclic order.
template <class V>
GraphMutation<V> mutate_graph(const TorusGraph& g, const FaceWeights<V>& w, const std::string& k) {
    QuadFace q = quad_face(g, k);
    std::array<V, 4> n;
    for (std::size_t i = 0; i < 4; ++i) n[i] = face_value(g, w, q.neighbors[i]);
    V fresh = divide_exact(n[0] * n[2] + n[1] * n[3], face_value(g, w, k));

    int min_fresh = w.empty() ? 0 : w.rbegin()->first + 1;
    StructuralMutation sm = mutate_structure(g, k, min_fresh);
    GraphMutation<V> out;
    out.graph = std::move(sm.graph);
    out.records = std::move(sm.records);
    out.warnings = std::move(sm.warnings);
    out.weights = w;
    out.weights[sm.new_var] = fresh;
    if (sm.fresh) out.fresh_var = sm.new_var;
    return out;
}

} // namespace qdimer
