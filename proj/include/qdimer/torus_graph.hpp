#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "laurent.hpp"
#include "matrix.hpp"

namespace qdimer {

enum class Color { black, white };

inline Color opposite(Color c) { return c == Color::black ? Color::white : Color::black; }
inline const char* color_name(Color c) { return c == Color::black ? "black" : "white"; }

/// Element of H_1(T^2) = Z^2, also used for edge displacements.
struct Z2 {
    int x = 0;
    int y = 0;
    Z2& operator+=(Z2 o) { x += o.x; y += o.y; return *this; }
    Z2& operator-=(Z2 o) { x -= o.x; y -= o.y; return *this; }
    friend Z2 operator+(Z2 a, Z2 b) { return a += b; }
    friend Z2 operator-(Z2 a, Z2 b) { return a -= b; }
    Z2 operator-() const { return {-x, -y}; }
    friend auto operator<=>(const Z2&, const Z2&) = default;
    bool is_zero() const { return x == 0 && y == 0; }
    std::string to_string() const { return "(" + std::to_string(x) + "," + std::to_string(y) + ")"; }
};
using Homology = Z2;

struct Vertex {
    int id = 0;
    Color color = Color::black;
};

/// face_left / face_right are relative to the black-to-white direction.
struct Edge {
    int id = 0;
    int black = 0;
    int white = 0;
    Z2 disp;  // white endpoint sits at black + disp in the universal cover
    std::string face_left;
    std::string face_right;
};

/// One end of an edge: which edge, and the colour of the vertex it sits at.
struct EdgeEnd {
    int edge = 0;
    Color end = Color::black;
    friend auto operator<=>(const EdgeEnd&, const EdgeEnd&) = default;
};

enum class Direction { black_to_white, white_to_black };

struct Step {
    int edge = 0;
    Direction dir = Direction::black_to_white;
    friend auto operator<=>(const Step&, const Step&) = default;
};
using OrientedLoop = std::vector<Step>;

inline Step reversed(Step s) {
    return {s.edge, s.dir == Direction::black_to_white ? Direction::white_to_black : Direction::black_to_white};
}

struct FaceInfo {
    bool frozen = false;
    int var = 0;
    friend bool operator==(const FaceInfo&, const FaceInfo&) = default;
};

inline std::string var_name(int var) { return "A" + std::to_string(var); }

/// Bipartite graph on the torus with counterclockwise rotation system.
/// Treated as a value: operations return new graphs.
struct TorusGraph {
    std::map<int, Vertex> vertices;
    std::map<int, Edge> edges;
    std::map<int, std::vector<EdgeEnd>> rotations;
    std::map<std::string, FaceInfo> faces;

    const Edge& edge(int id) const {
        auto it = edges.find(id);
        if (it == edges.end()) throw StructureError("no edge " + std::to_string(id));
        return it->second;
    }
    Color color(int v) const {
        auto it = vertices.find(v);
        if (it == vertices.end()) throw StructureError("no vertex " + std::to_string(v));
        return it->second.color;
    }
    int endpoint(EdgeEnd e) const { return e.end == Color::black ? edge(e.edge).black : edge(e.edge).white; }
    int other_endpoint(EdgeEnd e) const { return e.end == Color::black ? edge(e.edge).white : edge(e.edge).black; }
    const std::vector<EdgeEnd>& rotation(int v) const {
        auto it = rotations.find(v);
        if (it == rotations.end()) throw StructureError("vertex " + std::to_string(v) + " has no rotation");
        return it->second;
    }
    int degree(int v) const { return static_cast<int>(rotation(v).size()); }
    int next_vertex_id() const { return vertices.empty() ? 0 : vertices.rbegin()->first + 1; }
    int next_edge_id() const { return edges.empty() ? 0 : edges.rbegin()->first + 1; }
    const FaceInfo& face(const std::string& label) const {
        auto it = faces.find(label);
        if (it == faces.end()) throw FaceLabelError("unknown face label '" + label + "'");
        return it->second;
    }
};

inline int tail(const TorusGraph& g, Step s) {
    const Edge& e = g.edge(s.edge);
    return s.dir == Direction::black_to_white ? e.black : e.white;
}
inline int head(const TorusGraph& g, Step s) {
    const Edge& e = g.edge(s.edge);
    return s.dir == Direction::black_to_white ? e.white : e.black;
}
inline const std::string& left_face(const TorusGraph& g, Step s) {
    const Edge& e = g.edge(s.edge);
    return s.dir == Direction::black_to_white ? e.face_left : e.face_right;
}
inline const std::string& right_face(const TorusGraph& g, Step s) {
    const Edge& e = g.edge(s.edge);
    return s.dir == Direction::black_to_white ? e.face_right : e.face_left;
}
inline Z2 step_disp(const TorusGraph& g, Step s) {
    Z2 d = g.edge(s.edge).disp;
    return s.dir == Direction::black_to_white ? d : -d;
}
inline Step leaving(const TorusGraph& g, EdgeEnd at) {
    (void)g;
    return {at.edge, at.end == Color::black ? Direction::black_to_white : Direction::white_to_black};
}
inline EdgeEnd arriving_end(Step s) {
    return {s.edge, s.dir == Direction::black_to_white ? Color::white : Color::black};
}

inline std::size_t rotation_index(const TorusGraph& g, int v, EdgeEnd e) {
    const auto& rot = g.rotation(v);
    for (std::size_t i = 0; i < rot.size(); ++i)
        if (rot[i] == e) return i;
    throw StructureError("edge " + std::to_string(e.edge) + " missing from rotation at vertex " + std::to_string(v));
}

/// Next step of the face walk keeping the face on the left: at the head,
/// leave along the edge clockwise-next to the arrival edge.
inline Step face_successor(const TorusGraph& g, Step s) {
    int h = head(g, s);
    const auto& rot = g.rotation(h);
    std::size_t p = rotation_index(g, h, arriving_end(s));
    return leaving(g, rot[(p + rot.size() - 1) % rot.size()]);
}

/// Zig-zag step: maximal left at white vertices, maximal right at black ones.
inline Step zigzag_successor(const TorusGraph& g, Step s) {
    int h = head(g, s);
    const auto& rot = g.rotation(h);
    std::size_t p = rotation_index(g, h, arriving_end(s));
    std::size_t n = rot.size();
    std::size_t q = g.color(h) == Color::white ? (p + n - 1) % n : (p + 1) % n;
    return leaving(g, rot[q]);
}

inline std::vector<Step> all_steps(const TorusGraph& g) {
    std::vector<Step> out;
    for (const auto& [id, e] : g.edges) {
        out.push_back({id, Direction::black_to_white});
        out.push_back({id, Direction::white_to_black});
    }
    return out;
}

template <class Succ>
std::vector<OrientedLoop> orbit_decomposition(const TorusGraph& g, Succ succ) {
    std::set<Step> seen;
    std::vector<OrientedLoop> out;
    for (Step s0 : all_steps(g)) {
        if (seen.count(s0)) continue;
        OrientedLoop loop;
        Step s = s0;
        while (!seen.count(s)) {
            seen.insert(s);
            loop.push_back(s);
            s = succ(g, s);
            if (loop.size() > 2 * g.edges.size() + 1) throw StructureError("rotation system does not close up");
        }
        if (s != s0) throw StructureError("rotation system is not a permutation on darts");
        out.push_back(std::move(loop));
    }
    return out;
}

struct TracedFace {
    std::string label;
    OrientedLoop boundary;
};

/// Every face boundary walk, each with the single label found along it.
inline std::vector<TracedFace> trace_faces(const TorusGraph& g) {
    std::vector<TracedFace> out;
    for (auto& loop : orbit_decomposition(g, face_successor)) {
        const std::string& lab = left_face(g, loop.front());
        for (Step s : loop)
            if (left_face(g, s) != lab)
                throw FaceLabelError("face walk through edge " + std::to_string(s.edge) + " sees labels '" + lab +
                                     "' and '" + left_face(g, s) + "'");
        out.push_back({lab, std::move(loop)});
    }
    return out;
}

inline std::vector<OrientedLoop> zigzag_loops(const TorusGraph& g) { return orbit_decomposition(g, zigzag_successor); }

inline Homology loop_homology(const TorusGraph& g, const OrientedLoop& loop) {
    Z2 h;
    for (Step s : loop) h += step_disp(g, s);
    return h;
}

/// Naturally sorted names of the non-frozen face variables.
inline std::vector<std::string> face_variables(const TorusGraph& g) {
    std::vector<std::string> names;
    for (const auto& [lab, f] : g.faces)
        if (!f.frozen) names.push_back(var_name(f.var));
    return sorted_variables(std::move(names));
}

/// Exponent contribution of one face to a monomial; frozen faces weigh 1.
inline void bump_face(const TorusGraph& g, const std::string& label, int by, const std::vector<std::string>& vars,
                      Exponent& e) {
    const FaceInfo& f = g.face(label);
    if (f.frozen) return;
    auto it = std::find(vars.begin(), vars.end(), var_name(f.var));
    if (it == vars.end()) throw DomainError("face variable " + var_name(f.var) + " not in variable list");
    e[static_cast<std::size_t>(it - vars.begin())] += by;
}

/// Loop weight as a monomial in the face variables:
/// black-to-white steps give (A_i A_j)^{-1}, white-to-black steps A_i A_j.
inline LaurentPoly loop_weight(const TorusGraph& g, const OrientedLoop& loop, const std::vector<std::string>& vars) {
    Exponent e(vars.size(), 0);
    for (Step s : loop) {
        int by = s.dir == Direction::black_to_white ? -1 : 1;
        const Edge& ed = g.edge(s.edge);
        bump_face(g, ed.face_left, by, vars, e);
        bump_face(g, ed.face_right, by, vars, e);
    }
    return LaurentPoly::monomial(vars, e);
}
inline LaurentPoly loop_weight(const TorusGraph& g, const OrientedLoop& loop) {
    return loop_weight(g, loop, face_variables(g));
}

/// Gauge at v: shift every incident displacement so homology classes of loops are unchanged.
inline TorusGraph gauge_transform(const TorusGraph& g, int v, Z2 d) {
    TorusGraph out = g;
    Color c = g.color(v);
    for (EdgeEnd end : g.rotation(v)) {
        Edge& e = out.edges.at(end.edge);
        if (c == Color::black) e.disp += d;
        else e.disp -= d;
    }
    return out;
}

/// Gauge at v so that edge e (incident to v) gets zero displacement.
inline TorusGraph gauge_to_zero(const TorusGraph& g, int v, int e) {
    Z2 d = g.edge(e).disp;
    return gauge_transform(g, v, g.color(v) == Color::black ? -d : d);
}

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> violations;
    std::vector<std::string> warnings;
    int euler = 0;
    int traced_faces = 0;
};

inline ValidationReport validate(const TorusGraph& g) {
    ValidationReport r;
    auto fail = [&](std::string m) {
        r.valid = false;
        r.violations.push_back(std::move(m));
    };
    for (const auto& [id, v] : g.vertices)
        if (v.id != id) fail("vertex key " + std::to_string(id) + " disagrees with its id");
    for (const auto& [id, e] : g.edges) {
        if (e.id != id) fail("edge key " + std::to_string(id) + " disagrees with its id");
        auto b = g.vertices.find(e.black), w = g.vertices.find(e.white);
        if (b == g.vertices.end() || w == g.vertices.end()) {
            fail("edge " + std::to_string(id) + " has a missing endpoint");
            continue;
        }
        if (b->second.color != Color::black || w->second.color != Color::white)
            fail("bipartiteness: edge " + std::to_string(id) + " joins " + color_name(b->second.color) + " vertex " +
                 std::to_string(e.black) + " to " + color_name(w->second.color) + " vertex " + std::to_string(e.white));
        for (const std::string* lab : {&e.face_left, &e.face_right})
            if (!g.faces.count(*lab)) fail("edge " + std::to_string(id) + " refers to undeclared face '" + *lab + "'");
    }
    for (const auto& [lab, f] : g.faces)
        if (!f.frozen && f.var < 0) fail("face '" + lab + "' has a negative variable index");
    if (!r.valid) return r;

    // rotation system: each edge end exactly once, at the right vertex
    std::map<EdgeEnd, int> seen;
    for (const auto& [v, rot] : g.rotations) {
        if (!g.vertices.count(v)) {
            fail("rotation given for unknown vertex " + std::to_string(v));
            continue;
        }
        for (EdgeEnd end : rot) {
            if (!g.edges.count(end.edge)) {
                fail("rotation at vertex " + std::to_string(v) + " lists unknown edge " + std::to_string(end.edge));
                continue;
            }
            if (g.endpoint(end) != v)
                fail("rotation at vertex " + std::to_string(v) + " lists edge " + std::to_string(end.edge) +
                     " whose " + color_name(end.end) + " end is elsewhere");
            if (++seen[end] > 1)
                fail("edge end " + std::to_string(end.edge) + "/" + color_name(end.end) + " repeated in rotations");
        }
    }
    for (const auto& [id, v] : g.vertices)
        if (!g.rotations.count(id) || g.rotations.at(id).empty())
            fail("vertex " + std::to_string(id) + " has no rotation");
    for (const auto& [id, e] : g.edges)
        for (Color c : {Color::black, Color::white})
            if (!seen.count({id, c}))
                fail("edge end " + std::to_string(id) + "/" + color_name(c) + " missing from rotations");
    if (!r.valid) return r;

    try {
        auto faces = trace_faces(g);
        r.traced_faces = static_cast<int>(faces.size());
    } catch (const Error& ex) {
        fail(std::string("face labels: ") + ex.what());
        return r;
    }
    r.euler = static_cast<int>(g.vertices.size()) - static_cast<int>(g.edges.size()) + r.traced_faces;
    if (r.euler != 0) r.warnings.push_back("V - E + F = " + std::to_string(r.euler) + " instead of 0");
    return r;
}

struct Quiver {
    std::vector<std::string> labels;  // natural order
    IntMatrix b;
    bool has_one_cycles = false;
    std::vector<int> one_cycle_edges;

    int index(const std::string& label) const {
        auto it = std::find(labels.begin(), labels.end(), label);
        if (it == labels.end()) throw FaceLabelError("label '" + label + "' not in quiver");
        return static_cast<int>(it - labels.begin());
    }
};

/// One arrow per edge with the black endpoint on its right: face_left -> face_right.
/// Opposite arrows cancel in B; an edge with the same face on both sides is a 1-cycle.
inline Quiver quiver_from_graph(const TorusGraph& g) {
    Quiver q;
    for (const auto& [lab, f] : g.faces) q.labels.push_back(lab);
    q.labels = sorted_variables(std::move(q.labels));
    q.b = int_zeros(q.labels.size(), q.labels.size());
    for (const auto& [id, e] : g.edges) {
        if (e.face_left == e.face_right) {
            q.has_one_cycles = true;
            q.one_cycle_edges.push_back(id);
            continue;
        }
        int i = q.index(e.face_left), j = q.index(e.face_right);
        q.b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += 1;
        q.b[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] -= 1;
    }
    return q;
}

} // namespace qdimer
