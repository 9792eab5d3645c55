#pragma once

#include <deque>
#include <map>
#include <optional>

#include "matchings.hpp"
#include "torus_graph.hpp"

namespace qdimer {

struct GraphIsomorphism {
    std::map<int, int> vertices;
    std::map<int, int> edges;
};

namespace detail {

inline std::optional<GraphIsomorphism> try_extend(const TorusGraph& a, const TorusGraph& b, int va, int vb,
                                                  std::size_t offset) {
    GraphIsomorphism iso;
    std::map<int, std::size_t> off;
    std::deque<int> queue;
    iso.vertices[va] = vb;
    off[va] = offset;
    queue.push_back(va);
    std::set<int> used_b{vb};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        int w = iso.vertices[v];
        const auto& ra = a.rotation(v);
        const auto& rb = b.rotation(w);
        if (ra.size() != rb.size()) return std::nullopt;
        for (std::size_t p = 0; p < ra.size(); ++p) {
            EdgeEnd x = ra[p], y = rb[(p + off[v]) % rb.size()];
            auto it = iso.edges.find(x.edge);
            if (it == iso.edges.end()) iso.edges[x.edge] = y.edge;
            else if (it->second != y.edge) return std::nullopt;
            EdgeEnd xo{x.edge, opposite(x.end)}, yo{y.edge, opposite(y.end)};
            int v2 = a.endpoint(xo), w2 = b.endpoint(yo);
            if (a.degree(v2) != b.degree(w2)) return std::nullopt;
            std::size_t p2 = rotation_index(a, v2, xo), q2 = rotation_index(b, w2, yo);
            std::size_t d2 = static_cast<std::size_t>(b.degree(w2));
            std::size_t o2 = (q2 + d2 - p2) % d2;
            auto mv = iso.vertices.find(v2);
            if (mv != iso.vertices.end()) {
                if (mv->second != w2 || off[v2] != o2) return std::nullopt;
            } else {
                if (used_b.count(w2)) return std::nullopt;
                iso.vertices[v2] = w2;
                used_b.insert(w2);
                off[v2] = o2;
                queue.push_back(v2);
            }
        }
    }
    if (iso.vertices.size() != a.vertices.size() || iso.edges.size() != a.edges.size()) return std::nullopt;
    return iso;
}

/// d_a(e) - d_b(phi e) must be a coboundary p(white) - p(black).
inline bool displacement_gauge_equivalent(const TorusGraph& a, const TorusGraph& b, const GraphIsomorphism& iso) {
    std::map<int, Z2> pot;
    for (const auto& [start, vx] : a.vertices) {
        if (pot.count(start)) continue;
        pot[start] = {};
        std::deque<int> q{start};
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (EdgeEnd end : a.rotation(v)) {
                const Edge& e = a.edge(end.edge);
                Z2 diff = e.disp - b.edge(iso.edges.at(end.edge)).disp;
                int other = a.other_endpoint(end);
                Z2 want = end.end == Color::black ? pot[v] + diff : pot[v] - diff;
                auto it = pot.find(other);
                if (it == pot.end()) {
                    pot[other] = want;
                    q.push_back(other);
                } else if (it->second != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

} // namespace detail

/// Isomorphism of (graph, matching) pairs preserving colours, rotation
/// systems, face variable/frozen data, matching membership and, up to gauge,
/// edge displacements.
inline std::optional<GraphIsomorphism> find_isomorphism(const TorusGraph& a, const PerfectMatching& ma,
                                                        const TorusGraph& b, const PerfectMatching& mb) {
    if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size() || a.vertices.empty())
        return std::nullopt;
    int va = a.vertices.begin()->first;
    for (const auto& [vb, x] : b.vertices) {
        if (x.color != a.color(va) || b.degree(vb) != a.degree(va)) continue;
        for (std::size_t o = 0; o < static_cast<std::size_t>(a.degree(va)); ++o) {
            auto iso = detail::try_extend(a, b, va, vb, o);
            if (!iso) continue;
            bool ok = true;
            for (const auto& [ea, eb] : iso->edges) {
                const Edge& x1 = a.edge(ea);
                const Edge& x2 = b.edge(eb);
                if (!(a.face(x1.face_left) == b.face(x2.face_left)) || !(a.face(x1.face_right) == b.face(x2.face_right)) ||
                    ma.contains(ea) != mb.contains(eb)) {
                    ok = false;
                    break;
                }
            }
            if (ok && detail::displacement_gauge_equivalent(a, b, *iso)) return iso;
        }
    }
    return std::nullopt;
}

} // namespace qdimer
