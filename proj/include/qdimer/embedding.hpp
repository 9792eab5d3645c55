#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "torus_graph.hpp"

namespace qdimer {

/// A straight-line drawing in the plane, periodic under (period_x, 0) and
/// (0, period_y). realize() reads off the rotation system from edge angles
/// and the face labels by sampling just left and right of each edge.
struct PeriodicDrawing {
    struct Node {
        int id;
        Color color;
        double x, y;  // inside the fundamental rectangle
    };
    // edge from node `from` to the copy of node `to` shifted by (ox, oy) periods
    struct Link {
        int from, to;
        int ox = 0, oy = 0;
    };

    double period_x = 1, period_y = 1;
    std::vector<Node> nodes;
    std::vector<Link> links;
    std::function<std::string(double, double)> label_at;
    std::map<std::string, FaceInfo> faces;

    void add_node(int id, Color c, double x, double y) { nodes.push_back({id, c, x, y}); }
    void add_link(int from, int to, int ox = 0, int oy = 0) { links.push_back({from, to, ox, oy}); }
};

inline TorusGraph realize(const PeriodicDrawing& d) {
    TorusGraph g;
    std::map<int, const PeriodicDrawing::Node*> at;
    for (const auto& n : d.nodes) {
        g.vertices[n.id] = {n.id, n.color};
        at[n.id] = &n;
    }
    auto wrap = [](double v, double p) {
        double r = std::fmod(v, p);
        return r < 0 ? r + p : r;
    };
    // (angle, end) pairs per vertex
    std::map<int, std::vector<std::pair<double, EdgeEnd>>> spokes;
    int id = 0;
    for (const auto& l : d.links) {
        const auto* a = at.at(l.from);
        const auto* b = at.at(l.to);
        if (a->color == b->color) throw StructureError("drawing joins two vertices of the same colour");
        double bx = b->x + l.ox * d.period_x, by = b->y + l.oy * d.period_y;
        double dx = bx - a->x, dy = by - a->y;
        Edge e;
        e.id = id;
        bool a_black = a->color == Color::black;
        e.black = a_black ? a->id : b->id;
        e.white = a_black ? b->id : a->id;
        e.disp = a_black ? Z2{l.ox, l.oy} : Z2{-l.ox, -l.oy};
        double len = std::hypot(dx, dy);
        double nx = -dy / len * 0.125, ny = dx / len * 0.125;  // left normal of a -> b
        double mx = a->x + dx / 2, my = a->y + dy / 2;
        std::string left = d.label_at(wrap(mx + nx, d.period_x), wrap(my + ny, d.period_y));
        std::string right = d.label_at(wrap(mx - nx, d.period_x), wrap(my - ny, d.period_y));
        e.face_left = a_black ? left : right;
        e.face_right = a_black ? right : left;
        g.edges[id] = e;
        spokes[a->id].push_back({std::atan2(dy, dx), {id, a->color}});
        spokes[b->id].push_back({std::atan2(-dy, -dx), {id, b->color}});
        ++id;
    }
    for (auto& [v, s] : spokes) {
        std::sort(s.begin(), s.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
        for (std::size_t i = 1; i < s.size(); ++i)
            if (std::abs(s[i].first - s[i - 1].first) < 1e-9)
                throw StructureError("two edges leave vertex " + std::to_string(v) + " in the same direction");
        for (const auto& p : s) g.rotations[v].push_back(p.second);
    }
    g.faces = d.faces;
    return g;
}

} // namespace qdimer
