#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "torus_graph.hpp"

namespace qdimer {

using json = nlohmann::json;

namespace detail {

inline bool canonical_int(const std::string& s) {
    if (s.empty() || s.size() > 9) return false;
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) return false;
    if (s[i] == '0' && s.size() > i + 1) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return s != "-0";
}

inline const json& need(const json& j, const std::string& key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw InputError(key, where + ": missing key '" + key + "'");
    return j.at(key);
}

inline int need_int(const json& j, const std::string& key, const std::string& where) {
    const json& v = need(j, key, where);
    if (!v.is_number_integer()) throw InputError(key, where + ": key '" + key + "' must be an integer");
    return v.get<int>();
}

inline std::string label_of(const json& v, const std::string& key, const std::string& where) {
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_string()) return v.get<std::string>();
    throw InputError(key, where + ": face label in '" + key + "' must be a string or integer");
}

inline Color color_of(const json& v, const std::string& key, const std::string& where) {
    if (v == "black") return Color::black;
    if (v == "white") return Color::white;
    throw InputError(key, where + ": '" + key + "' must be \"black\" or \"white\"");
}

} // namespace detail

inline json label_json(const std::string& label) {
    if (detail::canonical_int(label)) return std::stoi(label);
    return label;
}

inline json to_json(const TorusGraph& g) {
    json j;
    j["vertices"] = json::array();
    for (const auto& [id, v] : g.vertices) j["vertices"].push_back({{"id", id}, {"color", color_name(v.color)}});
    j["edges"] = json::array();
    for (const auto& [id, e] : g.edges)
        j["edges"].push_back({{"id", id},
                              {"black", e.black},
                              {"white", e.white},
                              {"dx", e.disp.x},
                              {"dy", e.disp.y},
                              {"face_left", label_json(e.face_left)},
                              {"face_right", label_json(e.face_right)}});
    j["rotations"] = json::object();
    for (const auto& [v, rot] : g.rotations) {
        json r = json::array();
        for (EdgeEnd end : rot) r.push_back({{"edge", end.edge}, {"end", color_name(end.end)}});
        j["rotations"][std::to_string(v)] = r;
    }
    j["faces"] = json::object();
    for (const auto& [lab, f] : g.faces) {
        if (f.frozen) j["faces"][lab] = {{"frozen", true}};
        else j["faces"][lab] = {{"var", f.var}};
    }
    return j;
}

/// Structural parse only; call validate() for the combinatorial checks.
inline TorusGraph graph_from_json(const json& j) {
    using namespace detail;
    if (!j.is_object()) throw InputError("", "graph: top level must be an object");
    TorusGraph g;
    const json& vs = need(j, "vertices", "graph");
    if (!vs.is_array()) throw InputError("vertices", "graph: 'vertices' must be an array");
    for (const auto& v : vs) {
        Vertex x;
        x.id = need_int(v, "id", "vertices[]");
        x.color = color_of(need(v, "color", "vertices[]"), "color", "vertices[]");
        if (!g.vertices.emplace(x.id, x).second)
            throw InputError("id", "vertices[]: duplicate vertex id " + std::to_string(x.id));
    }
    const json& es = need(j, "edges", "graph");
    if (!es.is_array()) throw InputError("edges", "graph: 'edges' must be an array");
    for (const auto& e : es) {
        Edge x;
        x.id = need_int(e, "id", "edges[]");
        x.black = need_int(e, "black", "edges[]");
        x.white = need_int(e, "white", "edges[]");
        x.disp = {need_int(e, "dx", "edges[]"), need_int(e, "dy", "edges[]")};
        x.face_left = label_of(need(e, "face_left", "edges[]"), "face_left", "edges[]");
        x.face_right = label_of(need(e, "face_right", "edges[]"), "face_right", "edges[]");
        if (!g.edges.emplace(x.id, x).second)
            throw InputError("id", "edges[]: duplicate edge id " + std::to_string(x.id));
    }
    const json& rs = need(j, "rotations", "graph");
    if (!rs.is_object()) throw InputError("rotations", "graph: 'rotations' must be an object keyed by vertex id");
    for (auto it = rs.begin(); it != rs.end(); ++it) {
        int v = 0;
        try {
            std::size_t used = 0;
            v = std::stoi(it.key(), &used);
            if (used != it.key().size()) throw std::invalid_argument("trailing");
        } catch (const std::logic_error&) {
            throw InputError("rotations", "rotations: key '" + it.key() + "' is not a vertex id");
        }
        if (!it.value().is_array()) throw InputError("rotations", "rotations: entry for vertex " + it.key() + " must be an array");
        std::vector<EdgeEnd> rot;
        for (const auto& r : it.value())
            rot.push_back({need_int(r, "edge", "rotations[]"), color_of(need(r, "end", "rotations[]"), "end", "rotations[]")});
        g.rotations[v] = std::move(rot);
    }
    const json& fs = need(j, "faces", "graph");
    if (!fs.is_object()) throw InputError("faces", "graph: 'faces' must be an object keyed by label");
    for (auto it = fs.begin(); it != fs.end(); ++it) {
        FaceInfo f;
        const json& v = it.value();
        if (v.is_object() && v.contains("frozen") && v.at("frozen") == true) {
            f.frozen = true;
        } else {
            f.var = need_int(v, "var", "faces[" + it.key() + "]");
        }
        g.faces[it.key()] = f;
    }
    return g;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("", "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("", "'" + path + "' is not valid JSON: " + e.what());
    }
}

} // namespace qdimer
