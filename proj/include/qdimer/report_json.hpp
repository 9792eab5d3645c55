#pragma once

#include <string>
#include <vector>

#include "builders.hpp"
#include "hard_particles.hpp"
#include "io.hpp"
#include "poisson.hpp"

namespace qdimer {

inline json to_json(Homology h) { return json::array({h.x, h.y}); }

inline json to_json(const PerfectMatching& m) { return m.edges; }

inline json to_json(const OrientedLoop& l) {
    json j = json::array();
    for (Step s : l) j.push_back({{"edge", s.edge}, {"dir", s.dir == Direction::black_to_white ? "bw" : "wb"}});
    return j;
}

inline json to_json(const RationalMatrix& m) { return m.to_strings(); }

inline json to_json(const ValidationReport& r) {
    return {{"valid", r.valid}, {"violations", r.violations}, {"warnings", r.warnings}, {"euler", r.euler},
            {"traced_faces", r.traced_faces}};
}

inline json to_json(const Quiver& q) {
    json labels = json::array();
    for (const auto& l : q.labels) labels.push_back(label_json(l));
    return {{"labels", labels}, {"b", q.b}, {"has_one_cycles", q.has_one_cycles}, {"one_cycle_edges", q.one_cycle_edges}};
}

inline json to_json(const HamiltonianTable& t) {
    json entries = json::array();
    for (const auto& [h, p] : t.entries) entries.push_back({{"class", to_json(h)}, {"polynomial", p.to_string()}});
    return {{"variables", t.variables}, {"reference", t.reference.edges}, {"matching_count", t.matching_count},
            {"entries", entries}};
}

inline json to_json(const MoveRecord& r) {
    if (r.kind == MoveRecord::Kind::urban_renewal)
        return {{"kind", "urban_renewal"}, {"face", label_json(r.face)}, {"sides", r.sides}, {"connectors", r.connectors},
                {"inner", r.inner}, {"new_vertices", r.new_vertices}};
    return {{"kind", "shrink"},       {"vertex", r.vertex},
            {"survivor", r.survivor}, {"absorbed", r.absorbed},
            {"removed_edges", r.removed_edges}, {"added_edges", r.added_edges}};
}

inline json to_json(const InvarianceReport& r) {
    return {{"status", status_name(r.status)},
            {"diagnostic", r.diagnostic},
            {"mismatched", [&] {
                 json j = json::array();
                 for (const auto& h : r.mismatched) j.push_back(to_json(h));
                 return j;
             }()},
            {"matchings_before", r.matchings_before},
            {"matchings_after", r.matchings_after},
            {"warnings", r.warnings}};
}

inline json to_json(const CertificationReport& c) {
    return {{"quads", c.quads_ok}, {"quiver", c.quiver_ok}, {"periodic", c.periodic_ok}, {"weights", c.weights_ok},
            {"notes", c.notes}};
}

template <class V>
json weights_json(const FaceWeights<V>& w) {
    json j = json::object();
    for (const auto& [i, v] : w) j[var_name(i)] = value_string(v);
    return j;
}

inline json to_json(const BuilderOutput& b) {
    json seq = json::array();
    for (const auto& g : b.sequence) {
        json step = json::array();
        for (const auto& l : g) step.push_back(label_json(l));
        seq.push_back(step);
    }
    json sigma = json::object(), meaning = json::object();
    for (const auto& [i, j] : b.sigma) sigma[std::to_string(i)] = j;
    for (const auto& [i, m] : b.meaning) meaning[var_name(i)] = m;
    return {{"type", b.spec.name()},          {"graph", to_json(b.graph)}, {"reference", b.reference.edges},
            {"sequence", seq},                {"sigma", sigma},           {"meaning", meaning},
            {"certification", to_json(b.certification)}};
}

template <class V>
json to_json(const ClusterSeed<V>& s) {
    json vars = json::array();
    for (const auto& v : s.vars) vars.push_back(value_string(v));
    return {{"b", s.b}, {"vars", vars}, {"frozen", std::vector<std::size_t>(s.frozen.begin(), s.frozen.end())}};
}

inline json to_json(const ConservationReport& c) {
    json steps = json::array();
    for (std::size_t k = 0; k < c.values.size(); ++k) {
        json vals = json::array();
        for (const auto& [h, v] : c.values[k]) vals.push_back({{"class", to_json(h)}, {"value", v.to_string()}});
        json st = json::array();
        for (const auto& a : c.states[k]) st.push_back(a.to_string());
        steps.push_back({{"k", k}, {"state", st}, {"hamiltonians", vals}});
    }
    return {{"conserved", c.conserved}, {"singular", c.singular}, {"steps", steps}, {"mismatches", c.mismatches}};
}

inline json to_json(const ConflictGraph& cg, int max_k) {
    json vs = json::array();
    for (std::size_t i = 0; i < cg.size(); ++i)
        vs.push_back({{"key", loop_key(cg.loops[i])}, {"gamma", cg.gammas[i].to_string()}, {"class", to_json(cg.classes[i])}});
    json es = json::array();
    for (auto [i, j] : cg.edges()) es.push_back({i, j});
    json parts = json::object();
    for (int k = 0; k <= max_k; ++k) parts[std::to_string(k)] = hard_particle_partition(cg, k).to_string();
    return {{"vertices", vs}, {"edges", es}, {"partitions", parts}};
}

inline json to_json(const CommutationReport& r) {
    json classes = json::array();
    for (const auto& h : r.classes) classes.push_back(to_json(h));
    json nz = json::array();
    for (const auto& [pr, b] : r.nonzero)
        nz.push_back({{"a", to_json(pr.first)}, {"b", to_json(pr.second)}, {"bracket", b.to_string()}});
    return {{"status", r.status}, {"all_commute", r.all_commute}, {"classes", classes}, {"commute", r.commute},
            {"nonzero", nz}};
}

inline json to_json(const CasimirReport& r) {
    json zz = json::array();
    for (std::size_t i = 0; i < r.zigzags.size(); ++i)
        zz.push_back({{"weight", r.weights[i].to_string()}, {"class", to_json(r.classes[i])}, {"length", r.zigzags[i].size()}});
    return {{"product_is_one", r.product_is_one}, {"central", r.central}, {"zigzags", zz}, {"failures", r.failures}};
}

} // namespace qdimer
