#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cluster.hpp"
#include "embedding.hpp"
#include "graph_moves.hpp"
#include "hamiltonians.hpp"
#include "isomorphism.hpp"
#include "qsystem.hpp"

namespace qdimer {

struct CertificationReport {
    bool quads_ok = true;     // every step: contractible square, one reference side
    bool quiver_ok = true;    // B_G equals the (frozen-extended, folded) exchange matrix
    bool periodic_ok = true;  // sigma mu (G, M0) is isomorphic to (G, M0)
    bool weights_ok = true;   // weights after sigma mu are the Q-system image
    std::vector<std::string> notes;
    bool ok() const { return quads_ok && quiver_ok && periodic_ok && weights_ok; }
};

struct BuilderOutput {
    CartanSpec spec;
    TorusGraph graph;
    PerfectMatching reference;
    std::vector<std::vector<std::string>> sequence;  // faces mutated together (double-cover copies)
    std::map<int, int> sigma;                        // relabelling of variable indices
    std::map<int, std::string> meaning;              // variable index -> Q symbol at step k
    CertificationReport certification;
};

namespace detail {

inline std::pair<int, std::string> split_label(const std::string& label) {
    std::size_t i = 0;
    while (i < label.size() && std::isdigit(static_cast<unsigned char>(label[i]))) ++i;
    if (i == 0) return {-1, label};
    return {std::stoi(label.substr(0, i)), label.substr(i)};
}

inline int floor_int(double v) { return static_cast<int>(std::floor(v)); }

inline std::map<std::string, FaceInfo> numbered_faces(int n, const std::vector<std::string>& suffixes) {
    std::map<std::string, FaceInfo> f;
    f["0"] = {true, 0};
    for (int i = 1; i <= n; ++i)
        for (const auto& s : suffixes) f[std::to_string(i) + s] = {false, i};
    return f;
}

} // namespace detail

/// Relabel faces and variables by sigma on variable indices (frozen faces untouched).
inline TorusGraph relabel_faces(const TorusGraph& g, const std::map<int, int>& sigma) {
    std::map<std::string, std::string> rename;
    for (const auto& [lab, f] : g.faces) {
        auto [num, suf] = detail::split_label(lab);
        auto it = sigma.find(num);
        rename[lab] = (f.frozen || it == sigma.end()) ? lab : std::to_string(it->second) + suf;
    }
    TorusGraph out = g;
    out.faces.clear();
    for (const auto& [lab, f] : g.faces) {
        FaceInfo nf = f;
        if (!f.frozen) {
            auto it = sigma.find(f.var);
            if (it != sigma.end()) nf.var = it->second;
        }
        out.faces[rename.at(lab)] = nf;
    }
    if (out.faces.size() != g.faces.size()) throw StructureError("relabelling merged two faces");
    for (auto& [id, e] : out.edges) {
        e.face_left = rename.at(e.face_left);
        e.face_right = rename.at(e.face_right);
    }
    return out;
}

template <class V>
FaceWeights<V> relabel_weights(const FaceWeights<V>& w, const std::map<int, int>& sigma) {
    FaceWeights<V> out;
    for (const auto& [i, v] : w) {
        auto it = sigma.find(i);
        out[it == sigma.end() ? i : it->second] = v;
    }
    return out;
}

/// Cluster seed read off a weighted graph, indexed by naturally sorted face labels.
template <class V>
ClusterSeed<V> seed_from_graph(const TorusGraph& g, const FaceWeights<V>& w, const Quiver& q) {
    ClusterSeed<V> s{q.b, {}, {}};
    for (std::size_t i = 0; i < q.labels.size(); ++i) {
        s.vars.push_back(face_value(g, w, q.labels[i]));
        if (g.face(q.labels[i]).frozen) s.frozen.insert(i);
    }
    return s;
}

template <class V>
struct SequenceResult {
    TorusGraph graph;
    PerfectMatching reference;
    FaceWeights<V> weights;
    std::vector<std::string> problems;    // failed step preconditions
    std::vector<std::string> warnings;
};

/// Observer called with (graph before, weights before, face, mutation result).
template <class V>
using StepHook = std::function<void(const TorusGraph&, const FaceWeights<V>&, const std::string&, const GraphMutation<V>&)>;

/// Run a builder's mutation sequence. Faces sharing a variable are mutated
/// one after the other; their new weights must agree, and are folded back
/// onto the shared index afterwards.
template <class V>
SequenceResult<V> run_sequence(const TorusGraph& g0, const PerfectMatching& m0, const FaceWeights<V>& w0,
                               const std::vector<std::vector<std::string>>& seq, StepHook<V> hook = {}) {
    SequenceResult<V> res{g0, m0, w0, {}, {}};
    for (const auto& group : seq) {
        std::map<std::string, int> orig;
        for (const auto& lab : group) orig[lab] = res.graph.face(lab).var;
        for (const auto& lab : group) {
            QuadFace q = quad_face(res.graph, lab);
            int sides = 0;
            for (Step s : q.boundary)
                if (res.reference.contains(s.edge)) ++sides;
            if (sides != 1)
                res.problems.push_back("face '" + lab + "' has " + std::to_string(sides) + " reference sides");
            auto gm = mutate_graph(res.graph, res.weights, lab);
            if (hook) hook(res.graph, res.weights, lab, gm);
            res.reference = induce_matching(res.reference, gm.records);
            res.graph = std::move(gm.graph);
            res.weights = std::move(gm.weights);
            for (auto& w : gm.warnings) res.warnings.push_back(std::move(w));
        }
        for (const auto& lab : group) {
            int now = res.graph.face(lab).var, was = orig.at(lab);
            if (now == was) continue;
            if (!(res.weights.at(now) == res.weights.at(was)))
                res.problems.push_back("copies of variable " + std::to_string(was) + " disagree after mutation");
            res.graph.faces[lab].var = was;
            res.weights.erase(now);
        }
    }
    return res;
}

template <class V>
FaceWeights<V> weights_from_state(const QState<V>& s) {
    FaceWeights<V> w;
    for (std::size_t i = 0; i < s.a.size(); ++i) w[static_cast<int>(i) + 1] = s.a[i];
    return w;
}

/// Frozen-extended exchange matrix on indices 0 (frozen), 1..2r.
inline IntMatrix extended_target(const CartanSpec& s) {
    const int r = s.rank;
    IntMatrix b = exchange_matrix(s);
    IntMatrix x = int_zeros(static_cast<std::size_t>(2 * r + 1), static_cast<std::size_t>(2 * r + 1));
    for (int i = 0; i < 2 * r; ++i)
        for (int j = 0; j < 2 * r; ++j) x[i + 1][j + 1] = b[i][j];
    auto arrow = [&](int from, int to) {
        x[from][to] += 1;
        x[to][from] -= 1;
    };
    // boundary of the strip: 0 -> 1 and r+1 -> 0 at each end in type A;
    // in type B each end carries only the long node 1 (the two ends are the two sheets)
    if (s.type == CartanType::A) {
        arrow(0, 1);
        arrow(r + 1, 0);
        arrow(0, r);
        arrow(2 * r, 0);
    } else {
        arrow(0, 1);
        arrow(r + 1, 0);
    }
    return x;
}

/// Quiver target check: exact equality for A, folded equality for the B double cover.
inline bool quiver_matches_target(const TorusGraph& g, const CartanSpec& s, std::string& why) {
    Quiver q = quiver_from_graph(g);
    if (q.has_one_cycles) {
        why = "quiver has 1-cycles";
        return false;
    }
    IntMatrix x = extended_target(s);
    const int n = 2 * s.rank + 1;
    auto var_of = [&](const std::string& lab) { return g.face(lab).frozen ? 0 : g.face(lab).var; };
    std::map<int, int> copies;
    for (const auto& lab : q.labels) ++copies[var_of(lab)];
    const int sheets = s.type == CartanType::A ? 1 : 2;
    for (int v = 1; v < n; ++v)
        if (copies[v] != sheets) {
            why = "variable " + std::to_string(v) + " carried by " + std::to_string(copies[v]) + " faces";
            return false;
        }
    for (std::size_t f = 0; f < q.labels.size(); ++f) {
        std::vector<int> row(static_cast<std::size_t>(n), 0);
        for (std::size_t h = 0; h < q.labels.size(); ++h) row[static_cast<std::size_t>(var_of(q.labels[h]))] += q.b[f][h];
        int vf = var_of(q.labels[f]);
        int scale = vf == 0 ? sheets : 1;
        for (int j = 0; j < n; ++j)
            if (row[static_cast<std::size_t>(j)] != scale * x[static_cast<std::size_t>(vf)][static_cast<std::size_t>(j)]) {
                why = "face '" + q.labels[f] + "' has " + std::to_string(row[static_cast<std::size_t>(j)]) +
                      " arrows to variable " + std::to_string(j) + ", expected " +
                      std::to_string(scale * x[static_cast<std::size_t>(vf)][static_cast<std::size_t>(j)]);
                return false;
            }
    }
    return true;
}

inline CertificationReport certify(const BuilderOutput& b) {
    CertificationReport rep;
    std::string why;
    if (!quiver_matches_target(b.graph, b.spec, why)) {
        rep.quiver_ok = false;
        rep.notes.push_back("quiver: " + why);
    }
    auto init = q_symbolic_initial(b.spec);
    SequenceResult<LaurentPoly> res;
    try {
        res = run_sequence(b.graph, b.reference, weights_from_state(init), b.sequence);
    } catch (const Error& e) {
        rep.quads_ok = rep.periodic_ok = rep.weights_ok = false;
        rep.notes.push_back(std::string("sequence aborted: ") + e.what());
        return rep;
    }
    if (!res.problems.empty()) {
        rep.quads_ok = false;
        for (const auto& p : res.problems) rep.notes.push_back(p);
    }
    TorusGraph after = relabel_faces(res.graph, b.sigma);
    if (!find_isomorphism(after, res.reference, b.graph, b.reference)) {
        rep.periodic_ok = false;
        rep.notes.push_back("sigma mu (G, M0) is not isomorphic to (G, M0)");
    }
    auto w = relabel_weights(res.weights, b.sigma);
    auto next = weights_from_state(q_step(init));
    for (const auto& [i, v] : next)
        if (!w.count(i) || !(w.at(i) == v)) {
            rep.weights_ok = false;
            rep.notes.push_back("weight of variable " + std::to_string(i) + " is " +
                                (w.count(i) ? w.at(i).to_string() : std::string("missing")) + ", expected " + v.to_string());
        }
    return rep;
}

namespace detail {

inline void finish(BuilderOutput& b) {
    b.certification = certify(b);
    if (!b.certification.ok()) {
        std::string msg = b.spec.name() + " builder failed certification";
        for (const auto& n : b.certification.notes) msg += "; " + n;
        throw BuilderDefect(msg);
    }
}

inline std::map<int, std::string> q_meaning(const CartanSpec& s) {
    std::map<int, std::string> m;
    const int r = s.rank;
    for (int a = 1; a <= r; ++a) {
        bool shortnode = s.type == CartanType::B && a == r;
        m[a] = "Q_{" + std::to_string(a) + "," + (shortnode ? "2k" : "k") + "}";
        m[r + a] = "Q_{" + std::to_string(a) + "," + (shortnode ? "2k+1" : "k+1") + "}";
    }
    return m;
}

} // namespace detail

/// Type A_r: a ladder of r columns on a cylinder of height 2, vertex (x, y)
/// black iff x + y is even. Column a carries faces a and r + a; everything
/// outside the strip is the frozen face 0.
inline BuilderOutput build_A(int r, bool run_certification = true) {
    if (r < 1) throw DomainError("rank must be positive");
    BuilderOutput b;
    b.spec = cartan(CartanType::A, r);
    PeriodicDrawing d;
    d.period_x = r + 1;
    d.period_y = 2;
    auto vid = [](int x, int y) { return 2 * x + y; };
    for (int x = 0; x <= r; ++x)
        for (int y = 0; y < 2; ++y) d.add_node(vid(x, y), (x + y) % 2 == 0 ? Color::black : Color::white, x, y);
    std::vector<int> ref;
    for (int x = 0; x <= r; ++x) {
        // lower segment has top (x,1), the wrapping one has top (x,0)
        if ((x + 1) % 2 == 0) ref.push_back(static_cast<int>(d.links.size()));
        d.add_link(vid(x, 0), vid(x, 1));
        if (x % 2 == 0) ref.push_back(static_cast<int>(d.links.size()));
        d.add_link(vid(x, 1), vid(x, 0), 0, 1);
    }
    for (int x = 1; x <= r; ++x)
        for (int y = 0; y < 2; ++y) d.add_link(vid(x - 1, y), vid(x, y));
    d.label_at = [r](double x, double y) -> std::string {
        if (x > r) return "0";
        int col = detail::floor_int(x) + 1;
        int row = detail::floor_int(y);
        bool own = (col % 2 == 1) == (row == 0);
        return std::to_string(own ? col : r + col);
    };
    d.faces = detail::numbered_faces(2 * r, {""});
    b.graph = realize(d);
    b.reference = PerfectMatching(ref);
    for (int i = 1; i <= r; ++i) b.sequence.push_back({std::to_string(i)});
    for (int i = 1; i <= 2 * r; ++i) b.sigma[i] = i > r ? i - r : i + r;
    b.meaning = detail::q_meaning(b.spec);
    if (run_certification) detail::finish(b);
    return b;
}

/// Type B_r: double cover of the B_r quiver. Two A-type ladders (sheets a
/// and b, columns 1..r-1) run into a middle column of height 4 holding the
/// short-node faces r and 2r of both sheets; period 4 vertically.
inline BuilderOutput build_B(int r, bool run_certification = true) {
    if (r < 2) throw DomainError("type B needs rank >= 2");
    BuilderOutput b;
    b.spec = cartan(CartanType::B, r);
    const int m = r - 1;  // left line of the middle column
    PeriodicDrawing d;
    d.period_x = 2 * r;
    d.period_y = 4;
    std::map<std::pair<int, int>, int> ids;
    auto color_at = [r](int x, int y) { return (x + y + r + 1) % 2 == 0 ? Color::black : Color::white; };
    std::map<int, std::vector<int>> lines;
    for (int x = 0; x <= 2 * r - 1; ++x) {
        std::vector<int> ys;
        if (x < m) ys = {2, 3};
        else if (x <= m + 1) ys = {0, 1, 2, 3};
        else ys = {0, 1};
        lines[x] = ys;
        for (int y : ys) {
            int id = static_cast<int>(ids.size());
            ids[{x, y}] = id;
            d.add_node(id, color_at(x, y), x, y);
        }
    }
    std::vector<int> ref;
    for (const auto& [x, ys] : lines)
        for (std::size_t i = 0; i < ys.size(); ++i) {
            bool wraps = i + 1 == ys.size();
            int top_y = wraps ? ys[0] : ys[i + 1];
            if (color_at(x, top_y) == Color::black) ref.push_back(static_cast<int>(d.links.size()));
            d.add_link(ids.at({x, ys[i]}), ids.at({x, top_y}), 0, wraps ? 1 : 0);
        }
    for (int x = 1; x <= 2 * r - 1; ++x) {
        std::vector<int> ys;
        if (x <= m) ys = {2, 3};
        else if (x == m + 1) ys = {0, 1, 2, 3};
        else ys = {0, 1};
        for (int y : ys) d.add_link(ids.at({x - 1, y}), ids.at({x, y}));
    }
    d.label_at = [r, m](double x, double y) -> std::string {
        if (x > 2 * r - 1) return "0";
        int col = detail::floor_int(x);
        int yi = detail::floor_int(y);
        if (col < m) {  // left sheet, column alpha = col + 1
            int al = col + 1;
            bool row_a = yi == 2;
            bool own_in_b = (r - 1 - al) % 2 == 0;
            return std::to_string(row_a != own_in_b ? al : r + al) + "a";
        }
        if (col == m) {
            const int num[4] = {r, 2 * r, r, 2 * r};
            return std::to_string(num[yi]) + (yi < 2 ? "a" : "b");
        }
        int al = 2 * r - 1 - col;  // right sheet
        bool row_c = yi == 0;
        bool own_in_d = (r - 1 - al) % 2 == 0;
        return std::to_string(row_c != own_in_d ? al : r + al) + "b";
    };
    d.faces = detail::numbered_faces(2 * r, {"a", "b"});
    b.graph = realize(d);
    b.reference = PerfectMatching(ref);
    auto pair = [](int i) { return std::vector<std::string>{std::to_string(i) + "a", std::to_string(i) + "b"}; };
    b.sequence.push_back(pair(r));
    for (int i = 1; i <= r - 1; ++i) b.sequence.push_back(pair(i));
    b.sequence.push_back(pair(2 * r));
    for (int i = 1; i <= 2 * r; ++i) {
        if (i == r || i == 2 * r) b.sigma[i] = i;
        else b.sigma[i] = i > r ? i - r : i + r;
    }
    b.meaning = detail::q_meaning(b.spec);
    if (run_certification) detail::finish(b);
    return b;
}

inline BuilderOutput build(const CartanSpec& s, bool run_certification = true) {
    return s.type == CartanType::A ? build_A(s.rank, run_certification) : build_B(s.rank, run_certification);
}

/// Seed/graph synchronisation along the builder sequence: at every step the
/// mutated graph's (quiver, weights) equals seed mutation of (B_G, weights).
inline std::vector<std::string> sync_check(const BuilderOutput& b) {
    std::vector<std::string> bad;
    StepHook<LaurentPoly> hook = [&](const TorusGraph& g, const FaceWeights<LaurentPoly>& w, const std::string& face,
                                     const GraphMutation<LaurentPoly>& gm) {
        Quiver q0 = quiver_from_graph(g), q1 = quiver_from_graph(gm.graph);
        if (q0.labels != q1.labels) {
            bad.push_back("face set changed when mutating '" + face + "'");
            return;
        }
        auto s1 = mutate_seed(seed_from_graph(g, w, q0), static_cast<std::size_t>(q0.index(face)));
        if (s1.b != q1.b) bad.push_back("quiver after mutating '" + face + "' differs from matrix mutation");
        for (std::size_t i = 0; i < q1.labels.size(); ++i)
            if (!(face_value(gm.graph, gm.weights, q1.labels[i]) == s1.vars[i]))
                bad.push_back("weight of face '" + q1.labels[i] + "' after mutating '" + face + "' differs from seed mutation");
    };
    auto res = run_sequence(b.graph, b.reference, weights_from_state(q_symbolic_initial(b.spec)), b.sequence, hook);
    for (const auto& p : res.problems) bad.push_back(p);
    return bad;
}

struct ConservationReport {
    bool conserved = true;
    std::vector<std::map<Homology, Rational>> values;  // per step
    std::vector<std::vector<Rational>> states;
    std::vector<std::string> mismatches;
    bool singular = false;  // orbit hit a zero value; steps after it are missing
};

/// Evaluate the whole Hamiltonian table at A_{.,k} for k = 0..steps.
inline ConservationReport conservation_check(const BuilderOutput& b, const QState<Rational>& initial, int steps) {
    ConservationReport rep;
    HamiltonianTable t = hamiltonian_table(b.graph, b.reference);
    QState<Rational> s = initial;
    for (int k = 0; k <= steps; ++k) {
        for (std::size_t i = 0; i < s.a.size(); ++i)
            if (s.a[i].is_zero()) {
                rep.singular = true;
                rep.conserved = false;
                rep.mismatches.push_back("singular orbit: value " + std::to_string(i + 1) + " is zero at step " +
                                         std::to_string(k));
                return rep;
            }
        rep.states.push_back(s.a);
        rep.values.push_back(evaluate_table(t, weights_from_state(s)));
        if (k > 0)
            for (const auto& [h, v] : rep.values.front())
                if (!(rep.values.back().at(h) == v)) {
                    rep.conserved = false;
                    rep.mismatches.push_back("H" + h.to_string() + " at step " + std::to_string(k) + " is " +
                                             rep.values.back().at(h).to_string() + ", not " + v.to_string());
                }
        if (k == steps) break;
        try {
            s = q_step(s);
        } catch (const SingularOrbitError& e) {
            rep.singular = true;
            rep.conserved = false;
            rep.mismatches.push_back(std::string("singular orbit: ") + e.what());
            break;
        }
    }
    return rep;
}

} // namespace qdimer
