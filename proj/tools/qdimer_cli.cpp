// qdimer: command line front end. JSON on stdout (or --output), exit 0 ok,
// 1 verification failure, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "qdimer/qdimer.hpp"

using namespace qdimer;

namespace {

struct Options {
    std::string output;
    unsigned long long seed = 1;
    std::string input;
    std::string type;
    int rank = 0;
    std::string reference;
    std::string face;
    int steps = 1;
    bool check_conserved = false;
    bool symbolic = false;
    bool random_initial = false;
    std::string initial;
    bool q_symbols = false;
    bool check_invariance = false;
};

struct UsageError : Error {
    using Error::Error;
};

CartanSpec spec_of(const Options& o) {
    if (o.type != "A" && o.type != "B") throw UsageError("--type must be A or B");
    try {
        return cartan(o.type == "A" ? CartanType::A : CartanType::B, o.rank);
    } catch (const DomainError& e) {
        throw UsageError(std::string("--rank: ") + e.what());
    }
}

std::vector<int> parse_int_list(const std::string& s, const std::string& flag) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::logic_error&) {
            throw UsageError(flag + ": '" + tok + "' is not an integer");
        }
    }
    return out;
}

// Graph plus reference matching, from a file or from a builder.
struct Loaded {
    TorusGraph graph;
    PerfectMatching reference;
    bool has_reference = false;
    std::optional<BuilderOutput> builder;
};

Loaded load(const Options& o, bool need_reference) {
    Loaded l;
    if (!o.input.empty()) {
        json j = read_json_file(o.input);
        l.graph = graph_from_json(j);
        if (j.contains("reference")) {
            if (!j["reference"].is_array()) throw InputError("reference", "'reference' must be an array of edge ids");
            std::vector<int> ids;
            for (const auto& e : j["reference"]) {
                if (!e.is_number_integer()) throw InputError("reference", "'reference' must be an array of edge ids");
                ids.push_back(e.get<int>());
            }
            l.reference = PerfectMatching(ids);
            l.has_reference = true;
        }
    } else if (!o.type.empty()) {
        l.builder = build(spec_of(o));
        l.graph = l.builder->graph;
        l.reference = l.builder->reference;
        l.has_reference = true;
    } else {
        throw UsageError("give a graph file or --type/--rank");
    }
    if (!o.reference.empty()) {
        l.reference = PerfectMatching(parse_int_list(o.reference, "--reference"));
        l.has_reference = true;
    }
    auto rep = validate(l.graph);
    if (!rep.valid) throw InputError("", "invalid graph: " + rep.violations.front());
    if (need_reference) {
        if (!l.has_reference) {
            auto all = enumerate_matchings(l.graph);
            if (all.empty()) throw InputError("", "graph has no perfect matching");
            l.reference = all.front();
        }
        if (!is_perfect(l.graph, l.reference)) throw InputError("reference", "reference is not a perfect matching");
    }
    return l;
}

std::vector<Rational> random_state(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> d(1, 9);
    std::vector<Rational> a;
    for (std::size_t i = 0; i < n; ++i) {
        int p = d(rng), q = d(rng);
        a.emplace_back(p, q);
    }
    return a;
}

// --initial: a JSON file {"Q": {"a,k": "p/q", ...}} with k in {0, 1}, or 2r comma separated rationals in cluster order
std::vector<Rational> read_initial(const std::string& arg, const CartanSpec& s) {
    const std::size_t n = static_cast<std::size_t>(2 * s.rank);
    std::vector<Rational> a;
    auto rational_of = [](const std::string& t, const std::string& key) {
        try {
            return Rational::parse(t);
        } catch (const Error&) {
            throw InputError(key, "'" + t + "' is not a rational");
        }
    };
    if (arg.size() > 5 && arg.substr(arg.size() - 5) == ".json") {
        json j = read_json_file(arg);
        if (!j.is_object() || !j.contains("Q") || !j["Q"].is_object()) throw InputError("Q", "initial state needs an object 'Q'");
        a.assign(n, Rational(0));
        std::vector<bool> seen(n, false);
        for (auto it = j["Q"].begin(); it != j["Q"].end(); ++it) {
            auto parts = parse_int_list(it.key(), "Q");
            if (parts.size() != 2 || parts[0] < 1 || parts[0] > s.rank || parts[1] < 0 || parts[1] > 1)
                throw InputError("Q", "key '" + it.key() + "' must be \"a,k\" with a in 1..r and k in {0,1}");
            if (!it.value().is_string()) throw InputError("Q", "value of '" + it.key() + "' must be a rational string");
            std::size_t idx = static_cast<std::size_t>(parts[1] * s.rank + parts[0] - 1);
            a[idx] = rational_of(it.value().get<std::string>(), "Q");
            seen[idx] = true;
        }
        for (std::size_t i = 0; i < n; ++i)
            if (!seen[i]) throw InputError("Q", "missing value for " + q_symbol_names(s)[i]);
    } else {
        std::stringstream ss(arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) a.push_back(rational_of(tok, "--initial"));
        if (a.size() != n) throw UsageError("--initial needs " + std::to_string(n) + " values");
    }
    for (const auto& v : a)
        if (v.is_zero()) throw UsageError("initial values must be nonzero");
    return a;
}

int cmd_validate(const Options& o, json& out) {
    TorusGraph g = graph_from_json(read_json_file(o.input));
    auto rep = validate(g);
    out = to_json(rep);
    return rep.valid ? 0 : 2;
}

int cmd_quiver(const Options& o, json& out) {
    Loaded l = load(o, false);
    out = to_json(quiver_from_graph(l.graph));
    return 0;
}

int cmd_matchings(const Options& o, json& out) {
    Loaded l = load(o, true);
    auto all = enumerate_matchings(l.graph);
    auto vars = face_variables(l.graph);
    json ms = json::array();
    for (const auto& m : all)
        ms.push_back({{"edges", m.edges},
                      {"weight", matching_weight(l.graph, m, vars).to_string()},
                      {"class", to_json(relative_class(l.graph, m, l.reference))}});
    out = {{"count", all.size()}, {"reference", l.reference.edges}, {"matchings", ms}};
    return 0;
}

// {"(i,j)": polynomial}; with --q-symbols the polynomials are in Q variables
int cmd_hamiltonians(const Options& o, json& out) {
    Loaded l = load(o, true);
    if (o.q_symbols && !l.builder) throw UsageError("--q-symbols needs --type/--rank");
    HamiltonianTable t = hamiltonian_table(l.graph, l.reference);
    out = json::object();
    if (o.q_symbols) {
        for (const auto& [h, p] : substitute_table(t, weights_from_state(q_symbolic_initial(l.builder->spec))))
            out[h.to_string()] = p.to_string();
    } else {
        for (const auto& [h, p] : t.entries) out[h.to_string()] = p.to_string();
    }
    return 0;
}

int cmd_mutate(const Options& o, json& out) {
    Loaded l = load(o, o.check_invariance);
    auto sm = mutate_structure(l.graph, o.face);
    out = {{"graph", to_json(sm.graph)}, {"warnings", sm.warnings}, {"fresh_variable", sm.fresh}};
    json recs = json::array();
    for (const auto& r : sm.records) recs.push_back(to_json(r));
    out["records"] = recs;
    if (l.has_reference) out["reference"] = induce_matching(l.reference, sm.records).edges;
    if (o.check_invariance) {
        auto rep = check_move_invariance(l.graph, l.reference, o.face);
        out["invariance"] = to_json(rep);
        if (rep.status == InvarianceReport::Status::failed) return 1;
    }
    return 0;
}

template <class V>
json state_json(const QState<V>& s) {
    json a = json::array();
    for (const auto& v : s.a) a.push_back(value_string(v));
    return {{"k", s.k}, {"values", a}};
}

int cmd_qsystem(const Options& o, json& out) {
    CartanSpec s = spec_of(o);
    if (o.steps < 1) throw UsageError("--steps must be at least 1");
    const std::size_t n = static_cast<std::size_t>(2 * s.rank);
    out = {{"type", s.name()}, {"steps", o.steps}, {"order", q_symbol_names(s)}};
    if (o.symbolic) {
        if (o.random_initial || !o.initial.empty()) throw UsageError("--symbolic takes no initial values");
        auto st = q_symbolic_initial(s);
        json states = json::array();
        std::vector<QState<LaurentPoly>> all{st};
        for (int k = 0; k < o.steps; ++k) all.push_back(q_step(all.back()));
        for (const auto& x : all) states.push_back(state_json(x));
        out["states"] = states;
        if (!o.check_conserved) return 0;
        BuilderOutput b = build(s);
        HamiltonianTable t = hamiltonian_table(b.graph, b.reference);
        auto as_rf = [](const QState<LaurentPoly>& x) {
            FaceWeights<RationalFunction> w;
            for (const auto& [i, v] : weights_from_state(x)) w[i] = RationalFunction(v);
            return w;
        };
        auto first = evaluate_table(t, as_rf(all.front()));
        bool ok = true;
        for (const auto& x : all)
            if (evaluate_table(t, as_rf(x)) != first) ok = false;
        json h = json::array();
        for (const auto& [c, p] : first) h.push_back({{"class", to_json(c)}, {"polynomial", p.as_laurent().to_string()}});
        out["hamiltonians"] = h;
        out["conserved"] = ok;
        return ok ? 0 : 1;
    }
    std::vector<Rational> a(n, Rational(1));
    if (!o.initial.empty()) {
        if (o.random_initial) throw UsageError("--initial and --random are exclusive");
        a = read_initial(o.initial, s);
    } else if (o.random_initial) {
        std::mt19937_64 rng(o.seed);
        a = random_state(rng, n);
    }
    QState<Rational> st = q_initial(s, a);
    if (!o.check_conserved) {
        json states = json::array();
        states.push_back(state_json(st));
        for (int k = 0; k < o.steps; ++k) {
            st = q_step(st);
            states.push_back(state_json(st));
        }
        out["states"] = states;
        return 0;
    }
    BuilderOutput b = build(s);
    auto rep = conservation_check(b, st, o.steps);
    out["conservation"] = to_json(rep);
    return rep.conserved ? 0 : 1;
}

int cmd_hard_particles(const Options& o, json& out) {
    Loaded l = load(o, true);
    if (o.q_symbols && !l.builder) throw UsageError("--q-symbols needs --type/--rank");
    ConflictGraph cg = o.q_symbols
                           ? extract_conflict_graph(l.graph, weights_from_state(q_symbolic_initial(l.builder->spec)), l.reference)
                           : extract_conflict_graph(l.graph, l.reference);
    auto rep = verify_hard_particle_identity(l.graph, l.reference);
    out = to_json(cg, rep.max_particles);
    out["identity_holds"] = rep.ok;
    out["failures"] = rep.failures;
    return rep.ok ? 0 : 1;
}

int cmd_poisson(const Options& o, json& out) {
    CartanSpec s = spec_of(o);
    BuilderOutput b = build(s);
    auto ps = poisson_from_cartan(s);
    auto rep = commutation_check(hamiltonian_table(b.graph, b.reference), ps,
                                 s.type == CartanType::A ? "theorem" : "conjecture evidence");
    out = to_json(rep);
    out["omega"] = to_json(ps.omega);
    return rep.all_commute ? 0 : 1;
}

int cmd_casimirs(const Options& o, json& out) {
    Loaded l = load(o, false);
    PoissonStructure ps;
    if (l.builder) {
        ps = poisson_from_cartan(l.builder->spec);
    } else {
        Quiver q = quiver_from_graph(l.graph);
        std::vector<std::string> labels;
        IntMatrix b;
        // drop frozen faces, then fold faces sharing a variable
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < q.labels.size(); ++i)
            if (!l.graph.face(q.labels[i]).frozen) keep.push_back(i);
        auto vars = face_variables(l.graph);
        if (vars.size() != keep.size()) throw UsageError("casimirs on a file needs one face per variable");
        b = int_zeros(keep.size(), keep.size());
        std::vector<std::string> names;
        for (std::size_t i = 0; i < keep.size(); ++i) {
            names.push_back(var_name(l.graph.face(q.labels[keep[i]]).var));
            for (std::size_t j = 0; j < keep.size(); ++j) b[i][j] = q.b[keep[i]][keep[j]];
        }
        try {
            ps = poisson_from_exchange(b, names);
        } catch (const SingularityError&) {
            throw InputError("", "exchange matrix of the graph is singular; no log-canonical structure");
        }
    }
    auto rep = casimir_check(l.graph, ps);
    out = to_json(rep);
    return rep.ok() ? 0 : 1;
}

int cmd_build(const Options& o, json& out) {
    BuilderOutput b = build(spec_of(o));
    out = to_json(b);
    json g = out["graph"];
    g["reference"] = b.reference.edges;
    out["graph"] = g;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qdimer: dimer Hamiltonians and Q-systems"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--output,-o", o.output, "write JSON here instead of stdout");
    app.add_option("--seed", o.seed, "random seed");

    auto file_arg = [&](CLI::App* c, bool required) {
        auto* opt = c->add_option("input", o.input, "graph JSON file");
        if (required) opt->required();
    };
    auto builder_args = [&](CLI::App* c, bool required) {
        auto* t = c->add_option("--type", o.type, "A or B");
        auto* r = c->add_option("--rank", o.rank, "rank r");
        if (required) {
            t->required();
            r->required();
        }
    };

    auto* validate_cmd = app.add_subcommand("validate", "check a graph file");
    file_arg(validate_cmd, true);

    auto* quiver_cmd = app.add_subcommand("quiver", "exchange matrix of the graph");
    file_arg(quiver_cmd, false);
    builder_args(quiver_cmd, false);

    auto* matchings_cmd = app.add_subcommand("matchings", "enumerate perfect matchings");
    file_arg(matchings_cmd, false);
    builder_args(matchings_cmd, false);
    matchings_cmd->add_option("--reference", o.reference, "comma separated edge ids");

    auto* ham_cmd = app.add_subcommand("hamiltonians", "Hamiltonian table");
    file_arg(ham_cmd, false);
    builder_args(ham_cmd, false);
    ham_cmd->add_option("--reference", o.reference, "comma separated edge ids");
    ham_cmd->add_flag("--q-symbols", o.q_symbols, "also print in Q variables (builders only)");

    auto* mutate_cmd = app.add_subcommand("mutate", "mutation at one face");
    file_arg(mutate_cmd, false);
    builder_args(mutate_cmd, false);
    mutate_cmd->add_option("--face", o.face, "face label")->required();
    mutate_cmd->add_option("--reference", o.reference, "comma separated edge ids");
    mutate_cmd->add_flag("--check-invariance", o.check_invariance, "compare Hamiltonians before and after");

    auto* q_cmd = app.add_subcommand("qsystem", "iterate the Q-system");
    builder_args(q_cmd, true);
    q_cmd->add_option("--steps", o.steps, "number of steps");
    q_cmd->add_flag("--check-conserved", o.check_conserved, "evaluate the Hamiltonians along the orbit");
    q_cmd->add_flag("--symbolic", o.symbolic, "symbolic initial values");
    q_cmd->add_option("--initial", o.initial, "initial state: JSON file or 2r comma separated rationals");
    q_cmd->add_flag("--random", o.random_initial, "random positive initial values from --seed");

    auto* hp_cmd = app.add_subcommand("hard-particles", "conflict graph and partition functions");
    file_arg(hp_cmd, false);
    builder_args(hp_cmd, false);
    hp_cmd->add_option("--reference", o.reference, "comma separated edge ids");
    hp_cmd->add_flag("--q-symbols", o.q_symbols, "loop weights in Q variables (builders only)");

    auto* pc_cmd = app.add_subcommand("poisson-commute", "brackets of all Hamiltonian pairs");
    builder_args(pc_cmd, true);

    auto* cas_cmd = app.add_subcommand("casimirs", "zig-zag weights and centrality");
    file_arg(cas_cmd, false);
    builder_args(cas_cmd, false);

    auto* build_cmd = app.add_subcommand("build", "builder graph for a Q-system");
    builder_args(build_cmd, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    json out;
    int status = 0;
    try {
        CLI::App* c = app.get_subcommands().front();
        const std::string name = c->get_name();
        if (name == "validate") status = cmd_validate(o, out);
        else if (name == "quiver") status = cmd_quiver(o, out);
        else if (name == "matchings") status = cmd_matchings(o, out);
        else if (name == "hamiltonians") status = cmd_hamiltonians(o, out);
        else if (name == "mutate") status = cmd_mutate(o, out);
        else if (name == "qsystem") status = cmd_qsystem(o, out);
        else if (name == "hard-particles") status = cmd_hard_particles(o, out);
        else if (name == "poisson-commute") status = cmd_poisson(o, out);
        else if (name == "casimirs") status = cmd_casimirs(o, out);
        else status = cmd_build(o, out);
    } catch (const InputError& e) {
        std::cerr << "input error";
        if (!e.key.empty()) std::cerr << " (key '" << e.key << "')";
        std::cerr << ": " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::string text = out.dump(2) + "\n";
    if (o.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(o.output);
        if (!f) {
            std::cerr << "cannot write '" << o.output << "'\n";
            return 2;
        }
        f << text;
    }
    return status;
}
