#include <gtest/gtest.h>

#include "support.hpp"

using namespace qdimer;
using namespace testing_support;

namespace {

// Table built from the subset oracle, classes from raw displacement sums.
std::map<Homology, LaurentPoly> table_by_hand(const TorusGraph& g, const PerfectMatching& m0) {
    auto vars = face_variables(g);
    LaurentPoly w0 = weight_by_hand(g, m0.edges, vars);
    Z2 d0;
    for (int e : m0.edges) d0 += g.edge(e).disp;
    std::map<Homology, LaurentPoly> out;
    for (const auto& m : matchings_by_subsets(g)) {
        Z2 d;
        for (int e : m) d += g.edge(e).disp;
        auto [it, fresh] = out.try_emplace(d - d0, LaurentPoly(vars));
        it->second += weight_by_hand(g, m, vars) * w0.inverse();
    }
    return out;
}

std::map<std::string, Rational> random_point(std::mt19937_64& rng, const std::vector<std::string>& vars) {
    std::map<std::string, Rational> at;
    for (const auto& v : vars) at[v] = random_positive(rng);
    return at;
}

} // namespace

TEST(HamiltonianTable, AgreesWithHandTables) {
    std::vector<std::pair<TorusGraph, PerfectMatching>> cases = {
        {load_graph("square_torus.json"), PerfectMatching({0})},
        {load_graph("example_2x2.json"), PerfectMatching({0, 3})},
        {builder(CartanType::A, 1).graph, builder(CartanType::A, 1).reference},
        {builder(CartanType::A, 2).graph, builder(CartanType::A, 2).reference},
    };
    for (const auto& [g, m0] : cases) {
        auto t = hamiltonian_table(g, m0);
        EXPECT_EQ(t.entries, table_by_hand(g, m0));
        EXPECT_EQ(t.matching_count, matchings_by_subsets(g).size());
    }
}

TEST(HamiltonianTable, A1ClosedForm) {
    const auto& b = builder(CartanType::A, 1);
    auto t = hamiltonian_table(b.graph, b.reference);
    auto vars = t.variables;
    LaurentPoly x = LaurentPoly::variable(vars, "A1"), y = LaurentPoly::variable(vars, "A2"), one(vars, 1);
    ASSERT_EQ(t.entries.size(), 3u);
    EXPECT_EQ(t.at({0, 0}), one);
    EXPECT_EQ(t.at({0, 2}), one);
    EXPECT_EQ(t.at({0, 1}), (x * x + y * y + one) * (x * y).inverse());
    EXPECT_TRUE(t.at({5, 5}).is_zero());
}

TEST(HamiltonianTable, UnitWeightsCountMatchings) {
    for (int r = 1; r <= 3; ++r) {
        const auto& b = builder(CartanType::A, r);
        auto t = hamiltonian_table(b.graph, b.reference);
        FaceWeights<Rational> ones;
        for (const auto& [lab, f] : b.graph.faces)
            if (!f.frozen) ones[f.var] = 1;
        Rational total = 0;
        for (const auto& [h, v] : evaluate_table(t, ones)) total = total + v;
        EXPECT_EQ(total, Rational(static_cast<long>(t.matching_count)));
    }
    EXPECT_EQ(hamiltonian_table(builder(CartanType::A, 1).graph, builder(CartanType::A, 1).reference).matching_count, 5u);
}

TEST(HamiltonianTable, GaugeInvariant) {
    const auto& b = builder(CartanType::A, 2);
    TorusGraph g = b.graph;
    for (const auto& [v, x] : b.graph.vertices) g = gauge_transform(g, v, {v % 3 - 1, v % 2});
    EXPECT_EQ(hamiltonian_table(g, b.reference).entries, hamiltonian_table(b.graph, b.reference).entries);
}

TEST(HamiltonianTable, ChangingReferenceRescalesAndShifts) {
    const auto& b = builder(CartanType::A, 2);
    auto all = enumerate_matchings(b.graph);
    auto vars = face_variables(b.graph);
    auto t0 = hamiltonian_table(b.graph, b.reference);
    for (const auto& m1 : {all[1], all[all.size() / 2], all.back()}) {
        auto t1 = hamiltonian_table(b.graph, m1);
        LaurentPoly ratio = matching_weight(b.graph, b.reference, vars) * matching_weight(b.graph, m1, vars).inverse();
        Homology shift = relative_class(b.graph, b.reference, m1);
        ASSERT_EQ(t1.entries.size(), t0.entries.size());
        for (const auto& [h, p] : t0.entries) EXPECT_EQ(t1.at(h + shift), p * ratio);
    }
}

TEST(HamiltonianTable, BadReferenceRejected) {
    const auto& b = builder(CartanType::A, 1);
    EXPECT_THROW(hamiltonian_table(b.graph, PerfectMatching({b.reference.edges[0]})), PreconditionError);
}

TEST(HamiltonianTable, EvaluateAndSubstituteAgree) {
    std::mt19937_64 rng(41);
    const auto& b = builder(CartanType::A, 3);
    auto t = hamiltonian_table(b.graph, b.reference);
    for (int trial = 0; trial < 5; ++trial) {
        auto at = random_point(rng, t.variables);
        FaceWeights<Rational> w;
        FaceWeights<LaurentPoly> wl;
        FaceWeights<RationalFunction> wr;
        for (const auto& [name, v] : at) {
            int i = std::stoi(name.substr(1));
            w[i] = v;
            wl[i] = LaurentPoly(t.variables, v);
            wr[i] = RationalFunction(LaurentPoly(t.variables, v));
        }
        auto ev = evaluate_table(t, w);
        auto sub = substitute_table(t, wl);
        auto rf = evaluate_table(t, wr);
        for (const auto& [h, p] : t.entries) {
            EXPECT_EQ(ev.at(h), eval_terms(p, at));
            EXPECT_EQ(sub.at(h), LaurentPoly(t.variables, ev.at(h)));
            EXPECT_EQ(rf.at(h), RationalFunction(LaurentPoly(t.variables, ev.at(h))));
        }
    }
}

TEST(MoveInvariance, NumericOracle) {
    // evaluate before and after mutation at random points, mutated face at (n0 n2 + n1 n3) / A_k
    std::mt19937_64 rng(42);
    for (auto [t, r] : {std::pair{CartanType::A, 2}, {CartanType::A, 3}}) {
        const auto& b = builder(t, r);
        auto before = hamiltonian_table(b.graph, b.reference);
        for (const auto& lab : b.sequence[0]) {
            auto sm = mutate_structure(b.graph, lab);
            auto after = hamiltonian_table(sm.graph, induce_matching(b.reference, sm.records));
            for (int trial = 0; trial < 3; ++trial) {
                FaceWeights<Rational> w;
                for (const auto& name : before.variables) w[std::stoi(name.substr(1))] = random_positive(rng);
                auto val = [&](const std::string& l) { return face_value(b.graph, w, l); };
                const auto& n = sm.quad.neighbors;
                FaceWeights<Rational> w1 = w;
                w1[sm.new_var] = (val(n[0]) * val(n[2]) + val(n[1]) * val(n[3])) / val(lab);
                auto e0 = evaluate_table(before, w);
                auto e1 = evaluate_table(after, w1);
                EXPECT_EQ(e0, e1) << b.spec.name() << " face " << lab;
            }
            auto rep = check_move_invariance(b.graph, b.reference, lab);
            EXPECT_EQ(rep.status, InvarianceReport::Status::passed) << rep.diagnostic;
        }
    }
}
