#include <gtest/gtest.h>

#include "support.hpp"

using namespace qdimer;
using namespace testing_support;

namespace {

std::vector<std::vector<int>> as_lists(const std::vector<PerfectMatching>& ms) {
    std::vector<std::vector<int>> out;
    for (const auto& m : ms) out.push_back(m.edges);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TorusGraph> small_graphs() {
    return {load_graph("square_torus.json"), load_graph("example_2x2.json"), builder(CartanType::A, 1).graph,
            builder(CartanType::A, 2).graph};
}

} // namespace

TEST(Enumeration, AgreesWithSubsetOracle) {
    for (const auto& g : small_graphs()) {
        ASSERT_LE(g.edges.size(), 12u);
        auto found = enumerate_matchings(g);
        EXPECT_EQ(as_lists(found), matchings_by_subsets(g));
        // canonical order, no duplicates
        EXPECT_TRUE(std::is_sorted(found.begin(), found.end()));
        EXPECT_EQ(std::adjacent_find(found.begin(), found.end()), found.end());
    }
}

TEST(Enumeration, KnownCounts) {
    EXPECT_EQ(enumerate_matchings(load_graph("square_torus.json")).size(), 4u);
    EXPECT_EQ(enumerate_matchings(builder(CartanType::A, 1).graph).size(), 5u);
    EXPECT_EQ(enumerate_matchings(load_graph("example_2x2.json")).size(), 8u);
}

TEST(Enumeration, DegenerateGraphs) {
    TorusGraph one;
    one.vertices[0] = {0, Color::black};
    one.vertices[1] = {1, Color::white};
    one.edges[0] = {0, 0, 1, {0, 0}, "f", "f"};
    one.rotations[0] = {{0, Color::black}};
    one.rotations[1] = {{0, Color::white}};
    one.faces["f"] = {false, 1};
    EXPECT_EQ(enumerate_matchings(one).size(), 1u);

    TorusGraph none = one;
    none.vertices[2] = {2, Color::black};
    EXPECT_TRUE(enumerate_matchings(none).empty());
}

TEST(Weights, PaperExample) {
    TorusGraph g = load_graph("example_2x2.json");
    // faces a, b, c, d carry A1..A4
    auto vars = face_variables(g);
    auto v = [&](const char* n) { return LaurentPoly::variable(vars, n); };
    PerfectMatching m({0, 2}), mp({0, 3});
    ASSERT_TRUE(is_perfect(g, m));
    ASSERT_TRUE(is_perfect(g, mp));
    EXPECT_EQ(matching_weight(g, m), (v("A1") * v("A3")).pow(2).inverse());
    EXPECT_EQ(matching_weight(g, mp), (v("A1") * v("A2") * v("A3") * v("A4")).inverse());
    auto rc = relative_cycle(g, m, mp);
    ASSERT_EQ(rc.components.size(), 1u);
    EXPECT_EQ(rc.homology, (Homology{0, 1}));
    EXPECT_EQ(loop_weight(g, rc.components[0]), v("A2") * v("A4") * (v("A1") * v("A3")).inverse());
}

TEST(Weights, MatchingWeightMatchesHandComputation) {
    for (const auto& g : small_graphs()) {
        auto vars = face_variables(g);
        for (const auto& m : enumerate_matchings(g)) EXPECT_EQ(matching_weight(g, m, vars), weight_by_hand(g, m.edges, vars));
    }
}

TEST(RelativeCycles, TrivialCases) {
    const auto& b = builder(CartanType::A, 2);
    auto rc = relative_cycle(b.graph, b.reference, b.reference);
    EXPECT_TRUE(rc.components.empty());
    EXPECT_TRUE(rc.homology.is_zero());
}

TEST(RelativeCycles, WeightRatioAndStructure) {
    std::vector<std::pair<TorusGraph, PerfectMatching>> cases;
    for (int r = 1; r <= 3; ++r) cases.push_back({builder(CartanType::A, r).graph, builder(CartanType::A, r).reference});
    cases.push_back({builder(CartanType::B, 2).graph, builder(CartanType::B, 2).reference});
    std::mt19937_64 rng(31);
    for (const auto& [g, m0] : cases) {
        auto all = enumerate_matchings(g);
        auto vars = face_variables(g);
        for (int t = 0; t < 60; ++t) {
            const auto& m = all[rng() % all.size()];
            const auto& base = all[rng() % all.size()];
            auto rc = relative_cycle(g, m, base);
            LaurentPoly w(vars, 1);
            Z2 h;
            std::set<int> verts;
            std::size_t steps = 0;
            for (const auto& c : rc.components) {
                w = w * loop_weight(g, c, vars);
                h += loop_homology(g, c);
                for (Step s : c) verts.insert(tail(g, s));
                steps += c.size();
                EXPECT_EQ(c, canonical_loop(c));
            }
            // vertex disjoint simple loops: every visited vertex is the tail of exactly one step
            EXPECT_EQ(verts.size(), steps);
            EXPECT_EQ(w, matching_weight(g, m, vars) * matching_weight(g, base, vars).inverse());
            EXPECT_EQ(h, rc.homology);
            EXPECT_EQ(h, relative_class(g, m, base));
        }
    }
}

TEST(RelativeCycles, CanonicalKeyIgnoresStartingPoint) {
    const auto& b = builder(CartanType::A, 2);
    auto all = enumerate_matchings(b.graph);
    for (const auto& m : all) {
        for (const auto& c : relative_cycle(b.graph, m, b.reference).components) {
            OrientedLoop rot = c;
            std::rotate(rot.begin(), rot.begin() + 1, rot.end());
            EXPECT_EQ(canonical_loop(rot), c);
            EXPECT_EQ(loop_key(canonical_loop(rot)), loop_key(c));
        }
    }
}

TEST(Reference, IsPerfectDetectsProblems) {
    TorusGraph g = load_graph("square_torus.json");
    EXPECT_TRUE(is_perfect(g, PerfectMatching({0})));
    EXPECT_FALSE(is_perfect(g, PerfectMatching({0, 1})));
    EXPECT_FALSE(is_perfect(g, PerfectMatching(std::vector<int>{})));
    EXPECT_FALSE(is_perfect(g, PerfectMatching({9})));
}
