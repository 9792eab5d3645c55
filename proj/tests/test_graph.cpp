#include <gtest/gtest.h>

#include "support.hpp"

using namespace qdimer;
using namespace testing_support;

TEST(TorusGraphIO, SquareTorusLoadsAndValidates) {
    TorusGraph g = load_graph("square_torus.json");
    EXPECT_EQ(g.vertices.size(), 2u);
    EXPECT_EQ(g.edges.size(), 4u);
    auto rep = validate(g);
    EXPECT_TRUE(rep.valid);
    EXPECT_EQ(rep.traced_faces, 2);
    EXPECT_EQ(rep.euler, 0);
    EXPECT_TRUE(rep.warnings.empty());
}

TEST(TorusGraphIO, RoundTripIsIdentity) {
    for (const auto& name : {"square_torus.json", "example_2x2.json"}) {
        TorusGraph g = load_graph(name);
        json j = to_json(g);
        TorusGraph h = graph_from_json(j);
        EXPECT_EQ(to_json(h).dump(), j.dump()) << name;
    }
    const auto& b = builder(CartanType::B, 2);
    EXPECT_EQ(to_json(graph_from_json(to_json(b.graph))).dump(), to_json(b.graph).dump());
}

TEST(TorusGraphIO, NonBipartiteIsInvalid) {
    TorusGraph g = load_graph("bad_nonbipartite.json");
    auto rep = validate(g);
    EXPECT_FALSE(rep.valid);
    EXPECT_FALSE(rep.violations.empty());
}

TEST(TorusGraphIO, MalformedInputNamesKey) {
    json j = to_json(load_graph("square_torus.json"));
    json no_edges = j;
    no_edges.erase("edges");
    try {
        graph_from_json(no_edges);
        FAIL() << "no error";
    } catch (const InputError& e) {
        EXPECT_EQ(e.key, "edges");
    }
    json bad_dx = j;
    bad_dx["edges"][0]["dx"] = "zero";
    try {
        graph_from_json(bad_dx);
        FAIL() << "no error";
    } catch (const InputError& e) {
        EXPECT_EQ(e.key, "dx");
    }
    json bad_color = j;
    bad_color["vertices"][0]["color"] = "red";
    EXPECT_THROW(graph_from_json(bad_color), InputError);
    EXPECT_THROW(read_json_file(data("does_not_exist.json")), InputError);
}

TEST(TorusGraphIO, BrokenRotationIsReported) {
    TorusGraph g = load_graph("square_torus.json");
    g.rotations[0].pop_back();
    EXPECT_FALSE(validate(g).valid);
    TorusGraph h = load_graph("square_torus.json");
    h.edges[0].face_left = "2";  // face walk now sees two labels
    EXPECT_FALSE(validate(h).valid);
}

TEST(TorusGraph, FaceWalksCoverEveryStepOnce) {
    for (const TorusGraph& g : {load_graph("square_torus.json"), load_graph("example_2x2.json"),
                                builder(CartanType::A, 3).graph, builder(CartanType::B, 2).graph}) {
        std::map<Step, int> seen;
        for (const auto& f : trace_faces(g))
            for (Step s : f.boundary) ++seen[s];
        EXPECT_EQ(seen.size(), 2 * g.edges.size());
        for (const auto& [s, c] : seen) EXPECT_EQ(c, 1);
    }
}

TEST(TorusGraph, ZigzagsUseEachEdgeTwice) {
    for (const TorusGraph& g : {load_graph("square_torus.json"), builder(CartanType::A, 2).graph,
                                builder(CartanType::B, 3).graph}) {
        std::map<int, int> uses;
        Z2 total;
        for (const auto& z : zigzag_loops(g)) {
            for (Step s : z) ++uses[s.edge];
            total += loop_homology(g, z);
        }
        for (const auto& [e, c] : uses) EXPECT_EQ(c, 2) << "edge " << e;
        EXPECT_EQ(uses.size(), g.edges.size());
        EXPECT_TRUE(total.is_zero());
    }
}

TEST(TorusGraph, GaugeKeepsLoopClasses) {
    std::mt19937_64 rng(21);
    const TorusGraph& g0 = builder(CartanType::A, 2).graph;
    auto faces = trace_faces(g0);
    auto zz = zigzag_loops(g0);
    std::uniform_int_distribution<int> d(-2, 2);
    TorusGraph g = g0;
    for (int t = 0; t < 20; ++t) {
        auto it = g.vertices.begin();
        std::advance(it, static_cast<long>(rng() % g.vertices.size()));
        g = gauge_transform(g, it->first, {d(rng), d(rng)});
    }
    for (const auto& f : faces) EXPECT_EQ(loop_homology(g, f.boundary), loop_homology(g0, f.boundary));
    for (const auto& z : zz) EXPECT_EQ(loop_homology(g, z), loop_homology(g0, z));
    // gauge_to_zero zeroes the chosen edge
    int v = g.edges.begin()->second.black;
    TorusGraph h = gauge_to_zero(g, v, g.edges.begin()->first);
    EXPECT_TRUE(h.edges.begin()->second.disp.is_zero());
}

TEST(TorusGraph, FaceLoopsAreContractibleInBuilders) {
    for (const TorusGraph& g : {builder(CartanType::A, 1).graph, builder(CartanType::A, 4).graph,
                                builder(CartanType::B, 2).graph}) {
        for (const auto& f : trace_faces(g))
            if (f.label != "0") EXPECT_TRUE(loop_homology(g, f.boundary).is_zero()) << f.label;
    }
}

TEST(Quiver, SkewSymmetricAndCancelling) {
    TorusGraph sq = load_graph("square_torus.json");
    Quiver q = quiver_from_graph(sq);
    EXPECT_EQ(q.b, (IntMatrix{{0, 0}, {0, 0}}));
    for (int r = 1; r <= 4; ++r) EXPECT_TRUE(is_skew_symmetric(quiver_from_graph(builder(CartanType::A, r).graph).b));
    EXPECT_FALSE(quiver_from_graph(builder(CartanType::A, 2).graph).has_one_cycles);
}

TEST(Quiver, A1BuilderMatchesHandMatrix) {
    // faces 0 (frozen), 1, 2: B restricted to 1,2 is the A1 exchange matrix [[0,2],[-2,0]]
    Quiver q = quiver_from_graph(builder(CartanType::A, 1).graph);
    ASSERT_EQ(q.labels, (std::vector<std::string>{"0", "1", "2"}));
    EXPECT_EQ(q.b[1][2], 2);
    EXPECT_EQ(q.b[2][1], -2);
    EXPECT_EQ(q.b[1][1], 0);
}

TEST(Quiver, ArBlockStructure) {
    for (int r = 1; r <= 4; ++r) {
        const auto& b = builder(CartanType::A, r);
        Quiver q = quiver_from_graph(b.graph);
        CartanSpec s = cartan(CartanType::A, r);
        // B restricted to faces 1..2r equals [[0, C], [-C, 0]] (C symmetric for A)
        for (int i = 0; i < 2 * r; ++i)
            for (int j = 0; j < 2 * r; ++j) {
                int expect = 0;
                if (i < r && j >= r) expect = s.c[i][j - r];
                if (i >= r && j < r) expect = -s.c[i - r][j];
                EXPECT_EQ(q.b[i + 1][j + 1], expect) << "r=" << r << " i=" << i << " j=" << j;
            }
    }
}

TEST(Quiver, OneCycleDetected) {
    TorusGraph g = load_graph("square_torus.json");
    g.edges[0].face_right = g.edges[0].face_left;
    Quiver q = quiver_from_graph(g);
    EXPECT_TRUE(q.has_one_cycles);
    EXPECT_EQ(q.one_cycle_edges, (std::vector<int>{0}));
}

TEST(Embedding, RejectsSameColourLink) {
    PeriodicDrawing d;
    d.period_x = 2;
    d.period_y = 2;
    d.add_node(0, Color::black, 0, 0);
    d.add_node(1, Color::black, 1, 0);
    d.add_link(0, 1);
    d.label_at = [](double, double) { return std::string("0"); };
    EXPECT_THROW(realize(d), StructureError);
}

TEST(Embedding, BuildersAreValid) {
    for (int r = 1; r <= 4; ++r) {
        auto rep = validate(builder(CartanType::A, r).graph);
        EXPECT_TRUE(rep.valid) << "A" << r;
    }
    for (int r = 2; r <= 3; ++r) EXPECT_TRUE(validate(builder(CartanType::B, r).graph).valid) << "B" << r;
    EXPECT_EQ(builder(CartanType::A, 1).graph.vertices.size(), 4u);
    EXPECT_EQ(builder(CartanType::A, 1).graph.edges.size(), 6u);
}
