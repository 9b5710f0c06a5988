#include <doctest.h>

#include <algorithm>

#include "geoprior/generators.hpp"
#include "geoprior/growth.hpp"

using namespace geoprior;

namespace {

Graph make(Family family, std::uint64_t a, std::uint64_t b = 0, std::uint64_t seed = 0) {
    GeneratorSpec spec;
    spec.family = family;
    spec.seed = seed;
    switch (family) {
        case Family::Cycle: spec.n = a; break;
        case Family::Lattice: spec.side = a; break;
        case Family::RegularTree:
        case Family::BTree:
            spec.b = a;
            spec.depth = b;
            break;
        case Family::WattsStrogatz:
            spec.n = a;
            spec.k = 4;
            spec.beta = 0.1;
            break;
        default: spec.n = a;
    }
    return generate(spec);
}

// Lattice node index at (row, col) for side s: ids are row-major integers,
// canonical order is numeric, so the graph index equals row*s+col.
NodeIndex lattice_at(std::uint64_t s, std::uint64_t r, std::uint64_t c) {
    return static_cast<NodeIndex>(r * s + c);
}

}  // namespace

TEST_CASE("growth law reference counts") {
    CHECK(gamma_ee(1, 3, 3) == 22.0);
    CHECK(gamma_ee(1, 1, 3) == 4.0);
    CHECK(gamma_ee(4, 3, 3) == 25.0);
    CHECK(gamma_le(1, 3, 3) == 19.0);
    CHECK(gamma_le(1, 2, 3) == 10.0);
    CHECK(gamma_le(4, 3, 3) == 22.0);
    // gamma_EE == gamma_LE below R=3, the reason hop mode requires R >= 3
    CHECK(gamma_ee(1, 1, 3) == gamma_le(1, 1, 3));
    CHECK(gamma_ee(1, 2, 3) == gamma_le(1, 2, 3));
    CHECK(gamma_ee(1, 3, 3) != gamma_le(1, 3, 3));
}

TEST_CASE("sigma from the displayed case formula") {
    CHECK(sigma(GrowthClass::Sublinear) == 1);
    CHECK(sigma(GrowthClass::Exponential) == -1);
    CHECK(sigma(GrowthClass::Linear) == 0);
}

TEST_CASE("ternary tree interior is exponential with count 22") {
    Graph t = make(Family::RegularTree, 3, 7);
    auto rg = regularize(t);
    // root and any vertex with a full depth-3 subtree
    auto root = classify_original(rg, 0, 3);
    CHECK(root.cls == GrowthClass::Exponential);
    CHECK(root.neighborhood_size == 22.0);  // 1+3+6+12 = gamma_EE exactly
    // node 4: first child of the first child (depth 2)
    auto inner = classify_original(rg, 4, 3);
    CHECK(inner.cls == GrowthClass::Exponential);
    CHECK(inner.neighborhood_size == 22.0);
}

TEST_CASE("regularized cycle vertices are sublinear, count 9 at R=3") {
    Graph c = make(Family::Cycle, 60);
    auto rg = regularize(c);
    for (NodeIndex v = 0; v < c.node_count(); ++v) {
        auto g = classify_original(rg, v, 3);
        CHECK(g.cls == GrowthClass::Sublinear);
        CHECK(g.neighborhood_size == 9.0);  // 1+3+3+2, frozen from the BFS oracle
    }
    // auxiliary vertices are sublinear too (counts 9 or 10)
    for (NodeIndex x = 0; x < rg.graph.node_count(); ++x) {
        auto g = classify_growth(rg, x, 3);
        CHECK(g.cls == GrowthClass::Sublinear);
        CHECK((g.neighborhood_size == 9.0 || g.neighborhood_size == 10.0));
    }
    // frozen counts at larger radii
    CHECK(classify_original(rg, 30, 4).neighborhood_size == 12.0);
    CHECK(classify_original(rg, 30, 5).neighborhood_size == 15.0);
}

TEST_CASE("regularized lattice interior is linear, count 24 at R=3") {
    const std::uint64_t side = 16;
    Graph l = make(Family::Lattice, side);
    auto rg = regularize(l);
    NodeIndex mid = lattice_at(side, 8, 8);
    auto g3 = classify_original(rg, mid, 3);
    CHECK(g3.cls == GrowthClass::Linear);
    CHECK(g3.neighborhood_size == 24.0);  // |v| + ring-ball, frozen from the BFS oracle
    CHECK(g3.root_size == 4.0);
    CHECK(classify_original(rg, mid, 4).neighborhood_size == 40.0);
    CHECK(classify_original(rg, mid, 5).neighborhood_size == 60.0);
    CHECK(classify_original(rg, mid, 4).cls == GrowthClass::Linear);
    CHECK(classify_original(rg, mid, 5).cls == GrowthClass::Linear);
}

TEST_CASE("R below 3 is rejected in hop mode") {
    Graph c = make(Family::Cycle, 12);
    auto rg = regularize(c);
    CHECK_THROWS_AS(classify_growth(rg, 0, 2), ConfigError);
    CHECK_THROWS_AS(three_regular_score(rg, 2, 0.1), ConfigError);
}

TEST_CASE("decide_prior thresholds") {
    CHECK(decide_prior(1.138, 0.1) == Prior::Spherical);
    CHECK(decide_prior(-1.691, 0.1) == Prior::Hyperbolic);
    CHECK(decide_prior(0.0, 0.1) == Prior::Euclidean);
    CHECK(decide_prior(0.1, 0.1) == Prior::Euclidean);  // boundary is euclidean
    CHECK_THROWS_AS(decide_prior(0.0, -1.0), ConfigError);
}

TEST_CASE("cycle scores spherical") {
    Graph c = make(Family::Cycle, 500);
    auto rg = regularize(c);
    auto all = three_regular_score(rg, 3, 0.1, ScoreScope::AllG3Vertices);
    CHECK(all.a_raw > 0.0);
    CHECK(all.prior == Prior::Spherical);
    CHECK(all.sublinear == rg.graph.node_count());
    auto orig = three_regular_score(rg, 3, 0.1, ScoreScope::OriginalOnly);
    CHECK(orig.prior == Prior::Spherical);
    CHECK(orig.a_raw == 9.0 * 500);  // every original counts 9 with sigma +1
}

TEST_CASE("lattice interior subset scores exactly zero") {
    const std::uint64_t side = 16;
    Graph l = make(Family::Lattice, side);
    auto rg = regularize(l);
    std::vector<NodeIndex> interior;
    for (std::uint64_t r = 0; r < side; ++r)
        for (std::uint64_t c = 0; c < side; ++c) {
            std::uint64_t margin = std::min({r, c, side - 1 - r, side - 1 - c});
            if (margin > 4) interior.push_back(lattice_at(side, r, c));
        }
    REQUIRE(!interior.empty());
    auto report =
        three_regular_score(rg, 3, 0.1, ScoreScope::OriginalOnly, 1, &interior);
    CHECK(report.a_raw == 0.0);
    CHECK(report.linear == interior.size());
    CHECK(report.prior == Prior::Euclidean);
}

TEST_CASE("A_raw is the signed neighborhood-weighted sum") {
    Graph c = make(Family::Cycle, 40);
    auto rg = regularize(c);
    auto report = three_regular_score(rg, 3, 0.1, ScoreScope::AllG3Vertices, 1, nullptr, true);
    double recomputed = 0.0;
    for (const auto& row : report.per_vertex)
        recomputed += sigma(row.cls) * row.neighborhood_size;
    CHECK(report.a_raw == recomputed);
    // normalization: #E(G3) x mean edge weight
    double denom = report.g3_edges * report.g3_mean_edge_weight;
    CHECK(report.a_normalized == doctest::Approx(report.a_raw / denom));
}

TEST_CASE("score invariant under node relabeling") {
    GeneratorSpec spec;
    spec.family = Family::WattsStrogatz;
    spec.n = 120;
    spec.k = 4;
    spec.beta = 0.2;
    spec.seed = 11;
    Graph g = generate(spec);
    // relabel i -> i + 1000 (same structure, different names)
    std::vector<std::tuple<std::string, std::string, double>> edges;
    for (const auto& e : g.edges())
        edges.emplace_back(std::to_string(std::stoll(g.name(e.u)) + 1000),
                           std::to_string(std::stoll(g.name(e.v)) + 1000), 1.0);
    Graph relabeled = Graph::build(std::move(edges), false);
    auto a = three_regular_score(regularize(g), 3, 0.1, ScoreScope::OriginalOnly);
    auto b = three_regular_score(regularize(relabeled), 3, 0.1, ScoreScope::OriginalOnly);
    CHECK(a.a_raw == b.a_raw);
    CHECK(a.a_normalized == b.a_normalized);
}

TEST_CASE("removing a sublinear vertex never increases A_raw") {
    Graph c = make(Family::Cycle, 30);
    auto rg = regularize(c);
    std::vector<NodeIndex> all(c.node_count());
    for (NodeIndex i = 0; i < all.size(); ++i) all[i] = i;
    auto full = three_regular_score(rg, 3, 0.1, ScoreScope::OriginalOnly, 1, &all);
    for (NodeIndex drop = 0; drop < 5; ++drop) {
        std::vector<NodeIndex> subset;
        for (NodeIndex v : all)
            if (v != drop) subset.push_back(v);
        auto partial = three_regular_score(rg, 3, 0.1, ScoreScope::OriginalOnly, 1, &subset);
        CHECK(partial.a_raw <= full.a_raw);
    }
}

TEST_CASE("prior stable across R for the canonical families") {
    Graph c = make(Family::Cycle, 200);
    auto rgc = regularize(c);
    Graph t = make(Family::RegularTree, 3, 7);
    auto rgt = regularize(t);
    const std::uint64_t side = 26;
    Graph l = make(Family::Lattice, side);
    auto rgl = regularize(l);

    Prior cycle_prior{}, tree_prior{};
    bool first = true;
    for (double R : {3.0, 4.0, 5.0, 10.0}) {
        auto pc = three_regular_score(rgc, R, 0.1, ScoreScope::OriginalOnly).prior;
        // tree: vertices with full depth-R descendance stay exponential
        std::vector<NodeIndex> deep;
        deep.push_back(0);
        auto tc = classify_original(rgt, 0, R);
        CHECK(tc.cls == GrowthClass::Exponential);
        auto pt = three_regular_score(rgt, R, 0.1, ScoreScope::OriginalOnly, 1, &deep).prior;
        // lattice interior under the R-dependent margin
        std::vector<NodeIndex> interior;
        for (std::uint64_t r = 0; r < side; ++r)
            for (std::uint64_t cc = 0; cc < side; ++cc)
                if (std::min({r, cc, side - 1 - r, side - 1 - cc}) > R + 1)
                    interior.push_back(lattice_at(side, r, cc));
        auto pl = three_regular_score(rgl, R, 0.1, ScoreScope::OriginalOnly, 1, &interior).prior;
        CHECK(pl == Prior::Euclidean);
        if (first) {
            cycle_prior = pc;
            tree_prior = pt;
            first = false;
        } else {
            CHECK(pc == cycle_prior);
            CHECK(pt == tree_prior);
        }
    }
    CHECK(cycle_prior == Prior::Spherical);
    CHECK(tree_prior == Prior::Hyperbolic);
}

TEST_CASE("weighted scaling invariance") {
    // scaling all weights by c and R by c leaves neighborhoods identical
    std::vector<std::tuple<std::string, std::string, double>> edges{
        {"a", "b", 0.5}, {"b", "c", 1.0}, {"c", "d", 0.75}, {"d", "a", 0.5},
        {"a", "c", 1.25}};
    Graph g1 = Graph::build(edges, true);
    std::vector<std::tuple<std::string, std::string, double>> scaled;
    for (auto [u, v, w] : edges) scaled.emplace_back(u, v, 4.0 * w);
    Graph g2 = Graph::build(scaled, true);
    auto rg1 = regularize(g1);
    auto rg2 = regularize(g2);
    CHECK(rg2.epsilon == 4.0 * rg1.epsilon);
    // the weighted neighborhood sets are identical under joint scaling
    for (NodeIndex v = 0; v < g1.node_count(); ++v) {
        auto c1 = classify_original(rg1, v, 2.0);
        auto c2 = classify_original(rg2, v, 8.0);
        CHECK(c1.neighborhood_size == c2.neighborhood_size);
    }
}

TEST_CASE("score report serialization") {
    Graph c = make(Family::Cycle, 12);
    auto rg = regularize(c);
    auto report = three_regular_score(rg, 3, 0.1, ScoreScope::AllG3Vertices, 1, nullptr, true);
    auto json = report.to_json(false);
    CHECK(json.find("\"schema_version\": 1") != std::string::npos);
    CHECK(json.find("\"prior\": \"spherical\"") != std::string::npos);
    CHECK(json.find("per_vertex") == std::string::npos);
    auto with_table = report.to_json(true);
    CHECK(with_table.find("per_vertex") != std::string::npos);
    auto csv = report.per_vertex_csv();
    CHECK(csv.rfind("node,class,neighborhood_size\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 48);
}

TEST_CASE("deterministic across thread counts") {
    GeneratorSpec spec;
    spec.family = Family::WattsStrogatz;
    spec.n = 300;
    spec.k = 4;
    spec.beta = 0.1;
    spec.seed = 5;
    Graph g = generate(spec);
    auto rg = regularize(g);
    auto t1 = three_regular_score(rg, 3, 0.1, ScoreScope::AllG3Vertices, 1, nullptr, true);
    auto t8 = three_regular_score(rg, 3, 0.1, ScoreScope::AllG3Vertices, 8, nullptr, true);
    CHECK(t1.a_raw == t8.a_raw);
    CHECK(t1.to_json(true) == t8.to_json(true));
}
