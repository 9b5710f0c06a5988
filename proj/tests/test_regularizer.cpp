#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "geoprior/generators.hpp"
#include "geoprior/regularizer.hpp"

using namespace geoprior;

namespace {

Graph from_text(const std::string& text, bool weighted) {
    std::istringstream in(text);
    return Graph::load_edge_list(in, weighted);
}

Graph make(Family family, std::uint64_t a, std::uint64_t b = 0, std::uint64_t seed = 0) {
    GeneratorSpec spec;
    spec.family = family;
    spec.seed = seed;
    switch (family) {
        case Family::Cycle:
        case Family::ErdosRenyi:
        case Family::WattsStrogatz:
        case Family::BarabasiAlbert: spec.n = a; break;
        case Family::Lattice: spec.side = a; break;
        case Family::BTree:
        case Family::RegularTree:
            spec.b = a;
            spec.depth = b;
            break;
    }
    if (family == Family::ErdosRenyi) spec.p = 0.08;
    if (family == Family::WattsStrogatz) {
        spec.k = 4;
        spec.beta = 0.1;
    }
    if (family == Family::BarabasiAlbert) spec.m = 2;
    return generate(spec);
}

void check_uniform_degree(const RegularizedGraph& rg) {
    for (NodeIndex x = 0; x < rg.graph.node_count(); ++x)
        CHECK(rg.graph.neighbors(x).size() == 3);
}

}  // namespace

TEST_CASE("3-regular input is unchanged") {
    Graph k4 = from_text("0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n", false);
    auto rg = regularize(k4);
    CHECK(rg.graph.node_count() == 4);
    CHECK(rg.graph.edge_count() == 6);
    CHECK(rg.auxiliary_count() == 0);
    check_uniform_degree(rg);
    // weights preserved
    for (const auto& e : rg.graph.edges()) CHECK(e.weight == 1.0);
    // identity quasi-isometry
    auto stats = verify_quasi_isometry(k4, rg);
    CHECK(stats.max_additive == 0.0);
    CHECK(stats.max_ratio == 1.0);
    CHECK(stats.ok());
}

TEST_CASE("cycle regularization: 4N nodes, chain gadgets") {
    const std::uint64_t n = 24;
    Graph c = make(Family::Cycle, n);
    auto rg = regularize(c);
    CHECK(rg.graph.node_count() == 4 * n);  // each chain vertex adds 3 auxiliaries
    check_uniform_degree(rg);
    CHECK(rg.epsilon == 1.0);
    // every original survives with root size 1
    for (NodeIndex v = 0; v < c.node_count(); ++v) {
        CHECK(rg.survives(v));
        CHECK(rg.root_size[v] == 1.0);
    }
}

TEST_CASE("star with center degree 5 becomes a 5-ring") {
    Graph star = from_text("c u1\nc u2\nc u3\nc u4\nc u5\n", false);
    auto rg = regularize(star);
    // 5 leaves keep themselves + 4 gadget nodes each, center becomes 5 ring nodes
    CHECK(rg.graph.node_count() == 5 * 5 + 5);
    check_uniform_degree(rg);
    NodeIndex c = star.require_node("c");
    CHECK_FALSE(rg.survives(c));
    CHECK(rg.ring[c].size() == 5);
    CHECK(rg.root_size[c] == 5.0);
    CHECK(rg.attachments[c].size() == 5);
}

TEST_CASE("gadget weights are eps/4 and split halves are exact") {
    Graph wg = from_text("a b 2\nb c 0.5\nc d 1\n", true);  // path: two leaves, two chains
    auto rg = regularize(wg);
    CHECK(rg.epsilon == 2.0);
    check_uniform_degree(rg);
    // each edge weight is either an untouched original, an exact half of an
    // original, or exactly eps/4
    for (const auto& e : rg.graph.edges()) {
        bool gadget = e.weight == 0.5;  // eps/4
        bool original = e.weight == 2.0 || e.weight == 0.5 || e.weight == 1.0;
        bool half = e.weight == 1.0 || e.weight == 0.25 || e.weight == 0.5;
        CHECK((gadget || original || half));
    }
}

TEST_CASE("errors: empty, single node, isolated") {
    Graph empty;
    CHECK_THROWS_AS(regularize(empty), AnalysisError);
    std::istringstream in("");
    std::vector<std::string> one{"a"};
    Graph single = Graph::load_edge_list(in, false, &one);
    CHECK_THROWS_AS(regularize(single), AnalysisError);
    std::istringstream in2("a b\n");
    std::vector<std::string> extra{"c"};
    Graph iso = Graph::load_edge_list(in2, false, &extra);
    CHECK_THROWS_AS(regularize(iso), AnalysisError);
}

TEST_CASE("uniform degree across families") {
    check_uniform_degree(regularize(make(Family::Cycle, 30)));
    check_uniform_degree(regularize(make(Family::Lattice, 8)));
    check_uniform_degree(regularize(make(Family::BTree, 3, 4)));
    check_uniform_degree(regularize(make(Family::RegularTree, 3, 5)));
    check_uniform_degree(regularize(make(Family::BarabasiAlbert, 60)));
    Graph er = make(Family::ErdosRenyi, 60, 0, 5);
    if (er.count_isolated() > 0) er = er.without_isolated();
    check_uniform_degree(regularize(er));
    // K2: two adjacent leaves
    check_uniform_degree(regularize(from_text("a b\n", false)));
    // K3: all chains, mixed retain/replace orientations
    check_uniform_degree(regularize(from_text("1 2\n2 3\n1 3\n", false)));
}

TEST_CASE("quasi-isometry bound on the 12-cycle, exhaustive") {
    Graph c = make(Family::Cycle, 12);
    auto rg = regularize(c);
    auto stats = verify_quasi_isometry(c, rg);
    CHECK(stats.pairs_checked == 12 * 11 / 2);
    CHECK(stats.ok());
    // identity pair
    auto self_stats = verify_quasi_isometry(c, rg, {{3, 3}});
    CHECK(self_stats.max_additive == 0.0);
}

TEST_CASE("quasi-isometry holds on weighted inputs") {
    Graph wg = from_text("a b 2\nb c 0.5\nc d 1\nd e 3\nb e 1.5\na e 0.25\n", true);
    auto rg = regularize(wg);
    check_uniform_degree(rg);
    CHECK(verify_quasi_isometry(wg, rg).ok());
}

TEST_CASE("provenance and emission") {
    Graph star = from_text("c u1\nc u2\nc u3\nc u4\n", false);
    auto rg = regularize(star);
    NodeIndex c = star.require_node("c");
    // ring nodes carry the center as origin with 1-based gadget indices
    for (NodeIndex rn : rg.ring[c]) {
        CHECK(rg.provenance[rn].origin == c);
        CHECK(rg.provenance[rn].aux_rank >= 1);
    }
    auto text = regularized_edge_list(rg);
    CHECK(text.find("c#a1") != std::string::npos);
    auto json = provenance_json(star, rg);
    CHECK(json.find("\"auxiliary\"") != std::string::npos);
    CHECK(json.find("\"epsilon\"") != std::string::npos);
}
