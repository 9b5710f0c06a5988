#include "geoprior/regularizer.hpp"

#include <algorithm>
#include <sstream>

#include "geoprior/report.hpp"

namespace geoprior {

namespace {

struct Builder {
    std::vector<std::string> names;
    std::vector<int> aux_ranks;             // parallel to names
    std::vector<NodeIndex> origins;         // parallel to names
    std::vector<std::tuple<std::size_t, std::size_t, double>> edges;  // local ids

    std::size_t add_node(const std::string& name, NodeIndex origin, int rank) {
        names.push_back(name);
        origins.push_back(origin);
        aux_ranks.push_back(rank);
        return names.size() - 1;
    }
    void add_edge(std::size_t a, std::size_t b, double w) { edges.emplace_back(a, b, w); }
};

std::string aux_name(const std::string& origin, int rank) {
    return origin + "#a" + std::to_string(rank);
}

}  // namespace

std::size_t RegularizedGraph::auxiliary_count() const {
    std::size_t n = 0;
    for (const auto& p : provenance)
        if (!p.is_original()) ++n;
    return n;
}

RegularizedGraph regularize(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n == 0) throw AnalysisError("regularize: empty graph");
    if (n < 2) throw AnalysisError("regularize: graph needs at least 2 nodes");
    for (NodeIndex v = 0; v < n; ++v)
        if (g.neighbors(v).empty())
            throw AnalysisError("regularize: isolated node '" + g.name(v) + "'");

    double epsilon = 0.0;
    for (const auto& e : g.edges()) epsilon = std::max(epsilon, e.weight);

    Builder b;
    // port[slot of (v,u)]: G3 endpoint of edge (v,u) on v's side.
    // chain_split marks sides whose gadget re-homes half the edge weight.
    std::vector<std::vector<std::size_t>> port(n);
    std::vector<std::vector<bool>> chain_split(n);
    std::vector<std::size_t> self_id(n, SIZE_MAX);
    std::vector<std::vector<std::size_t>> ring_ids(n);

    for (NodeIndex v = 0; v < n; ++v) {
        const auto& nbrs = g.neighbors(v);  // ascending index = canonical order
        const std::size_t deg = nbrs.size();
        port[v].assign(deg, SIZE_MAX);
        chain_split[v].assign(deg, false);
        const std::string& vname = g.name(v);

        if (deg >= 4) {
            // Star: replace v by a ring a1..a_deg, one spoke per neighbor.
            for (std::size_t i = 0; i < deg; ++i)
                ring_ids[v].push_back(b.add_node(aux_name(vname, int(i) + 1), v, int(i) + 1));
            for (std::size_t i = 0; i < deg; ++i)
                b.add_edge(ring_ids[v][i], ring_ids[v][(i + 1) % deg], epsilon / 4.0);
            for (std::size_t i = 0; i < deg; ++i)
                port[v][i] = ring_ids[v][i];
        } else if (deg == 3) {
            self_id[v] = b.add_node(vname, v, -1);
            for (std::size_t i = 0; i < deg; ++i) port[v][i] = self_id[v];
        } else if (deg == 2) {
            // Chain: triangle gadget; the edge to the canonically larger
            // neighbor is rerouted through a2, its near half re-homed onto
            // the two v-a edges.
            self_id[v] = b.add_node(vname, v, -1);
            std::size_t a0 = b.add_node(aux_name(vname, 0), v, 0);
            std::size_t a1 = b.add_node(aux_name(vname, 1), v, 1);
            std::size_t a2 = b.add_node(aux_name(vname, 2), v, 2);
            double w_replaced = nbrs[1].second;
            b.add_edge(self_id[v], a0, w_replaced / 2.0);
            b.add_edge(self_id[v], a1, w_replaced / 2.0);
            b.add_edge(a0, a1, epsilon / 4.0);
            b.add_edge(a0, a2, epsilon / 4.0);
            b.add_edge(a1, a2, epsilon / 4.0);
            port[v][0] = self_id[v];
            port[v][1] = a2;
            chain_split[v][1] = true;
        } else {  // deg == 1
            // Leaf: 7-edge completion gadget, all five nodes end at degree 3.
            self_id[v] = b.add_node(vname, v, -1);
            std::size_t a[4];
            for (int i = 0; i < 4; ++i) a[i] = b.add_node(aux_name(vname, i), v, i);
            b.add_edge(self_id[v], a[0], epsilon / 4.0);
            b.add_edge(self_id[v], a[1], epsilon / 4.0);
            b.add_edge(a[0], a[2], epsilon / 4.0);
            b.add_edge(a[0], a[3], epsilon / 4.0);
            b.add_edge(a[1], a[2], epsilon / 4.0);
            b.add_edge(a[1], a[3], epsilon / 4.0);
            b.add_edge(a[2], a[3], epsilon / 4.0);
            port[v][0] = self_id[v];
        }
    }

    // Connectors. An edge keeps its full weight unless a chain gadget split
    // it (the split re-homes w/2 near the chain vertex, so the connector
    // carries the remaining w/2; both-split edges join the two attachment
    // points directly, also at w/2).
    auto slot_of = [&](NodeIndex v, NodeIndex u) {
        const auto& nbrs = g.neighbors(v);
        auto it = std::lower_bound(nbrs.begin(), nbrs.end(), std::make_pair(u, 0.0));
        return static_cast<std::size_t>(it - nbrs.begin());
    };
    for (const auto& e : g.edges()) {
        std::size_t su = slot_of(e.u, e.v);
        std::size_t sv = slot_of(e.v, e.u);
        bool split = chain_split[e.u][su] || chain_split[e.v][sv];
        double w = split ? e.weight / 2.0 : e.weight;
        b.add_edge(port[e.u][su], port[e.v][sv], w);
    }

    RegularizedGraph rg;
    rg.epsilon = epsilon;
    rg.weighted_input = g.weighted();
    {
        std::vector<std::tuple<std::string, std::string, double>> es;
        es.reserve(b.edges.size());
        for (const auto& [a2, b2, w] : b.edges)
            es.emplace_back(b.names[a2], b.names[b2], w);
        rg.graph = Graph::build(std::move(es), /*weighted=*/true);
    }

    rg.original_names.resize(n);
    for (NodeIndex v = 0; v < n; ++v) rg.original_names[v] = g.name(v);
    rg.provenance.resize(rg.graph.node_count());
    for (std::size_t local = 0; local < b.names.size(); ++local) {
        NodeIndex g3 = rg.graph.require_node(b.names[local]);
        rg.provenance[g3] = {b.origins[local], b.aux_ranks[local]};
    }
    rg.root_size.resize(n);
    rg.image.resize(n);
    rg.ring.assign(n, {});
    rg.attachments.assign(n, {});
    for (NodeIndex v = 0; v < n; ++v) {
        std::size_t deg = g.neighbors(v).size();
        rg.root_size[v] = deg >= 4 ? static_cast<double>(deg) : 1.0;
        if (deg >= 4) {
            for (std::size_t local : ring_ids[v])
                rg.ring[v].push_back(rg.graph.require_node(b.names[local]));
            rg.image[v] = rg.ring[v].front();
            for (NodeIndex rn : rg.ring[v])
                for (const auto& [x, w] : rg.graph.neighbors(rn)) {
                    (void)w;
                    if (rg.provenance[x].origin != v) rg.attachments[v].push_back(x);
                }
            std::sort(rg.attachments[v].begin(), rg.attachments[v].end());
        } else {
            rg.image[v] = rg.graph.require_node(g.name(v));
        }
    }

    // Degree invariant is the point of the construction; fail loudly.
    for (NodeIndex x = 0; x < rg.graph.node_count(); ++x)
        if (rg.graph.neighbors(x).size() != 3)
            throw AnalysisError("regularize: node '" + rg.graph.name(x) +
                                "' has degree " + std::to_string(rg.graph.neighbors(x).size()));
    return rg;
}

QuasiIsometryStats verify_quasi_isometry(
    const Graph& g, const RegularizedGraph& rg,
    const std::vector<std::pair<NodeIndex, NodeIndex>>& pairs) {
    QuasiIsometryStats stats;
    stats.epsilon = rg.epsilon;
    const double eps = rg.epsilon;

    auto check = [&](double dg, double dg3) {
        ++stats.pairs_checked;
        if (dg == kInfiniteDistance) return;  // cross-component pair
        stats.worst_lower = std::max(stats.worst_lower, dg - dg3);
        stats.worst_upper = std::max(stats.worst_upper, dg3 - ((eps + 1.0) * dg + eps));
        stats.max_additive = std::max(stats.max_additive, std::abs(dg3 - dg));
        if (dg > 0.0) stats.max_ratio = std::max(stats.max_ratio, dg3 / dg);
    };

    if (pairs.empty()) {
        const std::size_t n = g.node_count();
        for (NodeIndex u = 0; u < n; ++u) {
            auto dg = g.distances_from({u}, PathMetric::WeightedShortestPath);
            auto dg3 = rg.graph.distances_from({rg.image[u]}, PathMetric::WeightedShortestPath);
            for (NodeIndex v = u + 1; v < n; ++v) check(dg[v], dg3[rg.image[v]]);
        }
    } else {
        for (const auto& [u, v] : pairs) {
            if (u >= g.node_count() || v >= g.node_count())
                throw AnalysisError("verify_quasi_isometry: node out of range");
            double dg = g.path_distance(u, v, PathMetric::WeightedShortestPath);
            double dg3 = rg.graph.path_distance(rg.image[u], rg.image[v],
                                                PathMetric::WeightedShortestPath);
            check(dg, dg3);
        }
    }
    return stats;
}

std::string regularized_edge_list(const RegularizedGraph& rg) {
    std::ostringstream out;
    for (const auto& e : rg.graph.edges())
        out << rg.graph.name(e.u) << ' ' << rg.graph.name(e.v) << ' '
            << format_number(e.weight) << '\n';
    return out.str();
}

std::string provenance_json(const Graph& g, const RegularizedGraph& rg) {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["epsilon"] = round_sig(rg.epsilon);
    j["original_nodes"] = g.node_count();
    j["regularized_nodes"] = rg.graph.node_count();
    j["auxiliary_nodes"] = rg.auxiliary_count();
    nlohmann::ordered_json nodes = nlohmann::ordered_json::object();
    for (NodeIndex x = 0; x < rg.graph.node_count(); ++x) {
        const auto& p = rg.provenance[x];
        nlohmann::ordered_json entry;
        entry["origin"] = g.name(p.origin);
        entry["kind"] = p.is_original() ? "original" : "auxiliary";
        if (!p.is_original()) entry["gadget_index"] = p.aux_rank;
        nodes[rg.graph.name(x)] = std::move(entry);
    }
    j["nodes"] = std::move(nodes);
    nlohmann::ordered_json roots = nlohmann::ordered_json::object();
    for (NodeIndex v = 0; v < g.node_count(); ++v)
        roots[g.name(v)] = rg.root_size[v];
    j["root_size"] = std::move(roots);
    return j.dump(2) + "\n";
}

}  // namespace geoprior
