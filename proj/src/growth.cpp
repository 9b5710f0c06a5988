#include "geoprior/growth.hpp"

#include <algorithm>
#include <cmath>

#include "geoprior/parallel.hpp"
#include "geoprior/report.hpp"

namespace geoprior {

const char* to_string(GrowthClass c) {
    switch (c) {
        case GrowthClass::Exponential: return "exponential";
        case GrowthClass::Linear: return "linear";
        case GrowthClass::Sublinear: return "sublinear";
    }
    return "?";
}

const char* to_string(Prior p) {
    switch (p) {
        case Prior::Hyperbolic: return "hyperbolic";
        case Prior::Euclidean: return "euclidean";
        case Prior::Spherical: return "spherical";
    }
    return "?";
}

const char* to_string(ScoreScope s) {
    return s == ScoreScope::AllG3Vertices ? "all_g3_vertices" : "original_only";
}

double gamma_ee(double root_size, int R, double base) {
    double sum = root_size;
    double pow2 = 1.0;
    for (int r = 1; r <= R; ++r) {
        sum += base * pow2;
        pow2 *= 2.0;
    }
    return sum;
}

double gamma_le(double root_size, int R, double base) {
    double sum = root_size;
    for (int r = 1; r <= R; ++r) sum += base * r;
    return sum;
}

int sigma(GrowthClass c) {
    switch (c) {
        case GrowthClass::Sublinear: return 1;
        case GrowthClass::Exponential: return -1;
        case GrowthClass::Linear: return 0;
    }
    return 0;
}

namespace {

GrowthClass classify_count(double count, double root_size, int R_int, double base) {
    if (count >= gamma_ee(root_size, R_int, base)) return GrowthClass::Exponential;
    if (count >= gamma_le(root_size, R_int, base)) return GrowthClass::Linear;
    return GrowthClass::Sublinear;
}

int check_radius(const RegularizedGraph& rg, double R) {
    if (!rg.weighted_input) {
        double rounded = std::round(R);
        if (std::abs(R - rounded) > 1e-12 || rounded < 3.0)
            throw ConfigError("hop-mode radius must be an integer >= 3 (gamma_EE = gamma_LE below R=3)");
        return static_cast<int>(rounded);
    }
    if (!(R > 0.0)) throw ConfigError("weighted radius must be positive");
    // Threshold sums run over whole ranks within the radius.
    return std::max(1, static_cast<int>(std::floor(R + 1e-12)));
}

}  // namespace

VertexGrowth classify_growth(const RegularizedGraph& rg, NodeIndex g3_vertex, double R) {
    int R_int = check_radius(rg, R);
    if (g3_vertex >= rg.graph.node_count()) throw AnalysisError("classify_growth: unknown node");
    PathMetric metric = rg.weighted_input ? PathMetric::WeightedShortestPath : PathMetric::Hops;
    double base = rg.weighted_input ? rg.graph.degree(g3_vertex, true) : 3.0;
    double count = static_cast<double>(rg.graph.bounded_ball_size({g3_vertex}, R, metric));
    return {classify_count(count, 1.0, R_int, base), count, 1.0, base};
}

VertexGrowth classify_original(const RegularizedGraph& rg, NodeIndex original, double R) {
    if (original >= rg.image.size()) throw AnalysisError("classify_original: unknown node");
    if (rg.survives(original)) return classify_growth(rg, rg.image[original], R);

    int R_int = check_radius(rg, R);
    PathMetric metric = rg.weighted_input ? PathMetric::WeightedShortestPath : PathMetric::Hops;
    const auto& ring = rg.ring[original];
    std::vector<NodeIndex> excluded = ring;
    excluded.insert(excluded.end(), rg.attachments[original].begin(),
                    rg.attachments[original].end());
    double root = rg.root_size[original];
    double base = 3.0;
    if (rg.weighted_input) {
        // Spoke weights sum to the original weighted degree of the center.
        base = 0.0;
        for (NodeIndex rn : ring)
            for (const auto& [x, w] : rg.graph.neighbors(rn))
                if (rg.provenance[x].origin != original) base += w;
    }
    double count = root + static_cast<double>(
        rg.graph.bounded_ball_size(ring, R, metric, excluded));
    return {classify_count(count, root, R_int, base), count, root, base};
}

Prior decide_prior(double a_normalized, double tau) {
    if (tau < 0.0) throw ConfigError("tau must be nonnegative");
    if (a_normalized > tau) return Prior::Spherical;
    if (a_normalized < -tau) return Prior::Hyperbolic;
    return Prior::Euclidean;
}

ScoreReport three_regular_score(const RegularizedGraph& rg, double R, double tau,
                                ScoreScope scope, int threads,
                                const std::vector<NodeIndex>* original_subset,
                                bool per_vertex_table) {
    check_radius(rg, R);
    if (tau < 0.0) throw ConfigError("tau must be nonnegative");

    std::vector<NodeIndex> targets;
    if (scope == ScoreScope::AllG3Vertices) {
        targets.resize(rg.graph.node_count());
        for (NodeIndex i = 0; i < targets.size(); ++i) targets[i] = i;
    } else if (original_subset) {
        targets = *original_subset;
    } else {
        targets.resize(rg.image.size());
        for (NodeIndex i = 0; i < targets.size(); ++i) targets[i] = i;
    }

    std::vector<VertexGrowth> results(targets.size());
    parallel_for(targets.size(), threads, [&](std::size_t i) {
        results[i] = scope == ScoreScope::AllG3Vertices
                         ? classify_growth(rg, targets[i], R)
                         : classify_original(rg, targets[i], R);
    });

    ScoreReport report;
    report.R = R;
    report.tau = tau;
    report.scope = scope;
    report.g3_nodes = rg.graph.node_count();
    report.g3_edges = rg.graph.edge_count();
    report.g3_mean_edge_weight = rg.graph.mean_edge_weight();
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const auto& r = results[i];
        report.a_raw += sigma(r.cls) * r.neighborhood_size;
        switch (r.cls) {
            case GrowthClass::Exponential: ++report.exponential; break;
            case GrowthClass::Linear: ++report.linear; break;
            case GrowthClass::Sublinear: ++report.sublinear; break;
        }
        if (per_vertex_table) {
            const std::string& name = scope == ScoreScope::AllG3Vertices
                                          ? rg.graph.name(targets[i])
                                          : rg.original_names[targets[i]];
            report.per_vertex.push_back({name, r.cls, r.neighborhood_size});
        }
    }
    double denom = static_cast<double>(report.g3_edges) * report.g3_mean_edge_weight;
    report.a_normalized = denom > 0.0 ? report.a_raw / denom : 0.0;
    report.prior = decide_prior(report.a_normalized, tau);
    return report;
}

std::string ScoreReport::to_json(bool include_per_vertex) const {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["R"] = round_sig(R);
    j["tau"] = round_sig(tau);
    j["scope"] = to_string(scope);
    j["A_raw"] = round_sig(a_raw);
    j["A_normalized"] = round_sig(a_normalized);
    j["prior"] = to_string(prior);
    j["histogram"] = {{"exponential", exponential},
                      {"linear", linear},
                      {"sublinear", sublinear}};
    j["g3"] = {{"nodes", g3_nodes},
               {"edges", g3_edges},
               {"mean_edge_weight", round_sig(g3_mean_edge_weight)}};
    j["isolated_dropped"] = isolated_dropped;
    if (include_per_vertex) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& row : per_vertex)
            rows.push_back({{"node", row.node},
                            {"class", to_string(row.cls)},
                            {"neighborhood_size", round_sig(row.neighborhood_size)}});
        j["per_vertex"] = std::move(rows);
    }
    return j.dump(2) + "\n";
}

std::string ScoreReport::per_vertex_csv() const {
    std::string out = "node,class,neighborhood_size\n";
    for (const auto& row : per_vertex) {
        out += row.node;
        out += ',';
        out += to_string(row.cls);
        out += ',';
        out += format_number(row.neighborhood_size);
        out += '\n';
    }
    return out;
}

}  // namespace geoprior
