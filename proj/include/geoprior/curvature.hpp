#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "geoprior/graph.hpp"

namespace geoprior {

// Discrete Ricci curvatures on the raw input graph: unweighted degrees and
// hop ground distances throughout (the regularization belongs to the growth
// method, not here).

double forman_edge(const Graph& g, NodeIndex u, NodeIndex v);
// Average of incident edge curvatures.
double forman_node(const Graph& g, NodeIndex v);
// Closed form 4 - deg(v) - sum_u deg(u)/deg(v); agrees with forman_node to
// floating-point tolerance.
double forman_node_closed(const Graph& g, NodeIndex v);

// Exact Wasserstein-1 distance between the uniform neighbor measures of u
// and v (no self-mass), hop ground cost. Solved as an integer min-cost
// transportation problem with masses scaled by deg(u)*deg(v), so results
// like the cycle's W1 = 1 are exact.
double wasserstein1_neighbors(const Graph& g, NodeIndex u, NodeIndex v);

double ollivier_edge(const Graph& g, NodeIndex u, NodeIndex v);
double ollivier_node(const Graph& g, NodeIndex v);

// Jost-Liu: -2(1 - 1/deg u - 1/deg v)_+ <= Ric_O <= #common / max(deg).
std::pair<double, double> jost_liu_bounds(const Graph& g, NodeIndex u, NodeIndex v);

std::size_t common_neighbors(const Graph& g, NodeIndex u, NodeIndex v);

struct CurvatureReport {
    struct EdgeRow {
        NodeIndex u, v;
        double forman = 0.0;
        double ollivier = 0.0;
        double jl_lower = 0.0;
        double jl_upper = 0.0;
    };
    struct NodeRow {
        NodeIndex v;
        double forman = 0.0;
        double ollivier = 0.0;
    };
    bool has_forman = false, has_ollivier = false;
    std::vector<EdgeRow> edges;   // sorted (u, v)
    std::vector<NodeRow> nodes;   // sorted v

    std::string edges_csv(const Graph& g) const;
    std::string nodes_csv(const Graph& g) const;
    std::string summary_json(const Graph& g) const;  // min/mean/max per measure
};

// Per-edge transport problems run in parallel; rows are merged in sorted
// edge order regardless of thread count.
CurvatureReport curvature_report(const Graph& g, bool forman, bool ollivier, int threads = 1);

}  // namespace geoprior
