#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geoprior/graph.hpp"

namespace geoprior {

// Output of the 3-regularization G -> G3. Every node of `graph` has degree
// exactly 3. Original vertices of degree <= 3 survive under their own name;
// degree-1 and degree-2 vertices gain gadgets, degree >= 4 vertices are
// replaced by rings. Auxiliary nodes are named "<origin>#a<rank>".
struct RegularizedGraph {
    struct Provenance {
        NodeIndex origin;  // original-graph index
        int aux_rank;      // -1 for surviving originals; gadget index otherwise
        bool is_original() const { return aux_rank < 0; }
    };

    Graph graph;                                // G3
    double epsilon = 0.0;                       // max original edge weight
    bool weighted_input = false;
    std::vector<std::string> original_names;    // by original index
    std::vector<Provenance> provenance;         // by G3 index
    std::vector<double> root_size;              // by original index: 1 or deg(v)
    std::vector<NodeIndex> image;               // original -> G3 node (survivor, or first ring node)
    std::vector<std::vector<NodeIndex>> ring;   // original -> ring nodes (empty for survivors)
    std::vector<std::vector<NodeIndex>> attachments;  // original (replaced) -> spoke partners in G3

    bool survives(NodeIndex original) const { return ring[original].empty(); }
    std::size_t auxiliary_count() const;
};

// Per-vertex gadget construction per the degree cases (leaf / chain /
// 3-fork / star), applied against the frozen input graph so the result is
// independent of vertex order. Throws AnalysisError on an empty graph or
// any isolated node.
RegularizedGraph regularize(const Graph& g);

struct QuasiIsometryStats {
    double epsilon = 0.0;
    std::size_t pairs_checked = 0;
    // Positive values are bound violations: lower = max(d_G - d_G3),
    // upper = max(d_G3 - ((eps+1) d_G + eps)) over checked pairs.
    double worst_lower = 0.0;
    double worst_upper = 0.0;
    double max_additive = 0.0;        // max |d_G3 - d_G|
    double max_ratio = 1.0;           // max d_G3 / d_G over pairs with d_G > 0
    bool ok(double tol = 1e-9) const { return worst_lower <= tol && worst_upper <= tol; }
};

// Checks d_G <= d_G3 <= (eps+1) d_G + eps between node images for the given
// original-node pairs (empty = exhaustive over all unordered pairs).
QuasiIsometryStats verify_quasi_isometry(
    const Graph& g, const RegularizedGraph& rg,
    const std::vector<std::pair<NodeIndex, NodeIndex>>& pairs = {});

// Inspection output: G3 as edge-list text plus a JSON provenance sidecar.
std::string regularized_edge_list(const RegularizedGraph& rg);
std::string provenance_json(const Graph& g, const RegularizedGraph& rg);

}  // namespace geoprior
