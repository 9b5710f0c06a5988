#pragma once

#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "geoprior/errors.hpp"

namespace geoprior {

using NodeIndex = std::uint32_t;

inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

enum class PathMetric { Hops, WeightedShortestPath };

// Immutable undirected graph. Node identifiers are opaque strings; a dense
// index is built at construction after a canonical sort (numeric if every
// identifier parses as an integer, else lexicographic). All weights are
// positive; unweighted graphs store weight 1 everywhere.
class Graph {
public:
    struct Edge {
        NodeIndex u, v;   // u < v
        double weight;
    };

    Graph() = default;

    // Builds from raw (name, name, weight) triples plus optional extra
    // (possibly isolated) node names. Rejects self-loops, duplicate edges
    // and non-positive weights.
    static Graph build(std::vector<std::tuple<std::string, std::string, double>> edges,
                       bool weighted,
                       const std::vector<std::string>& extra_nodes = {});

    // Edge-list text: one edge per line, whitespace- or comma-separated,
    // optional third weight column, '#' comments. A weight column is
    // validated (> 0) even when weighted=false, but stored as 1.
    static Graph load_edge_list(std::istream& in, bool weighted,
                                const std::vector<std::string>* node_list = nullptr);
    static Graph load_edge_list_file(const std::string& path, bool weighted,
                                     const std::string& node_list_path = "");

    std::size_t node_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    bool weighted() const { return weighted_; }

    const std::string& name(NodeIndex v) const { return names_[v]; }
    std::optional<NodeIndex> index_of(const std::string& name) const;
    NodeIndex require_node(const std::string& name) const;

    const std::vector<std::pair<NodeIndex, double>>& neighbors(NodeIndex v) const {
        return adjacency_[v];
    }
    bool has_edge(NodeIndex u, NodeIndex v) const;
    std::optional<double> edge_weight(NodeIndex u, NodeIndex v) const;
    std::vector<Edge> edges() const;
    double total_edge_weight() const;
    double mean_edge_weight() const;

    // Unweighted: neighbor count. Weighted: sum of incident edge weights.
    double degree(NodeIndex v, bool weighted_degree) const;

    // Shortest-path distance under the metric; infinity when disconnected.
    double path_distance(NodeIndex u, NodeIndex v, PathMetric metric) const;

    // All nodes within distance R of v (v included), ascending index order.
    std::vector<NodeIndex> neighborhood(NodeIndex v, double radius, PathMetric metric) const;

    // Distances from a set of sources (all distances, no bound). Useful for
    // exhaustive pair checks; per-vertex analyses use the bounded forms.
    std::vector<double> distances_from(const std::vector<NodeIndex>& sources,
                                       PathMetric metric) const;

    // Number of nodes within the radius of the source set, with an optional
    // exclusion list that is neither counted nor used to stop expansion.
    std::size_t bounded_ball_size(const std::vector<NodeIndex>& sources, double radius,
                                  PathMetric metric,
                                  const std::vector<NodeIndex>& excluded = {}) const;

    std::size_t count_isolated() const;
    // Copy with all degree-0 nodes removed (analysis pipelines sanitize
    // generator output this way; see README).
    Graph without_isolated() const;

private:
    std::vector<std::string> names_;
    std::vector<std::vector<std::pair<NodeIndex, double>>> adjacency_;
    std::size_t edge_count_ = 0;
    bool weighted_ = false;
};

// Canonical identifier order used for the dense re-indexing.
bool canonical_name_less(const std::string& a, const std::string& b);

}  // namespace geoprior
