#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geoprior/regularizer.hpp"

namespace geoprior {

enum class GrowthClass { Exponential, Linear, Sublinear };
enum class Prior { Hyperbolic, Euclidean, Spherical };
enum class ScoreScope { AllG3Vertices, OriginalOnly };

const char* to_string(GrowthClass c);
const char* to_string(Prior p);
const char* to_string(ScoreScope s);

// Reference count for exponential growth: root_size + sum_{r=1..R} base 2^(r-1).
double gamma_ee(double root_size, int R, double base);
// Reference count for linear growth: root_size + sum_{r=1..R} base r.
double gamma_le(double root_size, int R, double base);

// sigma weights from the displayed case formula: sublinear +1,
// exponential -1, linear 0.
int sigma(GrowthClass c);

struct VertexGrowth {
    GrowthClass cls;
    double neighborhood_size;
    double root_size;
    double base;
};

// Classification of a single G3 vertex: |N_R(x)| by single-source expansion
// (hops for unweighted inputs, weighted path distance with the center's
// weighted G3 degree as base otherwise), root size 1. Hop mode requires an
// integral R >= 3 since the reference counts coincide below that.
VertexGrowth classify_growth(const RegularizedGraph& rg, NodeIndex g3_vertex, double R);

// Classification of an original vertex. Survivors reduce to classify_growth
// of their image. A replaced (deg >= 4) vertex is classified from its ring:
// |N_R(v)| = |v| + #(ball of radius R around the ring, excluding the ring
// itself and the spoke attachment nodes, which are images of v and of its
// incident edges), thresholded with root size |v| = deg(v).
VertexGrowth classify_original(const RegularizedGraph& rg, NodeIndex original, double R);

Prior decide_prior(double a_normalized, double tau);

struct ScoreReport {
    double R = 3;
    double tau = 0.1;
    ScoreScope scope = ScoreScope::AllG3Vertices;
    double a_raw = 0.0;
    double a_normalized = 0.0;
    Prior prior = Prior::Euclidean;
    std::size_t exponential = 0, linear = 0, sublinear = 0;
    std::size_t g3_nodes = 0, g3_edges = 0;
    double g3_mean_edge_weight = 0.0;
    std::size_t isolated_dropped = 0;  // filled by pipelines that sanitize input

    struct Row {
        std::string node;
        GrowthClass cls;
        double neighborhood_size;
    };
    std::vector<Row> per_vertex;  // only when requested

    std::string to_json(bool include_per_vertex) const;
    std::string per_vertex_csv() const;
};

// Aggregates the 3-regular score A = sum sigma(v) |N_R(v)| over the scope
// (every G3 vertex by default; original vertices, optionally a subset, when
// restricted), normalized by #E(G3) x mean G3 edge weight. Per-vertex
// classification is read-only and parallel; the reduction is in fixed vertex
// order, so results are identical across thread counts.
ScoreReport three_regular_score(const RegularizedGraph& rg, double R, double tau,
                                ScoreScope scope = ScoreScope::AllG3Vertices,
                                int threads = 1,
                                const std::vector<NodeIndex>* original_subset = nullptr,
                                bool per_vertex_table = false);

}  // namespace geoprior
