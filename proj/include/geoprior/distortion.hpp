#pragma once

#include <istream>
#include <string>
#include <vector>

#include "geoprior/graph.hpp"

namespace geoprior {

enum class Space { Euclidean, Spherical, Hyperboloid };

const char* to_string(Space s);
Space space_from_string(const std::string& name);

// A point in one of the constant-curvature model spaces. Euclidean points
// carry d coordinates; spherical and hyperboloid points carry d+1 with the
// manifold constraints <x,x> = 1 and <x,x>_H = -1, x0 > 0.
struct ModelPoint {
    Space space = Space::Euclidean;
    std::vector<double> coords;

    // Constraint residual; 0 for Euclidean points.
    double constraint_residual() const;
    void validate(double tol = 1e-9) const;  // throws AnalysisError
};

double minkowski_inner(const std::vector<double>& a, const std::vector<double>& b);

// Geodesic distance. |curvature| != 1 is handled by scaling the unit-space
// distance by 1/sqrt(|curvature|); inner products are clamped to the valid
// domain before arccos/arcosh to absorb constraint drift within tolerance.
double model_distance(const ModelPoint& p, const ModelPoint& q, double abs_curvature = 1.0);

// One point per graph node, all in the same space.
struct Embedding {
    Space space = Space::Euclidean;
    std::vector<ModelPoint> points;  // indexed by graph node

    // CSV with header "node,space,c0,c1,...". Every graph node must appear
    // exactly once; manifold constraints are validated on load.
    static Embedding load_csv(std::istream& in, const Graph& g);
    static Embedding load_csv_file(const std::string& path, const Graph& g);
};

// Pair-averaged squared-ratio deviation sum |(d_M/d_G)^2 - 1| / #pairs over
// unordered pairs i < j; 0 iff the embedding is isometric on pairs.
// Throws on disconnected pairs.
double d_avg(const Graph& g, const Embedding& e, double abs_curvature = 1.0);

// Mean average precision of retrieving graph neighbors from the model
// distance ranking; ties break by node index so the result is deterministic.
double map_score(const Graph& g, const Embedding& e, double abs_curvature = 1.0);

}  // namespace geoprior
