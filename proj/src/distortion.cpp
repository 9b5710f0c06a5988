#include "geoprior/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace geoprior {

namespace {
constexpr double kConstraintTol = 1e-9;
}

const char* to_string(Space s) {
    switch (s) {
        case Space::Euclidean: return "euclidean";
        case Space::Spherical: return "spherical";
        case Space::Hyperboloid: return "hyperboloid";
    }
    return "?";
}

Space space_from_string(const std::string& name) {
    if (name == "euclidean") return Space::Euclidean;
    if (name == "spherical") return Space::Spherical;
    if (name == "hyperboloid") return Space::Hyperboloid;
    throw ParseError("unknown model space '" + name + "'");
}

double minkowski_inner(const std::vector<double>& a, const std::vector<double>& b) {
    double sum = -a[0] * b[0];
    for (std::size_t i = 1; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

double ModelPoint::constraint_residual() const {
    switch (space) {
        case Space::Euclidean:
            return 0.0;
        case Space::Spherical: {
            double norm2 = std::inner_product(coords.begin(), coords.end(), coords.begin(), 0.0);
            return std::abs(norm2 - 1.0);
        }
        case Space::Hyperboloid:
            return std::abs(minkowski_inner(coords, coords) + 1.0);
    }
    return 0.0;
}

void ModelPoint::validate(double tol) const {
    if (coords.empty()) throw AnalysisError("model point with no coordinates");
    if (space == Space::Hyperboloid && coords[0] <= 0.0)
        throw AnalysisError("hyperboloid point with x0 <= 0");
    if ((space == Space::Spherical || space == Space::Hyperboloid) && coords.size() < 2)
        throw AnalysisError("curved-space point needs d+1 >= 2 coordinates");
    double res = constraint_residual();
    if (res > tol)
        throw AnalysisError("model point violates manifold constraint (residual " +
                            std::to_string(res) + ")");
}

double model_distance(const ModelPoint& p, const ModelPoint& q, double abs_curvature) {
    if (p.space != q.space) throw AnalysisError("model_distance: space mismatch");
    if (p.coords.size() != q.coords.size())
        throw AnalysisError("model_distance: dimension mismatch");
    if (!(abs_curvature > 0.0)) throw ConfigError("curvature magnitude must be positive");
    p.validate(kConstraintTol);
    q.validate(kConstraintTol);
    double scale = 1.0 / std::sqrt(abs_curvature);
    switch (p.space) {
        case Space::Euclidean: {
            double sum = 0.0;
            for (std::size_t i = 0; i < p.coords.size(); ++i) {
                double d = p.coords[i] - q.coords[i];
                sum += d * d;
            }
            return std::sqrt(sum);  // curvature 0: no scaling
        }
        case Space::Spherical: {
            double ip = std::inner_product(p.coords.begin(), p.coords.end(), q.coords.begin(), 0.0);
            ip = std::clamp(ip, -1.0, 1.0);
            return scale * std::acos(ip);
        }
        case Space::Hyperboloid: {
            double ip = -minkowski_inner(p.coords, q.coords);
            ip = std::max(ip, 1.0);
            return scale * std::acosh(ip);
        }
    }
    return 0.0;
}

Embedding Embedding::load_csv(std::istream& in, const Graph& g) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("embedding CSV: empty input");
    // header: node,space,c0,c1,...
    Embedding emb;
    emb.points.assign(g.node_count(), ModelPoint{});
    std::vector<bool> seen(g.node_count(), false);
    bool space_set = false;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() < 3)
            throw ParseError("embedding CSV line " + std::to_string(lineno) +
                             ": expected node,space,coords...");
        auto idx = g.index_of(cells[0]);
        if (!idx)
            throw ParseError("embedding CSV line " + std::to_string(lineno) + ": node '" +
                             cells[0] + "' not in graph");
        if (seen[*idx])
            throw ParseError("embedding CSV line " + std::to_string(lineno) +
                             ": duplicate node '" + cells[0] + "'");
        ModelPoint point;
        point.space = space_from_string(cells[1]);
        if (!space_set) {
            emb.space = point.space;
            space_set = true;
        } else if (point.space != emb.space) {
            throw ParseError("embedding CSV line " + std::to_string(lineno) +
                             ": mixed model spaces");
        }
        for (std::size_t i = 2; i < cells.size(); ++i) {
            try {
                point.coords.push_back(std::stod(cells[i]));
            } catch (const std::exception&) {
                throw ParseError("embedding CSV line " + std::to_string(lineno) +
                                 ": bad coordinate '" + cells[i] + "'");
            }
        }
        point.validate(kConstraintTol);
        emb.points[*idx] = std::move(point);
        seen[*idx] = true;
    }
    for (NodeIndex v = 0; v < g.node_count(); ++v)
        if (!seen[v])
            throw AnalysisError("embedding does not cover node '" + g.name(v) + "'");
    return emb;
}

Embedding Embedding::load_csv_file(const std::string& path, const Graph& g) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open embedding '" + path + "'");
    return load_csv(in, g);
}

double d_avg(const Graph& g, const Embedding& e, double abs_curvature) {
    const std::size_t n = g.node_count();
    if (n < 2) throw AnalysisError("d_avg needs at least 2 nodes");
    if (e.points.size() != n) throw AnalysisError("embedding does not cover the graph");
    double sum = 0.0;
    std::size_t pairs = 0;
    for (NodeIndex i = 0; i < n; ++i) {
        auto dg = g.distances_from({i}, PathMetric::WeightedShortestPath);
        for (NodeIndex j = i + 1; j < n; ++j) {
            if (dg[j] == kInfiniteDistance)
                throw AnalysisError("d_avg: nodes '" + g.name(i) + "' and '" + g.name(j) +
                                    "' are disconnected");
            double dm = model_distance(e.points[i], e.points[j], abs_curvature);
            double ratio = dm / dg[j];
            sum += std::abs(ratio * ratio - 1.0);
            ++pairs;
        }
    }
    return sum / static_cast<double>(pairs);
}

double map_score(const Graph& g, const Embedding& e, double abs_curvature) {
    const std::size_t n = g.node_count();
    if (e.points.size() != n) throw AnalysisError("embedding does not cover the graph");
    double total = 0.0;
    std::vector<std::pair<double, NodeIndex>> ranking;
    for (NodeIndex u = 0; u < n; ++u) {
        const auto& nbrs = g.neighbors(u);
        if (nbrs.empty())
            throw AnalysisError("map_score: node '" + g.name(u) + "' has no neighbors");
        ranking.clear();
        for (NodeIndex x = 0; x < n; ++x)
            if (x != u) ranking.emplace_back(model_distance(e.points[u], e.points[x], abs_curvature), x);
        std::sort(ranking.begin(), ranking.end());  // ties fall back to index order
        std::vector<std::size_t> rank_of(n, 0);
        for (std::size_t r = 0; r < ranking.size(); ++r) rank_of[ranking[r].second] = r + 1;

        std::vector<bool> is_neighbor(n, false);
        for (const auto& [x, w] : nbrs) {
            (void)w;
            is_neighbor[x] = true;
        }
        // Precision at each neighbor's prefix R_{u,i}; cumulative hit counts
        // along the ranking give them in one pass.
        std::vector<std::size_t> hits_upto(ranking.size() + 1, 0);
        for (std::size_t r = 0; r < ranking.size(); ++r)
            hits_upto[r + 1] = hits_upto[r] + (is_neighbor[ranking[r].second] ? 1 : 0);
        double ap = 0.0;
        for (const auto& [x, w] : nbrs) {
            (void)w;
            std::size_t prefix = rank_of[x];
            ap += static_cast<double>(hits_upto[prefix]) / static_cast<double>(prefix);
        }
        total += ap / static_cast<double>(nbrs.size());
    }
    return total / static_cast<double>(n);
}

}  // namespace geoprior
