#include "geoprior/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <queue>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace geoprior {

namespace {

std::optional<long long> parse_integer(const std::string& s) {
    if (s.empty()) return std::nullopt;
    long long value = 0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return value;
}

std::vector<std::string> tokenize(std::string line) {
    // '#' starts a comment; commas count as separators.
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (char& c : line)
        if (c == ',') c = ' ';
    std::vector<std::string> tokens;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    return tokens;
}

}  // namespace

bool canonical_name_less(const std::string& a, const std::string& b) {
    auto ia = parse_integer(a);
    auto ib = parse_integer(b);
    if (ia && ib) {
        if (*ia != *ib) return *ia < *ib;
        return a < b;
    }
    if (ia != ib) return ia.has_value();  // numeric names sort before others
    return a < b;
}

Graph Graph::build(std::vector<std::tuple<std::string, std::string, double>> edges,
                   bool weighted, const std::vector<std::string>& extra_nodes) {
    std::vector<std::string> names;
    names.reserve(edges.size() * 2 + extra_nodes.size());
    for (const auto& [u, v, w] : edges) {
        names.push_back(u);
        names.push_back(v);
    }
    for (const auto& n : extra_nodes) names.push_back(n);
    std::sort(names.begin(), names.end(), canonical_name_less);
    names.erase(std::unique(names.begin(), names.end()), names.end());

    Graph g;
    g.weighted_ = weighted;
    g.names_ = std::move(names);
    g.adjacency_.assign(g.names_.size(), {});
    std::unordered_map<std::string, NodeIndex> index;
    index.reserve(g.names_.size());
    for (NodeIndex i = 0; i < g.names_.size(); ++i) index[g.names_[i]] = i;

    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges.size());
    for (const auto& [su, sv, w] : edges) {
        NodeIndex u = index[su];
        NodeIndex v = index[sv];
        if (u == v) throw ParseError("self-loop on node '" + su + "'");
        if (!(w > 0.0)) throw ParseError("non-positive weight on edge " + su + " " + sv);
        std::uint64_t key = (std::uint64_t)std::min(u, v) << 32 | std::max(u, v);
        if (!seen.insert(key).second)
            throw ParseError("duplicate edge " + su + " " + sv);
        double weight = weighted ? w : 1.0;
        g.adjacency_[u].emplace_back(v, weight);
        g.adjacency_[v].emplace_back(u, weight);
        ++g.edge_count_;
    }
    for (auto& adj : g.adjacency_)
        std::sort(adj.begin(), adj.end());
    return g;
}

Graph Graph::load_edge_list(std::istream& in, bool weighted,
                            const std::vector<std::string>* node_list) {
    std::vector<std::tuple<std::string, std::string, double>> edges;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (tokens.size() != 2 && tokens.size() != 3)
            throw ParseError("line " + std::to_string(lineno) + ": expected 'u v' or 'u v w'");
        double w = 1.0;
        if (tokens.size() == 3) {
            try {
                std::size_t pos = 0;
                w = std::stod(tokens[2], &pos);
                if (pos != tokens[2].size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(lineno) + ": bad weight '" + tokens[2] + "'");
            }
        }
        if (!(w > 0.0))
            throw ParseError("line " + std::to_string(lineno) + ": non-positive weight");
        edges.emplace_back(tokens[0], tokens[1], w);
    }
    return build(std::move(edges), weighted,
                 node_list ? *node_list : std::vector<std::string>{});
}

Graph Graph::load_edge_list_file(const std::string& path, bool weighted,
                                 const std::string& node_list_path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open edge list '" + path + "'");
    std::vector<std::string> nodes;
    if (!node_list_path.empty()) {
        std::ifstream nl(node_list_path);
        if (!nl) throw ParseError("cannot open node list '" + node_list_path + "'");
        std::string line;
        while (std::getline(nl, line)) {
            auto tokens = tokenize(line);
            for (auto& t : tokens) nodes.push_back(std::move(t));
        }
    }
    return load_edge_list(in, weighted, node_list_path.empty() ? nullptr : &nodes);
}

std::optional<NodeIndex> Graph::index_of(const std::string& name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name, canonical_name_less);
    if (it != names_.end() && *it == name)
        return static_cast<NodeIndex>(it - names_.begin());
    return std::nullopt;
}

NodeIndex Graph::require_node(const std::string& name) const {
    auto idx = index_of(name);
    if (!idx) throw AnalysisError("unknown node '" + name + "'");
    return *idx;
}

bool Graph::has_edge(NodeIndex u, NodeIndex v) const {
    return edge_weight(u, v).has_value();
}

std::optional<double> Graph::edge_weight(NodeIndex u, NodeIndex v) const {
    const auto& adj = adjacency_[u];
    auto it = std::lower_bound(adj.begin(), adj.end(), std::make_pair(v, 0.0));
    if (it != adj.end() && it->first == v) return it->second;
    return std::nullopt;
}

std::vector<Graph::Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (NodeIndex u = 0; u < adjacency_.size(); ++u)
        for (const auto& [v, w] : adjacency_[u])
            if (u < v) out.push_back({u, v, w});
    return out;
}

double Graph::total_edge_weight() const {
    double sum = 0.0;
    for (NodeIndex u = 0; u < adjacency_.size(); ++u)
        for (const auto& [v, w] : adjacency_[u])
            if (u < v) sum += w;
    return sum;
}

double Graph::mean_edge_weight() const {
    if (edge_count_ == 0) return 0.0;
    return total_edge_weight() / static_cast<double>(edge_count_);
}

double Graph::degree(NodeIndex v, bool weighted_degree) const {
    if (!weighted_degree) return static_cast<double>(adjacency_[v].size());
    double sum = 0.0;
    for (const auto& [u, w] : adjacency_[v]) sum += w;
    return sum;
}

namespace {

// Bounded multi-source shortest paths. radius < 0 means unbounded.
// Hops mode runs plain BFS; otherwise a Dijkstra expansion.
void shortest_paths(const std::vector<std::vector<std::pair<NodeIndex, double>>>& adj,
                    const std::vector<NodeIndex>& sources, PathMetric metric,
                    double radius, std::vector<double>& dist,
                    const NodeIndex* stop_at = nullptr) {
    dist.assign(adj.size(), kInfiniteDistance);
    if (metric == PathMetric::Hops) {
        std::queue<NodeIndex> q;
        for (NodeIndex s : sources) {
            if (dist[s] == 0.0) continue;
            dist[s] = 0.0;
            q.push(s);
        }
        while (!q.empty()) {
            NodeIndex x = q.front();
            q.pop();
            if (stop_at && x == *stop_at) return;
            if (radius >= 0.0 && dist[x] >= radius) continue;
            for (const auto& [y, w] : adj[x]) {
                (void)w;
                if (dist[y] == kInfiniteDistance) {
                    dist[y] = dist[x] + 1.0;
                    q.push(y);
                }
            }
        }
    } else {
        using Item = std::pair<double, NodeIndex>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
        for (NodeIndex s : sources) {
            dist[s] = 0.0;
            pq.emplace(0.0, s);
        }
        while (!pq.empty()) {
            auto [d, x] = pq.top();
            pq.pop();
            if (d > dist[x]) continue;
            if (stop_at && x == *stop_at) return;
            for (const auto& [y, w] : adj[x]) {
                double nd = d + w;
                if (radius >= 0.0 && nd > radius) continue;
                if (nd < dist[y]) {
                    dist[y] = nd;
                    pq.emplace(nd, y);
                }
            }
        }
    }
}

}  // namespace

double Graph::path_distance(NodeIndex u, NodeIndex v, PathMetric metric) const {
    if (u == v) return 0.0;
    std::vector<double> dist;
    shortest_paths(adjacency_, {u}, metric, -1.0, dist, &v);
    return dist[v];
}

std::vector<NodeIndex> Graph::neighborhood(NodeIndex v, double radius, PathMetric metric) const {
    if (!(radius > 0.0)) throw ConfigError("neighborhood radius must be positive");
    std::vector<double> dist;
    shortest_paths(adjacency_, {v}, metric, radius, dist);
    std::vector<NodeIndex> out;
    for (NodeIndex i = 0; i < dist.size(); ++i)
        if (dist[i] <= radius) out.push_back(i);
    return out;
}

std::vector<double> Graph::distances_from(const std::vector<NodeIndex>& sources,
                                          PathMetric metric) const {
    std::vector<double> dist;
    shortest_paths(adjacency_, sources, metric, -1.0, dist);
    return dist;
}

std::size_t Graph::bounded_ball_size(const std::vector<NodeIndex>& sources, double radius,
                                     PathMetric metric,
                                     const std::vector<NodeIndex>& excluded) const {
    std::vector<double> dist;
    shortest_paths(adjacency_, sources, metric, radius, dist);
    std::size_t count = 0;
    for (NodeIndex i = 0; i < dist.size(); ++i)
        if (dist[i] <= radius) ++count;
    for (NodeIndex e : excluded)
        if (dist[e] <= radius) --count;
    return count;
}

std::size_t Graph::count_isolated() const {
    std::size_t n = 0;
    for (const auto& adj : adjacency_)
        if (adj.empty()) ++n;
    return n;
}

Graph Graph::without_isolated() const {
    std::vector<std::tuple<std::string, std::string, double>> es;
    es.reserve(edge_count_);
    for (const auto& e : edges())
        es.emplace_back(names_[e.u], names_[e.v], e.weight);
    return build(std::move(es), weighted_);
}

}  // namespace geoprior
