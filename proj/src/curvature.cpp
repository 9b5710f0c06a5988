#include "geoprior/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>

#include "geoprior/parallel.hpp"
#include "geoprior/report.hpp"

namespace geoprior {

namespace {

void require_edge(const Graph& g, NodeIndex u, NodeIndex v, const char* op) {
    if (!g.has_edge(u, v))
        throw AnalysisError(std::string(op) + ": (" + g.name(u) + "," + g.name(v) +
                            ") is not an edge");
}

// Hop distances from x to a target set. d(x,y) <= 3 for x in N(u), y in N(v)
// of an edge (u,v), so the expansion is bounded.
std::vector<int> hop_distances_to(const Graph& g, NodeIndex from,
                                  const std::vector<NodeIndex>& targets, int bound) {
    std::vector<int> dist(g.node_count(), -1);
    std::queue<NodeIndex> q;
    dist[from] = 0;
    q.push(from);
    while (!q.empty()) {
        NodeIndex x = q.front();
        q.pop();
        if (dist[x] >= bound) continue;
        for (const auto& [y, w] : g.neighbors(x)) {
            (void)w;
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                q.push(y);
            }
        }
    }
    std::vector<int> out(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) out[i] = dist[targets[i]];
    return out;
}

// Integer min-cost transportation via successive shortest paths with
// Bellman-Ford potentials. Supports are tiny (two neighborhoods), costs are
// small nonnegative integers, so this stays exact and fast.
struct Transport {
    struct Arc {
        int to, rev;
        long long cap;
        long long cost;
    };
    std::vector<std::vector<Arc>> arcs;

    explicit Transport(int nodes) : arcs(nodes) {}

    void add(int a, int b, long long cap, long long cost) {
        arcs[a].push_back({b, static_cast<int>(arcs[b].size()), cap, cost});
        arcs[b].push_back({a, static_cast<int>(arcs[a].size()) - 1, 0, -cost});
    }

    long long min_cost_flow(int s, int t, long long flow_target) {
        long long total_cost = 0;
        while (flow_target > 0) {
            const long long inf = std::numeric_limits<long long>::max() / 4;
            std::vector<long long> dist(arcs.size(), inf);
            std::vector<int> prev_node(arcs.size(), -1), prev_arc(arcs.size(), -1);
            std::vector<bool> in_queue(arcs.size(), false);
            std::deque<int> q{s};
            dist[s] = 0;
            in_queue[s] = true;
            while (!q.empty()) {
                int x = q.front();
                q.pop_front();
                in_queue[x] = false;
                for (std::size_t i = 0; i < arcs[x].size(); ++i) {
                    const Arc& a = arcs[x][i];
                    if (a.cap <= 0 || dist[x] + a.cost >= dist[a.to]) continue;
                    dist[a.to] = dist[x] + a.cost;
                    prev_node[a.to] = x;
                    prev_arc[a.to] = static_cast<int>(i);
                    if (!in_queue[a.to]) {
                        in_queue[a.to] = true;
                        q.push_back(a.to);
                    }
                }
            }
            if (dist[t] >= inf) throw AnalysisError("transport problem infeasible");
            long long push = flow_target;
            for (int x = t; x != s; x = prev_node[x])
                push = std::min(push, arcs[prev_node[x]][prev_arc[x]].cap);
            for (int x = t; x != s; x = prev_node[x]) {
                Arc& a = arcs[prev_node[x]][prev_arc[x]];
                a.cap -= push;
                arcs[x][a.rev].cap += push;
            }
            total_cost += push * dist[t];
            flow_target -= push;
        }
        return total_cost;
    }
};

}  // namespace

std::size_t common_neighbors(const Graph& g, NodeIndex u, NodeIndex v) {
    const auto& a = g.neighbors(u);
    const auto& b = g.neighbors(v);
    std::size_t i = 0, j = 0, count = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            ++count;
            ++i;
            ++j;
        } else if (a[i].first < b[j].first) {
            ++i;
        } else {
            ++j;
        }
    }
    return count;
}

double forman_edge(const Graph& g, NodeIndex u, NodeIndex v) {
    require_edge(g, u, v, "forman_edge");
    return 4.0 - g.degree(u, false) - g.degree(v, false);
}

double forman_node(const Graph& g, NodeIndex v) {
    const auto& nbrs = g.neighbors(v);
    if (nbrs.empty()) throw AnalysisError("forman_node: isolated node '" + g.name(v) + "'");
    double sum = 0.0;
    for (const auto& [u, w] : nbrs) {
        (void)w;
        sum += forman_edge(g, u, v);
    }
    return sum / static_cast<double>(nbrs.size());
}

double forman_node_closed(const Graph& g, NodeIndex v) {
    const auto& nbrs = g.neighbors(v);
    if (nbrs.empty()) throw AnalysisError("forman_node: isolated node '" + g.name(v) + "'");
    double deg = static_cast<double>(nbrs.size());
    double neighbor_sum = 0.0;
    for (const auto& [u, w] : nbrs) {
        (void)w;
        neighbor_sum += g.degree(u, false);
    }
    return 4.0 - deg - neighbor_sum / deg;
}

double wasserstein1_neighbors(const Graph& g, NodeIndex u, NodeIndex v) {
    const auto& nu = g.neighbors(u);
    const auto& nv = g.neighbors(v);
    if (nu.empty() || nv.empty())
        throw AnalysisError("wasserstein1: endpoint with empty neighborhood");
    std::vector<NodeIndex> a, b;
    for (const auto& [x, w] : nu) {
        (void)w;
        a.push_back(x);
    }
    for (const auto& [x, w] : nv) {
        (void)w;
        b.push_back(x);
    }
    const long long da = static_cast<long long>(a.size());
    const long long db = static_cast<long long>(b.size());
    const long long scale = da * db;  // masses 1/da, 1/db become db, da

    // Ground costs; for an edge (u,v) every pair is within 3 hops, but the
    // solver is also used on arbitrary node pairs in tests, so fall back to
    // exact distances if the bounded pass misses.
    std::vector<std::vector<long long>> cost(a.size(), std::vector<long long>(b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto d = hop_distances_to(g, a[i], b, 3);
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (d[j] < 0) {
                double full = g.path_distance(a[i], b[j], PathMetric::Hops);
                if (full == kInfiniteDistance)
                    throw AnalysisError("wasserstein1: disconnected supports");
                d[j] = static_cast<int>(full);
            }
            cost[i][j] = d[j];
        }
    }

    const int source = 0;
    const int sink = 1;
    Transport net(2 + static_cast<int>(a.size() + b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) net.add(source, 2 + static_cast<int>(i), db, 0);
    for (std::size_t j = 0; j < b.size(); ++j)
        net.add(2 + static_cast<int>(a.size() + j), sink, da, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            net.add(2 + static_cast<int>(i), 2 + static_cast<int>(a.size() + j),
                    std::min(da, db), cost[i][j]);
    long long total = net.min_cost_flow(source, sink, scale);
    return static_cast<double>(total) / static_cast<double>(scale);
}

double ollivier_edge(const Graph& g, NodeIndex u, NodeIndex v) {
    require_edge(g, u, v, "ollivier_edge");
    return 1.0 - wasserstein1_neighbors(g, u, v);
}

double ollivier_node(const Graph& g, NodeIndex v) {
    const auto& nbrs = g.neighbors(v);
    if (nbrs.empty()) throw AnalysisError("ollivier_node: isolated node '" + g.name(v) + "'");
    double sum = 0.0;
    for (const auto& [u, w] : nbrs) {
        (void)w;
        sum += ollivier_edge(g, u, v);
    }
    return sum / static_cast<double>(nbrs.size());
}

std::pair<double, double> jost_liu_bounds(const Graph& g, NodeIndex u, NodeIndex v) {
    require_edge(g, u, v, "jost_liu_bounds");
    double du = g.degree(u, false);
    double dv = g.degree(v, false);
    double lower = -2.0 * std::max(0.0, 1.0 - 1.0 / du - 1.0 / dv);
    double upper = static_cast<double>(common_neighbors(g, u, v)) / std::max(du, dv);
    return {lower, upper};
}

CurvatureReport curvature_report(const Graph& g, bool forman, bool ollivier, int threads) {
    CurvatureReport report;
    report.has_forman = forman;
    report.has_ollivier = ollivier;
    auto edges = g.edges();
    report.edges.resize(edges.size());
    parallel_for(edges.size(), threads, [&](std::size_t i) {
        const auto& e = edges[i];
        CurvatureReport::EdgeRow row;
        row.u = e.u;
        row.v = e.v;
        if (forman) row.forman = forman_edge(g, e.u, e.v);
        if (ollivier) {
            row.ollivier = ollivier_edge(g, e.u, e.v);
            auto [lo, hi] = jost_liu_bounds(g, e.u, e.v);
            row.jl_lower = lo;
            row.jl_upper = hi;
        }
        report.edges[i] = row;
    });

    report.nodes.reserve(g.node_count());
    std::vector<double> f_sum(g.node_count(), 0.0), o_sum(g.node_count(), 0.0);
    for (const auto& row : report.edges) {
        f_sum[row.u] += row.forman;
        f_sum[row.v] += row.forman;
        o_sum[row.u] += row.ollivier;
        o_sum[row.v] += row.ollivier;
    }
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        double deg = g.degree(v, false);
        if (deg == 0.0) continue;  // isolated nodes carry no curvature rows
        report.nodes.push_back({v, f_sum[v] / deg, o_sum[v] / deg});
    }
    return report;
}

namespace {

struct Summary {
    double min = 0.0, mean = 0.0, max = 0.0;
};

template <typename Rows, typename Get>
Summary summarize(const Rows& rows, Get get) {
    Summary s;
    if (rows.empty()) return s;
    s.min = s.max = get(rows.front());
    double sum = 0.0;
    for (const auto& r : rows) {
        double x = get(r);
        s.min = std::min(s.min, x);
        s.max = std::max(s.max, x);
        sum += x;
    }
    s.mean = sum / static_cast<double>(rows.size());
    return s;
}

nlohmann::ordered_json to_json(const Summary& s) {
    return {{"min", round_sig(s.min)}, {"mean", round_sig(s.mean)}, {"max", round_sig(s.max)}};
}

}  // namespace

std::string CurvatureReport::edges_csv(const Graph& g) const {
    std::string out = "u,v";
    if (has_forman) out += ",forman";
    if (has_ollivier) out += ",ollivier,jl_lower,jl_upper";
    out += '\n';
    for (const auto& row : edges) {
        out += g.name(row.u) + "," + g.name(row.v);
        if (has_forman) out += "," + format_number(row.forman);
        if (has_ollivier)
            out += "," + format_number(row.ollivier) + "," + format_number(row.jl_lower) + "," +
                   format_number(row.jl_upper);
        out += '\n';
    }
    return out;
}

std::string CurvatureReport::nodes_csv(const Graph& g) const {
    std::string out = "node";
    if (has_forman) out += ",forman";
    if (has_ollivier) out += ",ollivier";
    out += '\n';
    for (const auto& row : nodes) {
        out += g.name(row.v);
        if (has_forman) out += "," + format_number(row.forman);
        if (has_ollivier) out += "," + format_number(row.ollivier);
        out += '\n';
    }
    return out;
}

std::string CurvatureReport::summary_json(const Graph& g) const {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["nodes"] = g.node_count();
    j["edges"] = g.edge_count();
    if (has_forman) {
        j["forman_edge"] = to_json(summarize(edges, [](const EdgeRow& r) { return r.forman; }));
        j["forman_node"] = to_json(summarize(nodes, [](const NodeRow& r) { return r.forman; }));
    }
    if (has_ollivier) {
        j["ollivier_edge"] =
            to_json(summarize(edges, [](const EdgeRow& r) { return r.ollivier; }));
        j["ollivier_node"] =
            to_json(summarize(nodes, [](const NodeRow& r) { return r.ollivier; }));
    }
    return j.dump(2) + "\n";
}

}  // namespace geoprior
