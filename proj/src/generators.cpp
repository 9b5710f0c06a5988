#include "geoprior/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "geoprior/parallel.hpp"
#include "geoprior/report.hpp"

namespace geoprior {

const char* to_string(Family f) {
    switch (f) {
        case Family::Cycle: return "cycle";
        case Family::Lattice: return "lattice";
        case Family::BTree: return "btree";
        case Family::RegularTree: return "rtree";
        case Family::ErdosRenyi: return "er";
        case Family::WattsStrogatz: return "ws";
        case Family::BarabasiAlbert: return "ba";
    }
    return "?";
}

Family family_from_string(const std::string& name) {
    if (name == "cycle") return Family::Cycle;
    if (name == "lattice") return Family::Lattice;
    if (name == "btree") return Family::BTree;
    if (name == "rtree") return Family::RegularTree;
    if (name == "er") return Family::ErdosRenyi;
    if (name == "ws") return Family::WattsStrogatz;
    if (name == "ba") return Family::BarabasiAlbert;
    throw ConfigError("unknown generator family '" + name + "'");
}

void GeneratorSpec::validate() const {
    switch (family) {
        case Family::Cycle:
            if (n < 3) throw ConfigError("cycle needs n >= 3");
            break;
        case Family::Lattice:
            if (side < 2) throw ConfigError("lattice needs side >= 2");
            break;
        case Family::BTree:
        case Family::RegularTree:
            if (b < 2) throw ConfigError("tree needs b >= 2");
            if (depth < 1) throw ConfigError("tree needs depth >= 1");
            break;
        case Family::ErdosRenyi:
            if (n < 2) throw ConfigError("er needs n >= 2");
            if (p < 0.0 || p > 1.0) throw ConfigError("er needs p in [0,1]");
            break;
        case Family::WattsStrogatz:
            if (n < 3) throw ConfigError("ws needs n >= 3");
            if (k == 0 || k % 2 != 0 || k >= n) throw ConfigError("ws needs even k < n");
            if (beta < 0.0 || beta > 1.0) throw ConfigError("ws needs beta in [0,1]");
            break;
        case Family::BarabasiAlbert:
            if (m < 1 || m >= n) throw ConfigError("ba needs 1 <= m < n");
            break;
    }
}

double er_preset_probability(int preset, std::uint64_t n) {
    double dn = static_cast<double>(n);
    switch (preset) {
        case 1: return 0.5 * std::log(dn) / dn;  // just below connectivity
        case 2: return 1.5 * std::log(dn) / dn;  // just above connectivity
        case 3: return 1.5 / dn;                 // just above giant threshold
        case 4: return 0.5 / dn;                 // just below giant threshold
    }
    throw ConfigError("er preset must be 1..4");
}

namespace {

using EdgeList = std::vector<std::tuple<std::string, std::string, double>>;

std::string id(std::uint64_t i) { return std::to_string(i); }

Graph from_pairs(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs,
                 const std::vector<std::string>& extra = {}) {
    EdgeList edges;
    edges.reserve(pairs.size());
    for (const auto& [u, v] : pairs) edges.emplace_back(id(u), id(v), 1.0);
    return Graph::build(std::move(edges), /*weighted=*/false, extra);
}

Graph gen_cycle(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    for (std::uint64_t i = 0; i < n; ++i) pairs.emplace_back(i, (i + 1) % n);
    return from_pairs(pairs);
}

Graph gen_lattice(std::uint64_t side) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    for (std::uint64_t r = 0; r < side; ++r)
        for (std::uint64_t c = 0; c < side; ++c) {
            std::uint64_t v = r * side + c;
            if (c + 1 < side) pairs.emplace_back(v, v + 1);
            if (r + 1 < side) pairs.emplace_back(v, v + side);
        }
    return from_pairs(pairs);
}

// children_of_root = b for both tree families; inner nodes get `branch`
// children each (b for the complete b-ary tree, b-1 for the b-regular one).
Graph gen_tree(std::uint64_t b, std::uint64_t depth, bool regular) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    std::vector<std::uint64_t> frontier{0};
    std::uint64_t next = 1;
    for (std::uint64_t level = 0; level < depth; ++level) {
        std::uint64_t branch = (regular && level > 0) ? b - 1 : b;
        std::vector<std::uint64_t> new_frontier;
        new_frontier.reserve(frontier.size() * branch);
        for (std::uint64_t parent : frontier)
            for (std::uint64_t c = 0; c < branch; ++c) {
                pairs.emplace_back(parent, next);
                new_frontier.push_back(next++);
            }
        frontier = std::move(new_frontier);
    }
    return from_pairs(pairs);
}

Graph gen_er(std::uint64_t n, double p, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    std::vector<std::string> all_nodes;
    all_nodes.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) all_nodes.push_back(id(i));
    for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = i + 1; j < n; ++j)
            if (rng.next_double() < p) pairs.emplace_back(i, j);
    return from_pairs(pairs, all_nodes);
}

Graph gen_ws(std::uint64_t n, std::uint64_t k, double beta, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::set<std::pair<std::uint64_t, std::uint64_t>> edges;
    auto norm = [](std::uint64_t a, std::uint64_t b2) {
        return std::make_pair(std::min(a, b2), std::max(a, b2));
    };
    for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = 1; j <= k / 2; ++j)
            edges.insert(norm(i, (i + j) % n));
    // Rewire the far endpoint of each ring edge with probability beta,
    // in deterministic (sorted) edge order; skip when no duplicate-free
    // target exists after n attempts.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ring(edges.begin(), edges.end());
    for (const auto& e : ring) {
        if (rng.next_double() >= beta) continue;
        std::uint64_t a = e.first;
        for (std::uint64_t tries = 0; tries < n; ++tries) {
            std::uint64_t c = rng.next_below(n);
            if (c == a) continue;
            auto cand = norm(a, c);
            if (edges.count(cand)) continue;
            edges.erase(e);
            edges.insert(cand);
            break;
        }
    }
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs(edges.begin(), edges.end());
    std::vector<std::string> all_nodes;
    for (std::uint64_t i = 0; i < n; ++i) all_nodes.push_back(id(i));
    return from_pairs(pairs, all_nodes);
}

Graph gen_ba(std::uint64_t n, std::uint64_t m, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    std::vector<std::uint64_t> repeated;  // one entry per edge endpoint
    for (std::uint64_t i = 0; i <= m; ++i)
        for (std::uint64_t j = i + 1; j <= m; ++j) {
            pairs.emplace_back(i, j);
            repeated.push_back(i);
            repeated.push_back(j);
        }
    for (std::uint64_t v = m + 1; v < n; ++v) {
        std::set<std::uint64_t> targets;
        while (targets.size() < m) {
            std::uint64_t t = repeated[rng.next_below(repeated.size())];
            targets.insert(t);
        }
        for (std::uint64_t t : targets) {
            pairs.emplace_back(t, v);
            repeated.push_back(t);
            repeated.push_back(v);
        }
    }
    return from_pairs(pairs);
}

}  // namespace

Graph generate(const GeneratorSpec& spec) {
    spec.validate();
    switch (spec.family) {
        case Family::Cycle: return gen_cycle(spec.n);
        case Family::Lattice: return gen_lattice(spec.side);
        case Family::BTree: return gen_tree(spec.b, spec.depth, false);
        case Family::RegularTree: return gen_tree(spec.b, spec.depth, true);
        case Family::ErdosRenyi: return gen_er(spec.n, spec.p, spec.seed);
        case Family::WattsStrogatz: return gen_ws(spec.n, spec.k, spec.beta, spec.seed);
        case Family::BarabasiAlbert: return gen_ba(spec.n, spec.m, spec.seed);
    }
    throw ConfigError("unhandled family");
}

std::string GeneratorSpec::to_json() const {
    nlohmann::ordered_json j;
    j["family"] = geoprior::to_string(family);
    switch (family) {
        case Family::Cycle: j["n"] = n; break;
        case Family::Lattice: j["side"] = side; break;
        case Family::BTree:
        case Family::RegularTree:
            j["b"] = b;
            j["depth"] = depth;
            break;
        case Family::ErdosRenyi:
            j["n"] = n;
            j["p"] = p;
            break;
        case Family::WattsStrogatz:
            j["n"] = n;
            j["k"] = k;
            j["beta"] = beta;
            break;
        case Family::BarabasiAlbert:
            j["n"] = n;
            j["m"] = m;
            break;
    }
    j["seed"] = seed;
    return j.dump();
}

GeneratorSpec GeneratorSpec::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad generator spec JSON: ") + e.what());
    }
    GeneratorSpec spec;
    try {
        spec.family = family_from_string(j.at("family").get<std::string>());
        spec.n = j.value("n", 0ULL);
        spec.side = j.value("side", 0ULL);
        spec.b = j.value("b", 0ULL);
        spec.depth = j.value("depth", 0ULL);
        spec.p = j.value("p", 0.0);
        spec.k = j.value("k", 0ULL);
        spec.beta = j.value("beta", 0.0);
        spec.m = j.value("m", 0ULL);
        spec.seed = j.value("seed", 0ULL);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad generator spec JSON: ") + e.what());
    }
    spec.validate();
    return spec;
}

SampleStats sample_average_score(const GeneratorSpec& spec, int trials, double R, double tau,
                                 ScoreScope scope, int threads) {
    if (trials < 1) throw ConfigError("trials must be >= 1");
    SampleStats stats;
    stats.scores.resize(trials);
    std::vector<std::size_t> dropped(trials, 0);
    // Independent trials in parallel; per-trial seed derivation keeps the
    // result order fixed.
    parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
        GeneratorSpec trial = spec;
        trial.seed = spec.seed + t;
        Graph g = generate(trial);
        std::size_t iso = g.count_isolated();
        if (iso > 0) g = g.without_isolated();
        dropped[t] = iso;
        auto rg = regularize(g);
        auto report = three_regular_score(rg, R, tau, scope, 1);
        stats.scores[t] = report.a_normalized;
    });
    for (std::size_t t = 0; t < stats.scores.size(); ++t) stats.isolated_dropped += dropped[t];
    double sum = 0.0;
    for (double s : stats.scores) sum += s;
    stats.mean = sum / trials;
    double var = 0.0;
    for (double s : stats.scores) var += (s - stats.mean) * (s - stats.mean);
    stats.stddev = std::sqrt(var / trials);
    return stats;
}

}  // namespace geoprior
