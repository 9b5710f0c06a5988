// geoprior: decide the curvature sign prior (hyperbolic / euclidean /
// spherical) best suited for embedding a relational dataset, via
// 3-regularization and neighborhood growth analysis; also computes discrete
// Ricci curvatures and embedding distortion statistics.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "geoprior/curvature.hpp"
#include "geoprior/distortion.hpp"
#include "geoprior/generators.hpp"
#include "geoprior/graph.hpp"
#include "geoprior/growth.hpp"
#include "geoprior/regularizer.hpp"
#include "geoprior/report.hpp"

namespace {

using namespace geoprior;

constexpr int kExitConfig = 2;
constexpr int kExitParse = 3;
constexpr int kExitAnalysis = 4;

// Flag defaults can be overridden with GEOPRIOR_<NAME> environment
// variables (RADIUS, TAU, THREADS, SEED, FORMAT).
std::optional<std::string> env_override(const std::string& name) {
    const char* value = std::getenv(("GEOPRIOR_" + name).c_str());
    if (value == nullptr || *value == '\0') return std::nullopt;
    return std::string(value);
}

double env_or(const std::string& name, double fallback) {
    auto v = env_override(name);
    return v ? std::stod(*v) : fallback;
}

long long env_or(const std::string& name, long long fallback) {
    auto v = env_override(name);
    return v ? std::stoll(*v) : fallback;
}

std::string env_or(const std::string& name, std::string fallback) {
    auto v = env_override(name);
    return v ? *v : fallback;
}

struct InputOptions {
    std::string input_path;
    std::string node_list;
    bool weighted = false;
    std::string family;
    std::uint64_t n = 1000, side = 32, b = 3, depth = 6, k = 4, m = 1;
    double p = 0.01, beta = 0.1;
    int er_preset = 0;
    std::uint64_t seed = 42;

    void attach(CLI::App* cmd, bool generator_only = false) {
        if (!generator_only) {
            cmd->add_option("--input", input_path, "edge-list file (u v [w] per line, # comments)");
            cmd->add_option("--node-list", node_list, "side file naming nodes (permits isolated nodes)");
            cmd->add_flag("--weighted", weighted, "treat the third column as edge weights");
        }
        cmd->add_option("--family", family, "generator family: cycle|lattice|btree|rtree|er|ws|ba");
        cmd->add_option("--n", n, "node count (cycle/er/ws/ba)");
        cmd->add_option("--side", side, "lattice side");
        cmd->add_option("--b", b, "tree arity");
        cmd->add_option("--depth", depth, "tree depth");
        cmd->add_option("--p", p, "er edge probability");
        cmd->add_option("--er-preset", er_preset,
                        "er probability preset 1..4 (0.5x/1.5x of log(n)/n and 1/n)");
        cmd->add_option("--k", k, "ws ring neighbors (even)");
        cmd->add_option("--beta", beta, "ws rewiring probability");
        cmd->add_option("--m", m, "ba edges per arriving node");
        cmd->add_option("--seed", seed, "generator seed");
    }

    GeneratorSpec spec() const {
        GeneratorSpec s;
        s.family = family_from_string(family);
        s.n = n;
        s.side = side;
        s.b = b;
        s.depth = depth;
        s.p = er_preset > 0 ? er_preset_probability(er_preset, n) : p;
        s.k = k;
        s.beta = beta;
        s.m = m;
        s.seed = seed;
        s.validate();
        return s;
    }

    Graph load() const {
        if (!input_path.empty() && !family.empty())
            throw ConfigError("give either --input or --family, not both");
        if (!input_path.empty())
            return Graph::load_edge_list_file(input_path, weighted, node_list);
        if (!family.empty()) return generate(spec());
        throw ConfigError("need --input or --family");
    }
};

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw AnalysisError("cannot write '" + path + "'");
    out << content;
}

std::string edge_list_text(const Graph& g) {
    std::ostringstream out;
    for (const auto& e : g.edges()) {
        out << g.name(e.u) << ' ' << g.name(e.v);
        if (g.weighted()) out << ' ' << format_number(e.weight);
        out << '\n';
    }
    return out.str();
}

int run(int argc, char** argv) {
    CLI::App app{"geometric prior analysis for relational data"};
    app.require_subcommand(1);

    double radius = env_or("RADIUS", 3.0);
    double tau = env_or("TAU", 0.1);
    int threads = static_cast<int>(env_or("THREADS", 0LL));
    std::string format = env_or("FORMAT", std::string("json"));
    std::string output;
    std::string scope_name = "all";
    bool per_vertex = false;
    int trials = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--output", output, "output path ('-' = stdout)");
        cmd->add_option("--format", format, "json|csv");
        cmd->add_option("--threads", threads, "worker threads (0 = auto)");
    };

    // analyze
    InputOptions analyze_in;
    auto* analyze = app.add_subcommand("analyze", "load -> regularize -> 3-regular score");
    analyze_in.attach(analyze);
    add_common(analyze);
    analyze->add_option("--radius", radius, "neighborhood radius R (hop mode: integer >= 3)");
    analyze->add_option("--tau", tau, "decision tolerance on the normalized score");
    analyze->add_option("--scope", scope_name, "all|original: vertices entering the score");
    analyze->add_flag("--per-vertex", per_vertex, "include the per-vertex table (large)");
    analyze->add_option("--trials", trials, "generator mode: sample this many seeds and average");

    // generate
    InputOptions gen_in;
    auto* gen = app.add_subcommand("generate", "write a synthetic graph as an edge list");
    gen_in.attach(gen, /*generator_only=*/true);
    gen->add_option("--output", output, "output path ('-' = stdout)");

    // regularize
    InputOptions reg_in;
    std::string provenance_path;
    auto* reg = app.add_subcommand("regularize", "emit G3 and its provenance map");
    reg_in.attach(reg);
    reg->add_option("--output", output, "edge-list output path ('-' = stdout)");
    reg->add_option("--provenance", provenance_path, "JSON provenance sidecar path");

    // curvature
    InputOptions curv_in;
    std::string measures = "forman,ollivier";
    auto* curv = app.add_subcommand("curvature", "Forman / Ollivier Ricci curvature tables");
    curv_in.attach(curv);
    add_common(curv);
    curv->add_option("--measures", measures, "subset of forman,ollivier");

    // distortion
    InputOptions dist_in;
    std::string embedding_path;
    double abs_curvature = 1.0;
    auto* dist = app.add_subcommand("distortion", "D_avg and MAP of a given embedding");
    dist_in.attach(dist);
    dist->add_option("--embedding", embedding_path, "embedding CSV (node,space,c0,c1,...)")
        ->required();
    dist->add_option("--curvature-magnitude", abs_curvature,
                     "|kappa| of the model space (distances scale by 1/sqrt)");
    dist->add_option("--output", output, "optional JSON output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    if (analyze->parsed()) {
        ScoreScope scope;
        if (scope_name == "all")
            scope = ScoreScope::AllG3Vertices;
        else if (scope_name == "original")
            scope = ScoreScope::OriginalOnly;
        else
            throw ConfigError("--scope must be 'all' or 'original'");
        if (format != "json" && format != "csv") throw ConfigError("--format must be json or csv");

        if (trials > 1) {
            if (analyze_in.family.empty())
                throw ConfigError("--trials needs a generator family");
            auto stats = sample_average_score(analyze_in.spec(), trials, radius, tau, scope, threads);
            nlohmann::ordered_json j;
            j["schema_version"] = kReportSchemaVersion;
            j["spec"] = nlohmann::ordered_json::parse(analyze_in.spec().to_json());
            j["trials"] = trials;
            j["R"] = round_sig(radius);
            j["tau"] = round_sig(tau);
            j["scope"] = to_string(scope);
            j["mean_normalized_score"] = round_sig(stats.mean);
            j["stddev_normalized_score"] = round_sig(stats.stddev);
            nlohmann::ordered_json scores = nlohmann::ordered_json::array();
            for (double s : stats.scores) scores.push_back(round_sig(s));
            j["scores"] = std::move(scores);
            j["isolated_dropped"] = stats.isolated_dropped;
            j["prior"] = to_string(decide_prior(stats.mean, tau));
            write_output(output, j.dump(2) + "\n");
            std::cout << "prior=" << to_string(decide_prior(stats.mean, tau))
                      << " mean_normalized_score=" << format_number(stats.mean) << "\n";
            return 0;
        }

        Graph g = analyze_in.load();
        std::size_t dropped = g.count_isolated();
        if (dropped > 0) g = g.without_isolated();
        auto rg = regularize(g);
        bool table = per_vertex || format == "csv";
        auto report = three_regular_score(rg, radius, tau, scope, threads, nullptr, table);
        report.isolated_dropped = dropped;
        write_output(output, format == "json" ? report.to_json(per_vertex)
                                              : report.per_vertex_csv());
        std::cout << "prior=" << to_string(report.prior)
                  << " A_normalized=" << format_number(report.a_normalized) << "\n";
        return 0;
    }

    if (gen->parsed()) {
        if (gen_in.family.empty()) throw ConfigError("generate needs --family");
        Graph g = generate(gen_in.spec());
        write_output(output, edge_list_text(g));
        return 0;
    }

    if (reg->parsed()) {
        Graph g = reg_in.load();
        auto rg = regularize(g);
        write_output(output, regularized_edge_list(rg));
        if (!provenance_path.empty()) write_output(provenance_path, provenance_json(g, rg));
        return 0;
    }

    if (curv->parsed()) {
        bool want_forman = measures.find("forman") != std::string::npos;
        bool want_ollivier = measures.find("ollivier") != std::string::npos;
        if (!want_forman && !want_ollivier)
            throw ConfigError("--measures needs forman and/or ollivier");
        if (format != "json" && format != "csv") throw ConfigError("--format must be json or csv");
        Graph g = curv_in.load();
        auto report = curvature_report(g, want_forman, want_ollivier, threads);
        if (format == "json") {
            write_output(output, report.summary_json(g));
        } else {
            write_output(output, report.edges_csv(g) + "\n" + report.nodes_csv(g));
        }
        return 0;
    }

    if (dist->parsed()) {
        Graph g = dist_in.load();
        auto emb = Embedding::load_csv_file(embedding_path, g);
        double davg = d_avg(g, emb, abs_curvature);
        double map = map_score(g, emb, abs_curvature);
        std::cout << "d_avg=" << format_number(davg) << " map=" << format_number(map) << "\n";
        if (!output.empty()) {
            nlohmann::ordered_json j;
            j["schema_version"] = kReportSchemaVersion;
            j["d_avg"] = round_sig(davg);
            j["map"] = round_sig(map);
            write_output(output, j.dump(2) + "\n");
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const geoprior::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const geoprior::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const geoprior::AnalysisError& e) {
        std::cerr << "analysis error: " << e.what() << "\n";
        return kExitAnalysis;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAnalysis;
    }
}
