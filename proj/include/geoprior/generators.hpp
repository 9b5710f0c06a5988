#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geoprior/graph.hpp"
#include "geoprior/growth.hpp"

namespace geoprior {

// splitmix64: fixed, portable 64-bit generator so identical specs + seeds
// reproduce bit-exact edge lists on every platform. Streaming rules:
// one generator per trial, state = seed; uniform ints by rejection
// sampling, doubles from the top 53 bits.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // Uniform in [0, bound) without modulo bias.
    std::uint64_t next_below(std::uint64_t bound) {
        std::uint64_t threshold = (0ULL - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }
    double next_double() { return (next() >> 11) * 0x1.0p-53; }
};

enum class Family {
    Cycle,          // ring of n nodes
    Lattice,        // side x side grid, 4-neighbor, non-periodic
    BTree,          // complete b-ary tree: every internal node has b children
    RegularTree,    // b-regular tree: root has b children, others b-1
    ErdosRenyi,     // G(n, p)
    WattsStrogatz,  // ring lattice k nearest, rewire prob beta
    BarabasiAlbert  // clique seed on m+1 nodes, linear preferential attachment
};

const char* to_string(Family f);
Family family_from_string(const std::string& name);

struct GeneratorSpec {
    Family family = Family::Cycle;
    std::uint64_t n = 0;      // cycle/er/ws/ba node count
    std::uint64_t side = 0;   // lattice
    std::uint64_t b = 0;      // trees
    std::uint64_t depth = 0;  // trees
    double p = 0.0;           // er
    std::uint64_t k = 0;      // ws
    double beta = 0.0;        // ws
    std::uint64_t m = 0;      // ba
    std::uint64_t seed = 0;

    void validate() const;  // throws ConfigError
    std::string to_json() const;
    static GeneratorSpec from_json(const std::string& text);
};

// ER presets from the experiments: p multipliers 1.5 ("just above") and
// 0.5 ("just below") applied to log(n)/n (ER-2/ER-1) and 1/n (ER-3/ER-4).
double er_preset_probability(int preset, std::uint64_t n);

// Deterministic construction; identical spec + seed => identical edge list.
Graph generate(const GeneratorSpec& spec);

struct SampleStats {
    double mean = 0.0;
    double stddev = 0.0;  // population
    std::vector<double> scores;
    std::size_t isolated_dropped = 0;
};

// Runs generate + regularize + three_regular_score for seeds
// seed+0 .. seed+trials-1 and aggregates A_normalized. Isolated vertices
// are dropped before regularization (ER below connectivity can emit them).
SampleStats sample_average_score(const GeneratorSpec& spec, int trials, double R, double tau,
                                 ScoreScope scope = ScoreScope::OriginalOnly, int threads = 1);

}  // namespace geoprior
