#pragma once

#include <string>

#include "quasirank/album.hpp"
#include "quasirank/block.hpp"
#include "quasirank/graph.hpp"
#include "quasirank/rng.hpp"

namespace quasirank::testing {

// Two tiny reference graphs used throughout the suites.
//
// G3: 0 -> 1, 1 -> 0, 1 -> 2, 2 -> 2. Core {0, 1}, absorbing part {2}.
//     T = [[0, 1], [1/2, 0]]; the core block is period two.
// G4: 0 -> 1, 1 -> {0, 2, 3}, 3 -> 3, node 2 dangling. Core {0, 1, 2}
//     including the dangling node, absorbing part {3}.
//     T = [[0, 1, 0], [1/3, 0, 1/3], [1/4, 1/4, 1/4]].

inline const char* G3_EDGES = "0 1\n1 0\n1 2\n2 2\n";
inline const char* G4_EDGES = "0 1\n1 0\n1 2\n1 3\n3 3\n";

inline WebGraph make_g3() { return build_graph(parse_edge_list(std::string(G3_EDGES))); }
inline WebGraph make_g4() { return build_graph(parse_edge_list(std::string(G4_EDGES))); }

// The ~1000 node synthetic reference instance every report-level check runs
// on. Fixed here once; the CLI generator defaults mirror these numbers.
inline AlbumGraphSpec reference_album_spec() {
    AlbumGraphSpec spec;
    spec.n_albums = 45;
    spec.pages_per_album = 20;
    spec.hub_count = 24;
    spec.hub_link_density = 1.0;
    spec.seed = 7;
    spec.dangling_leaves = 24;
    spec.exit_cycle = 6;
    return spec;
}

// Random digraph in edge-list text form. Nodes in [0, n); roughly avg_deg
// out-edges per node; a dangling_frac share of nodes gets no out-edges but
// stays reachable. Deterministic per seed.
inline std::string random_edge_text(std::uint64_t seed, std::size_t n, double avg_deg,
                                    double dangling_frac) {
    CounterRng rng(seed);
    std::string out;
    std::vector<bool> dangling(n, false);
    std::size_t n_dangling = static_cast<std::size_t>(dangling_frac * static_cast<double>(n));
    if (n_dangling >= n) n_dangling = n - 1;
    for (std::size_t k = 0; k < n_dangling; ++k) {
        const std::size_t v = 1 + rng.next_below(n - 1);  // keep node 0 emitting
        dangling[v] = true;
    }
    auto add = [&out](std::size_t a, std::size_t b) {
        out += std::to_string(a);
        out += '\t';
        out += std::to_string(b);
        out += '\n';
    };
    for (std::size_t v = 0; v < n; ++v) {
        if (dangling[v]) {
            add(v == 0 ? n - 1 : v - 1, v);  // reachable as a target
            continue;
        }
        const std::size_t deg = 1 + rng.next_below(static_cast<std::uint64_t>(2.0 * avg_deg));
        for (std::size_t k = 0; k < deg; ++k) add(v, rng.next_below(n));
    }
    return out;
}

// Strictly substochastic irreducible block: a weighted ring plus random
// extra entries, each row scaled to a total below one.
inline TransitionBlock random_substochastic_block(std::uint64_t seed, std::size_t n) {
    CounterRng rng(seed);
    std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> trip;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(n, 0.0);
        row[(i + 1) % n] = 0.2 + 0.6 * rng.next_double();
        const std::size_t extras = rng.next_below(n);
        for (std::size_t k = 0; k < extras; ++k) row[rng.next_below(n)] += rng.next_double();
        double sum = 0.0;
        for (double v : row) sum += v;
        const double target = 0.82 + 0.17 * rng.next_double();  // in [0.82, 0.99)
        for (std::size_t j = 0; j < n; ++j) {
            if (row[j] > 0.0)
                trip.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                                  row[j] * target / sum);
        }
    }
    return TransitionBlock::from_triplets(n, trip);
}

// Irreducible stochastic block on the same pattern (row sums exactly one).
inline TransitionBlock random_stochastic_block(std::uint64_t seed, std::size_t n) {
    CounterRng rng(seed);
    std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> trip;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(n, 0.0);
        row[(i + 1) % n] = 0.2 + 0.6 * rng.next_double();
        row[i] += 0.05 + 0.1 * rng.next_double();  // self mass keeps it aperiodic
        const std::size_t extras = rng.next_below(n);
        for (std::size_t k = 0; k < extras; ++k) row[rng.next_below(n)] += rng.next_double();
        double sum = 0.0;
        for (double v : row) sum += v;
        for (std::size_t j = 0; j < n; ++j) {
            if (row[j] > 0.0)
                trip.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                                  row[j] / sum);
        }
    }
    return TransitionBlock::from_triplets(n, trip);
}

} // namespace quasirank::testing
