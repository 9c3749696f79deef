#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quasirank/graph.hpp"

namespace quasirank {

/// Synthetic site family for the trap-detection experiments: a hub core,
/// photo albums hanging off the hubs as bidirectional stars, optional
/// dangling leaves on the hubs, and an optional exit cycle the core cannot
/// return from. Generation is a pure function of the parameters.
struct AlbumGraphSpec {
    std::size_t n_albums = 1;
    std::size_t pages_per_album = 3;
    std::size_t hub_count = 2;
    double hub_link_density = 1.0;
    std::uint64_t seed = 0;
    std::size_t dangling_leaves = 0;
    std::size_t exit_cycle = 0;
};

struct AlbumGraph {
    EdgeList edges;
    std::vector<std::string> hubs;
    std::vector<std::string> indexes;
    std::vector<std::string> interiors;  // photo pages
    std::vector<std::string> leaves;
    std::vector<std::string> exits;
};

AlbumGraph generate_album_graph(const AlbumGraphSpec& spec);

} // namespace quasirank
