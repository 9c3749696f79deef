#pragma once

#include <cstdint>
#include <vector>

#include "quasirank/graph.hpp"

namespace quasirank {

/// Strongly connected components over the real edges (artificial dangling
/// links are never part of the labeling). Component indices follow Tarjan
/// completion order, i.e. reverse topological order of the condensation.
struct SccLabeling {
    std::vector<std::uint32_t> component_of;  // node -> component index
    std::vector<std::uint32_t> component_sizes;
    std::uint32_t giant = 0;  // largest component; size ties break to the lowest index

    std::size_t count() const { return component_sizes.size(); }
};

/// Iterative Tarjan; safe on long chains (no call-stack recursion).
SccLabeling tarjan_scc(const WebGraph& g);

enum class BowtieClass : std::uint8_t { SCC, IN, OUT, OTHER };

/// Classic bow-tie split around the giant SCC, on real edges only.
std::vector<BowtieClass> classify_bowtie(const WebGraph& g, const SccLabeling& s);

} // namespace quasirank
