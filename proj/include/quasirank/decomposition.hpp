#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quasirank/block.hpp"
#include "quasirank/graph.hpp"
#include "quasirank/scc.hpp"

namespace quasirank {

/// Node partition and extracted blocks of the reordered transition matrix
///
///   P = [ Q  0 ]      rows/cols of Q: pout
///       [ R  T ]      rows/cols of T: escc, R: escc rows into the complement
///
/// escc: nodes from which some dangling node is reachable over real edges
/// (dangling nodes included); with no dangling nodes, the giant SCC.
/// pout: nodes that cannot reach the escc. residual_in: nodes that reach the
/// escc without belonging to it (possible only in the no-dangling case).
struct Decomposition {
    std::vector<NodeId> escc;         // ascending node ids; row order of T
    std::vector<NodeId> pout;         // ascending node ids; row order of Q
    std::vector<NodeId> residual_in;  // ascending node ids

    TransitionBlock T;  // escc x escc, dangling rows virtual
    TransitionBlock Q;  // pout x pout

    /// Explicit exits of non-dangling escc rows: (global target, value).
    /// Dangling rows exit uniformly with 1/n per complement node.
    std::vector<std::vector<std::pair<NodeId, double>>> exit_edges;

    std::size_t full_size = 0;

    /// P entry from escc row (local index) to a global node outside the core.
    double exit_prob(std::size_t core_row, NodeId global_target) const;

    /// Local index of a global node inside escc, or npos.
    std::size_t core_index(NodeId global) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    friend Decomposition split_escc_pout(const WebGraph& g);
    std::vector<std::size_t> core_index_;  // global -> local or npos
};

/// Build the partition and blocks. Emits a warning to stderr when
/// residual_in is nonempty (the quasi-stationary theory assumes an
/// irreducible core and the surrounding reports exclude those nodes).
/// Throws ValidationError("no recurrent core") when the core is empty and
/// InternalError if the structural zero block is violated.
Decomposition split_escc_pout(const WebGraph& g);

/// Table of component sizes in the shape used by the reports.
struct ComponentStats {
    std::size_t total = 0;
    std::size_t scc_size = 0;
    std::size_t in_size = 0;
    std::size_t out_size = 0;
    std::size_t escc_size = 0;
    std::size_t pout_size = 0;
    std::size_t scc_count_in_out = 0;
    std::size_t scc_count_in_pout = 0;
};

ComponentStats component_stats(const WebGraph& g, const SccLabeling& s, const Decomposition& d);

} // namespace quasirank
