#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quasirank/block.hpp"
#include "quasirank/spectral.hpp"

namespace quasirank {

/// Descending-score order over a node domain. Ties (scores equal within
/// 1e-12 of their group neighbors) are recorded as maximal groups; the
/// order itself breaks ties by ascending position for determinism.
struct Ranking {
    std::vector<std::size_t> order;       // positions into the score vector, best first
    std::vector<std::size_t> group_of;    // position -> tie group id
    std::vector<std::size_t> group_sizes;
    std::size_t group_count = 0;

    static constexpr double TIE_EPS = 1e-12;
    static Ranking of(const std::vector<double>& scores);

    /// 1-based rank of a position (its index in `order`).
    std::size_t rank_of(std::size_t position) const;

    bool tied(std::size_t a, std::size_t b) const { return group_of[a] == group_of[b]; }
    bool is_tie_free(std::size_t position) const {
        return group_sizes[group_of[position]] == 1;
    }

private:
    std::vector<std::size_t> rank_;  // position -> 0-based rank
};

enum class TauVariant : std::uint8_t { TauA, TauB };

struct TauResult {
    double tau = 0.0;
    TauVariant variant = TauVariant::TauA;  // TauB when either input has ties
};

/// Kendall rank correlation in O(n log n) (merge-sort exchange counting).
/// Tie-free inputs use the plain n(n-1)/2 denominator; inputs with ties use
/// the tie-corrected denominator, and the result records which one ran.
TauResult kendall_tau(const std::vector<double>& a, const std::vector<double>& b);

struct TauMatrix {
    std::vector<std::string> measures;
    std::vector<std::vector<double>> values;  // symmetric, unit diagonal
    std::vector<std::vector<TauVariant>> variants;
};

/// All pairwise correlations of vectors sharing one domain.
TauMatrix tau_table(const std::vector<CentralityVector>& vectors);

/// Correlation between the quasi-stationary scores and the damped
/// occupation scores across a damping grid.
std::vector<std::pair<double, double>> damping_sweep(const TransitionBlock& T,
                                                     const std::vector<double>& c_grid,
                                                     SolverOptions opt = {});

/// One node of the rank-shift report: positive delta means the node stands
/// higher under the quasi-stationary scores than under the damped walk.
struct RankShift {
    NodeId node = 0;
    std::size_t rank_reference = 0;  // damped-walk rank, 1-based
    std::size_t rank_quasi = 0;
    long long delta = 0;
    bool flagged = false;
};

/// Table of per-node rank deltas between two vectors on one domain,
/// sorted by descending delta; the top k rows are flagged. k larger than
/// the domain clamps with a warning on stderr.
std::vector<RankShift> divergence_report(const CentralityVector& reference,
                                         const CentralityVector& quasi, std::size_t top_k);

} // namespace quasirank
