#pragma once

#include <cstdint>
#include <vector>

#include "quasirank/block.hpp"
#include "quasirank/spectral.hpp"

namespace quasirank {

/// Survival vectors s_k = T^k ones: s_k[i] is the probability that a walk
/// started at i stays in the core for k steps. Componentwise nonincreasing
/// in k. Returns s_0 .. s_N.
std::vector<std::vector<double>> survival_vectors(const TransitionBlock& T, std::size_t N);

/// First-step law of a walk conditioned on surviving N steps:
/// entries T_ij s_{N-1}[j] / s_N[i], built from survival vectors rather
/// than matrix powers. Row stochastic by construction.
class ConditionedKernel {
public:
    ConditionedKernel(TransitionBlock base, std::size_t N);

    std::size_t size() const { return base_.size(); }
    std::size_t horizon() const { return N_; }
    double entry(std::size_t i, std::size_t j) const;
    std::vector<double> row(std::size_t i) const;
    std::vector<double> row_sums() const;
    std::vector<double> dense_rowmajor(std::size_t cap = 2000) const;

private:
    TransitionBlock base_;
    std::size_t N_;
    std::vector<double> s_prev_;  // s_{N-1}
    std::vector<double> s_N_;
};

ConditionedKernel conditioned_kernel(const TransitionBlock& T, std::size_t N);

/// max_ij |conditioned(N)_ij - twisted_ij|; shrinks as the horizon grows
/// past the mixing transient (on aperiodic cores).
double kernel_limit_gap(const TransitionBlock& T, std::size_t N, const TwistedKernel& twisted);

/// One Monte-Carlo cell: walks from `start` that survived `horizon` steps,
/// split by their first step.
struct WalkEstimate {
    std::size_t start = 0;
    std::size_t target = 0;
    std::size_t horizon = 0;
    std::uint64_t samples = 0;
    std::uint64_t survivors = 0;
    std::uint64_t hits = 0;
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t seed = 0;
};

/// Simulate `samples` walks of `horizon` steps from `start` under the full
/// row law (leaving the core absorbs and discards the walk). One RNG stream
/// per walk keyed by (seed, walk index), so results are reproducible and
/// order independent. Returns one estimate per possible first step.
/// Throws ValidationError for samples = 0 and StatisticalError when no
/// walk survives.
std::vector<WalkEstimate> simulate_conditioned(const TransitionBlock& T, std::size_t start,
                                               std::size_t horizon, std::uint64_t samples,
                                               std::uint64_t seed);

} // namespace quasirank
