#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quasirank/block.hpp"
#include "quasirank/decomposition.hpp"
#include "quasirank/graph.hpp"

namespace quasirank {

enum class Measure : std::uint8_t { PageRank, PiHat, PiBar, PiTilde, PiCheck };

const char* measure_name(Measure m);
Measure measure_from_name(const std::string& name);

/// Nonnegative score vector normalized to sum one. `nodes` carries the
/// global ids the scores refer to; the damped walk scores the whole graph,
/// everything else scores the core.
struct CentralityVector {
    Measure measure = Measure::PageRank;
    std::vector<NodeId> nodes;
    std::vector<double> scores;

    std::size_t size() const { return scores.size(); }
};

struct SolverOptions {
    double tol = 1e-10;
    std::size_t max_iter = 1'000'000;
};

/// Damped random-surfer scores over the full graph. Power iteration from
/// the uniform vector; dangling mass is redistributed uniformly per sweep.
CentralityVector pagerank(const WebGraph& g, double damping = 0.85, SolverOptions opt = {});

/// Expected-occupation scores of the killed walk started uniformly:
/// the normalized row sums of the Neumann series over T. Requires a
/// strictly substochastic block (some exit mass), else the series diverges.
CentralityVector pseudo_stationary(const TransitionBlock& T, SolverOptions opt = {});

/// One-step survival-conditioned kernel (row renormalization of T).
TransitionBlock bar_transition(const TransitionBlock& T);

/// Stationary distribution of a stochastic kernel. Plain power iteration
/// with an automatic half-damped fallback for periodic chains; the fallback
/// preserves fixed points exactly.
CentralityVector bar_stationary(const TransitionBlock& T_bar, SolverOptions opt = {});

struct SpectralResult {
    double lambda1 = 0.0;
    CentralityVector pi_tilde;
    std::vector<double> u;  // right eigenvector, sum normalized to n_T
    std::size_t iterations = 0;
    double residual = 0.0;
};

/// Dominant left eigenpair of T: eigenvalue estimated as the L1 norm of the
/// image of the normalized nonnegative iterate. The result's `u` field is
/// left empty; see right_eigenvector.
SpectralResult quasi_stationary(const TransitionBlock& T, SolverOptions opt = {});

/// Eigenvalue via the exit identity: 1 - pi_tilde . exit_sums(T).
double lambda_from_exit(const CentralityVector& pi_tilde, const TransitionBlock& T);

/// Right eigenvector of T in its three normalizations.
struct RightVectors {
    std::vector<double> u;        // sum(u) = n_T
    std::vector<double> u_bar;    // pi_bar . u_bar = 1
    std::vector<double> u_tilde;  // pi_tilde . u_tilde = 1
    std::size_t iterations = 0;
    double residual = 0.0;
};

RightVectors right_eigenvector(const TransitionBlock& T, const CentralityVector& pi_bar,
                               const CentralityVector& pi_tilde, SolverOptions opt = {});

/// Survival-biased kernel: entries T_ij u_j / (lambda1 u_i), invariant
/// under rescaling of u. Row stochastic whenever (lambda1, u) is the
/// dominant right eigenpair.
class TwistedKernel {
public:
    TwistedKernel(TransitionBlock base, std::vector<double> u, double lambda1);

    std::size_t size() const { return base_.size(); }
    double entry(std::size_t i, std::size_t j) const;
    void apply_left(std::span<const double> x, std::span<double> y) const;
    std::vector<double> row_sums() const;
    std::vector<double> dense_rowmajor(std::size_t cap = 2000) const;
    const TransitionBlock& base() const { return base_; }
    double lambda1() const { return lambda1_; }
    const std::vector<double>& u() const { return u_; }

private:
    TransitionBlock base_;
    std::vector<double> u_;
    double lambda1_;
};

TwistedKernel twisted_kernel(const TransitionBlock& T, const std::vector<double>& u, double lambda1);

/// Stationary law of the twisted kernel: componentwise pi_tilde * u_tilde.
/// Requires pi_tilde . u_tilde = 1 within 1e-6.
CentralityVector check_stationary(const CentralityVector& pi_tilde,
                                  const std::vector<double>& u_tilde);

/// Damped occupation scores restricted to the core, normalized: the Neumann
/// series over c*T. Converges for every damping in (0,1).
CentralityVector pagerank_escc(const TransitionBlock& T, double damping, SolverOptions opt = {});

/// Attach global node ids from a decomposition to a core-domain vector.
CentralityVector with_domain(CentralityVector v, const Decomposition& d);

} // namespace quasirank
