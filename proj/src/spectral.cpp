#include "quasirank/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "quasirank/errors.hpp"

namespace quasirank {

const char* measure_name(Measure m) {
    switch (m) {
        case Measure::PageRank: return "pagerank";
        case Measure::PiHat: return "pi_hat";
        case Measure::PiBar: return "pi_bar";
        case Measure::PiTilde: return "pi_tilde";
        case Measure::PiCheck: return "pi_check";
    }
    return "?";
}

Measure measure_from_name(const std::string& name) {
    if (name == "pagerank") return Measure::PageRank;
    if (name == "pi_hat") return Measure::PiHat;
    if (name == "pi_bar") return Measure::PiBar;
    if (name == "pi_tilde") return Measure::PiTilde;
    if (name == "pi_check") return Measure::PiCheck;
    throw ValidationError("unknown measure: " + name);
}

namespace {

double l1_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
}

double l1_diff(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
}

void normalize_sum(std::vector<double>& v, double target = 1.0) {
    double s = std::accumulate(v.begin(), v.end(), 0.0);
    if (s <= 0.0) throw ConvergenceError("iterate collapsed to zero", 0.0, 0);
    const double f = target / s;
    for (double& x : v) x *= f;
}

struct PowerOutcome {
    std::vector<double> vec;  // nonnegative, sums to 1
    double lambda = 0.0;
    std::size_t iterations = 0;
    double residual = std::numeric_limits<double>::infinity();
    bool converged = false;
};

// Shared power-iteration engine for nonnegative kernels. Runs plain sweeps
// first; if the budget for those runs out (periodic chains never settle),
// continues with the half-damped update x <- (x + Ax/|Ax|)/2, which keeps
// the dominant direction fixed. Eigenvalue estimate is |x A|_1 for the
// L1-normalized nonnegative iterate (exactly lambda at the fixed point).
template <typename Apply>
PowerOutcome power_iteration(std::size_t n, Apply&& apply, const SolverOptions& opt,
                             std::size_t plain_budget = 1024) {
    PowerOutcome out;
    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    std::vector<double> y(n, 0.0);
    double lambda_prev = std::numeric_limits<double>::quiet_NaN();
    bool damped = false;

    for (std::size_t it = 1; it <= opt.max_iter; ++it) {
        apply(std::span<const double>(x), std::span<double>(y));
        const double lambda = l1_norm(y);
        if (lambda <= 0.0)
            throw ValidationError("power iteration hit the zero vector: kernel has no "
                                  "recurrent direction");
        if (damped) {
            for (std::size_t i = 0; i < n; ++i) y[i] = 0.5 * x[i] + 0.5 * y[i] / lambda;
        } else {
            for (double& v : y) v /= lambda;
        }
        out.residual = l1_diff(y, x);
        const double dlam = std::isnan(lambda_prev)
                                ? std::numeric_limits<double>::infinity()
                                : std::abs(lambda - lambda_prev);
        x.swap(y);
        lambda_prev = lambda;
        out.iterations = it;
        if (out.residual <= opt.tol && dlam <= opt.tol) {
            out.converged = true;
            break;
        }
        if (!damped && it >= plain_budget) damped = true;
    }
    out.lambda = lambda_prev;
    normalize_sum(x);
    out.vec = std::move(x);
    return out;
}

} // namespace

CentralityVector pagerank(const WebGraph& g, double damping, SolverOptions opt) {
    if (!(damping > 0.0 && damping < 1.0))
        throw ValidationError("damping must lie strictly inside (0, 1)");
    const std::size_t n = g.size();
    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    std::vector<double> y(n);
    const double teleport = (1.0 - damping) / static_cast<double>(n);

    for (std::size_t it = 1; it <= opt.max_iter; ++it) {
        double dangling_mass = 0.0;
        for (NodeId v : g.dangling()) dangling_mass += x[v];
        const double base = teleport + damping * dangling_mass / static_cast<double>(n);
        std::fill(y.begin(), y.end(), base);
        for (NodeId i = 0; i < n; ++i) {
            if (g.out_degree(i) == 0) continue;
            const double share = damping * x[i] / static_cast<double>(g.out_degree(i));
            for (NodeId j : g.out_neighbors(i)) y[j] += share;
        }
        const double residual = l1_diff(y, x);
        x.swap(y);
        if (residual <= opt.tol) {
            normalize_sum(x);
            CentralityVector out;
            out.measure = Measure::PageRank;
            out.nodes.resize(n);
            std::iota(out.nodes.begin(), out.nodes.end(), 0);
            out.scores = std::move(x);
            return out;
        }
    }
    throw ConvergenceError("pagerank did not converge", l1_diff(x, y), opt.max_iter);
}

namespace {

// Accumulated row-sum series sum_k x_0 (cT)^k with x_0 = ones. Stops when
// the increment is below tol relative to the accumulated mass.
CentralityVector neumann_scores(const TransitionBlock& T, double damping, Measure tag,
                                const SolverOptions& opt, const char* what) {
    const std::size_t n = T.size();
    std::vector<double> x(n, 1.0), acc(n, 1.0), y(n);
    for (std::size_t it = 1; it <= opt.max_iter; ++it) {
        T.apply_left(x, y);
        if (damping != 1.0) {
            for (double& v : y) v *= damping;
        }
        double inc = 0.0, total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            acc[i] += y[i];
            inc += y[i];
            total += acc[i];
        }
        x.swap(y);
        if (inc <= opt.tol * total) {
            normalize_sum(acc);
            CentralityVector out;
            out.measure = tag;
            out.nodes.resize(n);
            std::iota(out.nodes.begin(), out.nodes.end(), 0);
            out.scores = std::move(acc);
            return out;
        }
    }
    throw ConvergenceError(std::string(what) +
                               ": occupation series did not settle (dominant eigenvalue too "
                               "close to one); use the dense path for small cores",
                           l1_norm(x), opt.max_iter);
}

} // namespace

CentralityVector pseudo_stationary(const TransitionBlock& T, SolverOptions opt) {
    bool leaks = false;
    for (std::size_t i = 0; i < T.size() && !leaks; ++i) leaks = T.exit_sum(i) > 1e-15;
    if (!leaks)
        throw ValidationError("pseudo_stationary requires a strictly substochastic block "
                              "(no exit mass found)");
    return neumann_scores(T, 1.0, Measure::PiHat, opt, "pseudo_stationary");
}

TransitionBlock bar_transition(const TransitionBlock& T) { return T.conditional(); }

CentralityVector bar_stationary(const TransitionBlock& T_bar, SolverOptions opt) {
    if (!T_bar.is_stochastic(1e-9))
        throw ValidationError("bar_stationary expects a row-stochastic kernel");
    auto res = power_iteration(
        T_bar.size(),
        [&](std::span<const double> x, std::span<double> y) { T_bar.apply_left(x, y); }, opt);
    if (!res.converged)
        throw ConvergenceError("stationary iteration did not converge", res.residual,
                               res.iterations);
    CentralityVector out;
    out.measure = Measure::PiBar;
    out.nodes.resize(T_bar.size());
    std::iota(out.nodes.begin(), out.nodes.end(), 0);
    out.scores = std::move(res.vec);
    return out;
}

SpectralResult quasi_stationary(const TransitionBlock& T, SolverOptions opt) {
    auto res = power_iteration(
        T.size(), [&](std::span<const double> x, std::span<double> y) { T.apply_left(x, y); },
        opt);
    if (!res.converged)
        throw ConvergenceError("quasi-stationary iteration did not converge", res.residual,
                               res.iterations);
    SpectralResult out;
    out.lambda1 = std::min(res.lambda, 1.0);  // rounding can overshoot the Perron bound
    out.iterations = res.iterations;
    out.residual = res.residual;
    out.pi_tilde.measure = Measure::PiTilde;
    out.pi_tilde.nodes.resize(T.size());
    std::iota(out.pi_tilde.nodes.begin(), out.pi_tilde.nodes.end(), 0);
    out.pi_tilde.scores = std::move(res.vec);
    return out;
}

double lambda_from_exit(const CentralityVector& pi_tilde, const TransitionBlock& T) {
    if (pi_tilde.size() != T.size())
        throw ValidationError("lambda_from_exit: vector and block sizes differ");
    double exit = 0.0;
    for (std::size_t i = 0; i < T.size(); ++i) exit += pi_tilde.scores[i] * T.exit_sum(i);
    return 1.0 - exit;
}

RightVectors right_eigenvector(const TransitionBlock& T, const CentralityVector& pi_bar,
                               const CentralityVector& pi_tilde, SolverOptions opt) {
    if (pi_bar.size() != T.size() || pi_tilde.size() != T.size())
        throw ValidationError("right_eigenvector: domain mismatch");
    auto res = power_iteration(
        T.size(), [&](std::span<const double> x, std::span<double> y) { T.apply_right(x, y); },
        opt);
    if (!res.converged)
        throw ConvergenceError("right eigenvector iteration did not converge", res.residual,
                               res.iterations);
    const std::size_t n = T.size();
    RightVectors out;
    out.iterations = res.iterations;
    out.residual = res.residual;
    out.u = std::move(res.vec);  // sums to 1 here
    for (double& v : out.u) v *= static_cast<double>(n);

    double pb = 0.0, pt = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        pb += pi_bar.scores[i] * out.u[i];
        pt += pi_tilde.scores[i] * out.u[i];
    }
    if (pb <= 0.0 || pt <= 0.0)
        throw ValidationError("right eigenvector has nonpositive stationary mean");
    out.u_bar = out.u;
    for (double& v : out.u_bar) v /= pb;
    out.u_tilde = out.u;
    for (double& v : out.u_tilde) v /= pt;
    return out;
}

TwistedKernel::TwistedKernel(TransitionBlock base, std::vector<double> u, double lambda1)
    : base_(std::move(base)), u_(std::move(u)), lambda1_(lambda1) {
    if (u_.size() != base_.size()) throw ValidationError("twisted kernel: u has wrong size");
    if (!(lambda1_ > 0.0 && lambda1_ <= 1.0 + 1e-9))
        throw ValidationError("twisted kernel: eigenvalue must lie in (0, 1]");
    for (double v : u_) {
        if (!(v > 0.0)) throw ValidationError("twisted kernel: u must be strictly positive");
    }
}

double TwistedKernel::entry(std::size_t i, std::size_t j) const {
    return base_.entry(i, j) * u_[j] / (lambda1_ * u_[i]);
}

void TwistedKernel::apply_left(std::span<const double> x, std::span<double> y) const {
    // (x Ť)_j = (sum_i (x_i / u_i) T_ij) * u_j / lambda1
    std::vector<double> scaled(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) scaled[i] = x[i] / u_[i];
    base_.apply_left(scaled, y);
    for (std::size_t j = 0; j < y.size(); ++j) y[j] *= u_[j] / lambda1_;
}

std::vector<double> TwistedKernel::row_sums() const {
    const std::size_t n = size();
    std::vector<double> tu(n), out(n);
    base_.apply_right(u_, tu);
    for (std::size_t i = 0; i < n; ++i) out[i] = tu[i] / (lambda1_ * u_[i]);
    return out;
}

std::vector<double> TwistedKernel::dense_rowmajor(std::size_t cap) const {
    auto m = base_.dense_rowmajor(cap);
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i * n + j] *= u_[j] / (lambda1_ * u_[i]);
    }
    return m;
}

TwistedKernel twisted_kernel(const TransitionBlock& T, const std::vector<double>& u,
                             double lambda1) {
    return TwistedKernel(T, u, lambda1);
}

CentralityVector check_stationary(const CentralityVector& pi_tilde,
                                  const std::vector<double>& u_tilde) {
    if (pi_tilde.size() != u_tilde.size())
        throw ValidationError("check_stationary: domain mismatch");
    double dot = 0.0;
    for (std::size_t i = 0; i < u_tilde.size(); ++i) dot += pi_tilde.scores[i] * u_tilde[i];
    if (std::abs(dot - 1.0) > 1e-6)
        throw ValidationError("check_stationary: u_tilde is not normalized against pi_tilde");
    CentralityVector out;
    out.measure = Measure::PiCheck;
    out.nodes = pi_tilde.nodes;
    out.scores.resize(u_tilde.size());
    for (std::size_t i = 0; i < u_tilde.size(); ++i)
        out.scores[i] = pi_tilde.scores[i] * u_tilde[i];
    normalize_sum(out.scores);  // exact up to rounding already
    return out;
}

CentralityVector pagerank_escc(const TransitionBlock& T, double damping, SolverOptions opt) {
    if (!(damping > 0.0 && damping < 1.0))
        throw ValidationError("damping must lie strictly inside (0, 1)");
    auto out = neumann_scores(T, damping, Measure::PiHat, opt, "pagerank_escc");
    return out;
}

CentralityVector with_domain(CentralityVector v, const Decomposition& d) {
    if (v.size() != d.escc.size())
        throw ValidationError("with_domain: vector does not match the core");
    v.nodes = d.escc;
    return v;
}

} // namespace quasirank
