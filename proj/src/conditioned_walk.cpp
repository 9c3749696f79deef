#include "quasirank/conditioned_walk.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quasirank/errors.hpp"
#include "quasirank/rng.hpp"

namespace quasirank {

std::vector<std::vector<double>> survival_vectors(const TransitionBlock& T, std::size_t N) {
    std::vector<std::vector<double>> out;
    out.reserve(N + 1);
    out.emplace_back(T.size(), 1.0);
    for (std::size_t k = 1; k <= N; ++k) {
        std::vector<double> next(T.size());
        T.apply_right(out.back(), next);
        out.push_back(std::move(next));
    }
    return out;
}

ConditionedKernel::ConditionedKernel(TransitionBlock base, std::size_t N)
    : base_(std::move(base)), N_(N) {
    if (N == 0) throw ValidationError("conditioned kernel needs a horizon of at least 1");
    auto s = survival_vectors(base_, N);
    s_prev_ = std::move(s[N - 1]);
    s_N_ = std::move(s[N]);
    for (std::size_t i = 0; i < s_N_.size(); ++i) {
        if (s_N_[i] <= 0.0)
            throw ValidationError("no survival at horizon " + std::to_string(N) +
                                  " from core node " + std::to_string(i));
    }
}

double ConditionedKernel::entry(std::size_t i, std::size_t j) const {
    return base_.entry(i, j) * s_prev_[j] / s_N_[i];
}

std::vector<double> ConditionedKernel::row(std::size_t i) const {
    std::vector<double> out(size(), 0.0);
    if (base_.is_uniform_row(i)) {
        const double v = base_.row_scale(i) / static_cast<double>(base_.ambient_size());
        for (std::size_t j = 0; j < size(); ++j) out[j] = v * s_prev_[j] / s_N_[i];
    } else {
        for (const auto& e : base_.row(i))
            out[e.col] = base_.row_scale(i) * e.value * s_prev_[e.col] / s_N_[i];
    }
    return out;
}

std::vector<double> ConditionedKernel::row_sums() const {
    std::vector<double> ts(size());
    base_.apply_right(s_prev_, ts);
    std::vector<double> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = ts[i] / s_N_[i];
    return out;
}

std::vector<double> ConditionedKernel::dense_rowmajor(std::size_t cap) const {
    const std::size_t n = size();
    if (n > cap) throw ValidationError("dense conditioned kernel refused beyond the cap");
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        auto r = row(i);
        std::copy(r.begin(), r.end(), m.begin() + i * n);
    }
    return m;
}

ConditionedKernel conditioned_kernel(const TransitionBlock& T, std::size_t N) {
    return ConditionedKernel(T, N);
}

double kernel_limit_gap(const TransitionBlock& T, std::size_t N, const TwistedKernel& twisted) {
    if (T.size() != twisted.size()) throw ValidationError("kernel_limit_gap: size mismatch");
    ConditionedKernel ck(T, N);
    double gap = 0.0;
    for (std::size_t i = 0; i < T.size(); ++i) {
        if (T.is_uniform_row(i)) {
            for (std::size_t j = 0; j < T.size(); ++j)
                gap = std::max(gap, std::abs(ck.entry(i, j) - twisted.entry(i, j)));
        } else {
            for (const auto& e : T.row(i))
                gap = std::max(gap, std::abs(ck.entry(i, e.col) - twisted.entry(i, e.col)));
        }
    }
    return gap;
}

namespace {

// Sample one step of the full row law from core node i. Returns the next
// core node, or npos when the step left the core (absorption).
constexpr std::size_t NPOS = static_cast<std::size_t>(-1);

std::size_t sample_step(const TransitionBlock& T, std::size_t i, double roll) {
    if (T.is_uniform_row(i)) {
        // uniform 1/n over the ambient graph; the core occupies the first
        // row_sum(i) of the unit mass in local column order
        const double per = T.row_scale(i) / static_cast<double>(T.ambient_size());
        const auto idx = static_cast<std::size_t>(roll / per);
        return idx < T.size() ? idx : NPOS;
    }
    double acc = 0.0;
    for (const auto& e : T.row(i)) {
        acc += T.row_scale(i) * e.value;
        if (roll < acc) return e.col;
    }
    return NPOS;
}

} // namespace

std::vector<WalkEstimate> simulate_conditioned(const TransitionBlock& T, std::size_t start,
                                               std::size_t horizon, std::uint64_t samples,
                                               std::uint64_t seed) {
    if (samples == 0) throw ValidationError("samples must be at least 1");
    if (horizon == 0) throw ValidationError("horizon must be at least 1");
    if (start >= T.size()) throw ValidationError("start node outside the core");

    std::vector<std::uint64_t> hits(T.size(), 0);
    std::uint64_t survivors = 0;
    for (std::uint64_t w = 0; w < samples; ++w) {
        CounterRng rng(seed, w);
        std::size_t pos = start;
        std::size_t first = NPOS;
        bool alive = true;
        for (std::size_t step = 0; step < horizon; ++step) {
            pos = sample_step(T, pos, rng.next_double());
            if (pos == NPOS) {
                alive = false;
                break;
            }
            if (step == 0) first = pos;
        }
        if (alive) {
            ++survivors;
            ++hits[first];
        }
    }
    if (survivors == 0)
        throw StatisticalError("no walk survived the horizon; raise samples or lower the "
                               "horizon");

    std::vector<WalkEstimate> out;
    for (std::size_t j = 0; j < T.size(); ++j) {
        if (T.entry(start, j) == 0.0 && hits[j] == 0) continue;
        WalkEstimate e;
        e.start = start;
        e.target = j;
        e.horizon = horizon;
        e.samples = samples;
        e.survivors = survivors;
        e.hits = hits[j];
        e.estimate = static_cast<double>(hits[j]) / static_cast<double>(survivors);
        e.std_error =
            std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(survivors));
        e.seed = seed;
        out.push_back(e);
    }
    return out;
}

} // namespace quasirank
