#include "quasirank/rank_compare.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "quasirank/errors.hpp"

namespace quasirank {

Ranking Ranking::of(const std::vector<double>& scores) {
    Ranking r;
    const std::size_t n = scores.size();
    r.order.resize(n);
    std::iota(r.order.begin(), r.order.end(), 0);
    std::sort(r.order.begin(), r.order.end(), [&](std::size_t x, std::size_t y) {
        if (scores[x] != scores[y]) return scores[x] > scores[y];
        return x < y;
    });
    r.group_of.assign(n, 0);
    r.rank_.assign(n, 0);
    std::size_t group = 0;
    for (std::size_t k = 0; k < n; ++k) {
        // a new group starts when the gap to the previous sorted score
        // exceeds the tolerance; groups are maximal under this chaining
        if (k > 0 && scores[r.order[k - 1]] - scores[r.order[k]] > TIE_EPS) ++group;
        r.group_of[r.order[k]] = group;
        r.rank_[r.order[k]] = k;
    }
    r.group_count = n == 0 ? 0 : group + 1;
    r.group_sizes.assign(r.group_count, 0);
    for (std::size_t g : r.group_of) ++r.group_sizes[g];
    return r;
}

std::size_t Ranking::rank_of(std::size_t position) const { return rank_[position] + 1; }

namespace {

// pairs i < j with v[i] > v[j], counted by merge sort
std::uint64_t exchange_count(std::vector<std::uint32_t>& v) {
    const std::size_t n = v.size();
    std::vector<std::uint32_t> buf(n);
    std::uint64_t count = 0;
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
            const std::size_t mid = lo + width;
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t a = lo, b = mid, w = lo;
            while (a < mid && b < hi) {
                if (v[b] < v[a]) {
                    count += mid - a;
                    buf[w++] = v[b++];
                } else {
                    buf[w++] = v[a++];
                }
            }
            while (a < mid) buf[w++] = v[a++];
            while (b < hi) buf[w++] = v[b++];
            std::copy(buf.begin() + lo, buf.begin() + hi, v.begin() + lo);
        }
    }
    return count;
}

std::uint64_t tie_pairs(std::vector<std::uint32_t> v) {
    std::sort(v.begin(), v.end());
    std::uint64_t total = 0, run = 1;
    for (std::size_t k = 1; k <= v.size(); ++k) {
        if (k < v.size() && v[k] == v[k - 1]) {
            ++run;
        } else {
            total += run * (run - 1) / 2;
            run = 1;
        }
    }
    return total;
}

} // namespace

TauResult kendall_tau(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw ValidationError("kendall_tau: domain mismatch");
    const std::size_t n = a.size();
    if (n < 2) throw ValidationError("kendall_tau needs at least two nodes");

    // work on tie-group ids so near-equal scores compare as exact ties
    const Ranking ra = Ranking::of(a);
    const Ranking rb = Ranking::of(b);
    std::vector<std::size_t> items(n);
    std::iota(items.begin(), items.end(), 0);
    std::sort(items.begin(), items.end(), [&](std::size_t x, std::size_t y) {
        if (ra.group_of[x] != ra.group_of[y]) return ra.group_of[x] < ra.group_of[y];
        return rb.group_of[x] < rb.group_of[y];
    });

    std::vector<std::uint32_t> ga(n), gb(n), joint_b(n);
    for (std::size_t k = 0; k < n; ++k) {
        ga[k] = static_cast<std::uint32_t>(ra.group_of[items[k]]);
        gb[k] = static_cast<std::uint32_t>(rb.group_of[items[k]]);
    }
    const std::uint64_t n0 = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    std::uint64_t n1 = 0, n3 = 0;
    {
        std::uint64_t run_a = 1, run_ab = 1;
        for (std::size_t k = 1; k <= n; ++k) {
            const bool same_a = k < n && ga[k] == ga[k - 1];
            const bool same_ab = same_a && gb[k] == gb[k - 1];
            if (same_a) ++run_a;
            else {
                n1 += run_a * (run_a - 1) / 2;
                run_a = 1;
            }
            if (same_ab) ++run_ab;
            else {
                n3 += run_ab * (run_ab - 1) / 2;
                run_ab = 1;
            }
        }
    }
    const std::uint64_t n2 = tie_pairs(gb);
    std::vector<std::uint32_t> seq = gb;
    const std::uint64_t discordant = exchange_count(seq);

    const double s = static_cast<double>(n0) - static_cast<double>(n1) -
                     static_cast<double>(n2) + static_cast<double>(n3) -
                     2.0 * static_cast<double>(discordant);

    TauResult out;
    if (n1 == 0 && n2 == 0) {
        out.variant = TauVariant::TauA;
        out.tau = s / static_cast<double>(n0);
    } else {
        out.variant = TauVariant::TauB;
        const double denom = std::sqrt(static_cast<double>(n0 - n1)) *
                             std::sqrt(static_cast<double>(n0 - n2));
        out.tau = denom > 0.0 ? s / denom : 0.0;
    }
    return out;
}

TauMatrix tau_table(const std::vector<CentralityVector>& vectors) {
    const std::size_t m = vectors.size();
    for (std::size_t k = 1; k < m; ++k) {
        if (vectors[k].nodes != vectors[0].nodes)
            throw ValidationError("tau_table: vectors do not share a domain");
    }
    TauMatrix t;
    t.measures.reserve(m);
    for (const auto& v : vectors) t.measures.emplace_back(measure_name(v.measure));
    t.values.assign(m, std::vector<double>(m, 1.0));
    t.variants.assign(m, std::vector<TauVariant>(m, TauVariant::TauA));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const TauResult r = kendall_tau(vectors[i].scores, vectors[j].scores);
            t.values[i][j] = t.values[j][i] = r.tau;
            t.variants[i][j] = t.variants[j][i] = r.variant;
        }
    }
    return t;
}

std::vector<std::pair<double, double>> damping_sweep(const TransitionBlock& T,
                                                     const std::vector<double>& c_grid,
                                                     SolverOptions opt) {
    const SpectralResult qs = quasi_stationary(T, opt);
    std::vector<std::pair<double, double>> out;
    out.reserve(c_grid.size());
    for (double c : c_grid) {
        const CentralityVector pr = pagerank_escc(T, c, opt);
        out.emplace_back(c, kendall_tau(qs.pi_tilde.scores, pr.scores).tau);
    }
    return out;
}

std::vector<RankShift> divergence_report(const CentralityVector& reference,
                                         const CentralityVector& quasi, std::size_t top_k) {
    if (reference.nodes != quasi.nodes)
        throw ValidationError("divergence_report: vectors do not share a domain");
    const std::size_t n = reference.size();
    if (top_k > n) {
        std::cerr << "warning: top-k " << top_k << " clamped to domain size " << n << "\n";
        top_k = n;
    }
    const Ranking rr = Ranking::of(reference.scores);
    const Ranking rq = Ranking::of(quasi.scores);
    std::vector<RankShift> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i].node = reference.nodes[i];
        out[i].rank_reference = rr.rank_of(i);
        out[i].rank_quasi = rq.rank_of(i);
        out[i].delta = static_cast<long long>(out[i].rank_reference) -
                       static_cast<long long>(out[i].rank_quasi);
    }
    std::sort(out.begin(), out.end(), [](const RankShift& x, const RankShift& y) {
        if (x.delta != y.delta) return x.delta > y.delta;
        return x.node < y.node;
    });
    for (std::size_t k = 0; k < top_k; ++k) out[k].flagged = true;
    return out;
}

} // namespace quasirank
