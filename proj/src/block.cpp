#include "quasirank/block.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quasirank/errors.hpp"

namespace quasirank {

TransitionBlock TransitionBlock::from_triplets(
    std::size_t n, const std::vector<std::tuple<std::uint32_t, std::uint32_t, double>>& triplets) {
    std::vector<std::vector<Entry>> rows(n);
    for (const auto& [i, j, v] : triplets) {
        if (i >= n || j >= n) throw ValidationError("block triplet index out of range");
        if (v < 0.0) throw ValidationError("block entries must be nonnegative");
        if (v > 0.0) rows[i].push_back({j, v});
    }
    return from_rows(n, std::move(rows), std::vector<std::uint8_t>(n, 0));
}

TransitionBlock TransitionBlock::from_rows(std::size_t ambient_n,
                                           std::vector<std::vector<Entry>> rows,
                                           std::vector<std::uint8_t> uniform_rows) {
    TransitionBlock b;
    const std::size_t n = rows.size();
    b.ambient_n_ = ambient_n;
    b.uniform_ = std::move(uniform_rows);
    b.scale_.assign(n, 1.0);
    b.base_row_sum_.assign(n, 0.0);
    b.offsets_.assign(n + 1, 0);

    const double uniform_value = ambient_n > 0 ? 1.0 / static_cast<double>(ambient_n) : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (b.uniform_[i]) {
            if (!rows[i].empty())
                throw InternalError("uniform row must not carry explicit entries");
            b.base_row_sum_[i] = uniform_value * static_cast<double>(n);
            continue;
        }
        std::sort(rows[i].begin(), rows[i].end(),
                  [](const Entry& a, const Entry& c) { return a.col < c.col; });
        double sum = 0.0;
        for (const Entry& e : rows[i]) sum += e.value;
        if (sum > 1.0 + 1e-12)
            throw ValidationError("row " + std::to_string(i) + " sums to " + std::to_string(sum) +
                                  " > 1: not substochastic");
        b.base_row_sum_[i] = sum;
        b.offsets_[i + 1] = rows[i].size();
    }
    for (std::size_t i = 0; i < n; ++i) b.offsets_[i + 1] += b.offsets_[i];
    b.entries_.reserve(b.offsets_[n]);
    for (auto& r : rows) {
        b.entries_.insert(b.entries_.end(), r.begin(), r.end());
    }
    return b;
}

bool TransitionBlock::is_stochastic(double tol) const {
    for (std::size_t i = 0; i < size(); ++i) {
        if (std::abs(row_sum(i) - 1.0) > tol) return false;
    }
    return true;
}

double TransitionBlock::entry(std::size_t i, std::size_t j) const {
    if (uniform_[i]) return scale_[i] / static_cast<double>(ambient_n_);
    auto r = row(i);
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const Entry& e, std::size_t col) { return e.col < col; });
    if (it != r.end() && it->col == j) return scale_[i] * it->value;
    return 0.0;
}

void TransitionBlock::apply_left(std::span<const double> x, std::span<double> y) const {
    const std::size_t n = size();
    std::fill(y.begin(), y.end(), 0.0);
    double uniform_mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (uniform_[i]) {
            uniform_mass += x[i] * scale_[i];
            continue;
        }
        const double xi = x[i] * scale_[i];
        if (xi == 0.0) continue;
        for (const Entry& e : row(i)) y[e.col] += xi * e.value;
    }
    if (uniform_mass != 0.0) {
        const double add = uniform_mass / static_cast<double>(ambient_n_);
        for (std::size_t j = 0; j < n; ++j) y[j] += add;
    }
}

void TransitionBlock::apply_right(std::span<const double> v, std::span<double> y) const {
    const std::size_t n = size();
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) total += v[j];
    for (std::size_t i = 0; i < n; ++i) {
        if (uniform_[i]) {
            y[i] = scale_[i] * total / static_cast<double>(ambient_n_);
            continue;
        }
        double acc = 0.0;
        for (const Entry& e : row(i)) acc += e.value * v[e.col];
        y[i] = scale_[i] * acc;
    }
}

std::vector<double> TransitionBlock::row_sums() const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = row_sum(i);
    return out;
}

std::vector<double> TransitionBlock::exit_sums() const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = exit_sum(i);
    return out;
}

TransitionBlock TransitionBlock::conditional() const {
    TransitionBlock b = *this;
    for (std::size_t i = 0; i < size(); ++i) {
        if (base_row_sum_[i] <= 0.0)
            throw ValidationError("conditional kernel undefined: row " + std::to_string(i) +
                                  " keeps no mass in the core");
        b.scale_[i] = 1.0 / base_row_sum_[i];
    }
    return b;
}

TransitionBlock TransitionBlock::scaled_exits(double s) const {
    if (s < 0.0 || s > 1.0) throw ValidationError("exit scale must lie in [0, 1]");
    TransitionBlock b = *this;
    for (std::size_t i = 0; i < size(); ++i) {
        const double rs = scale_[i] * base_row_sum_[i];
        if (base_row_sum_[i] <= 0.0)
            throw ValidationError("exit scaling undefined on a zero row");
        b.scale_[i] = ((1.0 - s) + s * rs) * scale_[i] / rs;
    }
    return b;
}

std::vector<double> TransitionBlock::dense_rowmajor(std::size_t cap) const {
    const std::size_t n = size();
    if (n > cap)
        throw ValidationError("dense copy refused: core has " + std::to_string(n) +
                              " nodes, cap is " + std::to_string(cap));
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (uniform_[i]) {
            const double v = scale_[i] / static_cast<double>(ambient_n_);
            for (std::size_t j = 0; j < n; ++j) m[i * n + j] = v;
        } else {
            for (const Entry& e : row(i)) m[i * n + e.col] = scale_[i] * e.value;
        }
    }
    return m;
}

} // namespace quasirank
