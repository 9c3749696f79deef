#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace quasirank {

/// Sparse row-substochastic transition block over a node core of size n_T
/// embedded in an ambient graph of size n. Rows derived from dangling nodes
/// are uniform 1/n rows and stay virtual: they carry no stored entries and
/// are applied as a rank-one update. Each row additionally carries a scale
/// factor, which is how the row-renormalized kernel and exit-scaled variants
/// share one structure:
///
///   raw block        scale_i = 1
///   renormalized     scale_i = 1 / row_sum_i        (rows sum to 1)
///   exits scaled s   scale_i = ((1-s) + s*row_sum_i) / row_sum_i
///
/// The exit mass of a row is always 1 - row_sum(i): rows of the full
/// transition matrix sum to one, so whatever a row does not keep in the
/// core leaves it.
class TransitionBlock {
public:
    struct Entry {
        std::uint32_t col;
        double value;  // unscaled
    };

    TransitionBlock() = default;

    /// Explicit block from (row, col, value) triplets; no uniform rows.
    /// Validates value >= 0 and row sums <= 1 + 1e-12.
    static TransitionBlock from_triplets(
        std::size_t n, const std::vector<std::tuple<std::uint32_t, std::uint32_t, double>>& triplets);

    /// Assembly interface used by the decomposition: per-row entry lists
    /// plus the set of uniform (dangling-derived) rows.
    static TransitionBlock from_rows(std::size_t ambient_n,
                                     std::vector<std::vector<Entry>> rows,
                                     std::vector<std::uint8_t> uniform_rows);

    std::size_t size() const { return uniform_.size(); }
    std::size_t ambient_size() const { return ambient_n_; }
    std::size_t entry_count() const { return entries_.size(); }

    bool is_uniform_row(std::size_t i) const { return uniform_[i] != 0; }
    double row_scale(std::size_t i) const { return scale_[i]; }
    double row_sum(std::size_t i) const { return scale_[i] * base_row_sum_[i]; }
    double exit_sum(std::size_t i) const { return 1.0 - row_sum(i); }
    bool is_stochastic(double tol = 1e-12) const;

    std::span<const Entry> row(std::size_t i) const {
        return {entries_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }

    double entry(std::size_t i, std::size_t j) const;

    /// y = x * T (left action, row vector times block).
    void apply_left(std::span<const double> x, std::span<double> y) const;
    /// y = T * v (right action on a column vector).
    void apply_right(std::span<const double> v, std::span<double> y) const;

    std::vector<double> row_sums() const;
    std::vector<double> exit_sums() const;

    /// Row-renormalized kernel: every row rescaled to sum one.
    /// Throws ValidationError on a zero row sum.
    TransitionBlock conditional() const;

    /// Variant with every exit row of the complement block scaled by s,
    /// i.e. (1-s) * conditional() + s * this. s = 1 is the block itself,
    /// s -> 0 removes all leakage.
    TransitionBlock scaled_exits(double s) const;

    /// Dense row-major copy; guarded to cores of at most `cap` nodes.
    std::vector<double> dense_rowmajor(std::size_t cap = 2000) const;

private:
    std::size_t ambient_n_ = 0;
    std::vector<std::size_t> offsets_{0};
    std::vector<Entry> entries_;
    std::vector<std::uint8_t> uniform_;
    std::vector<double> scale_;
    std::vector<double> base_row_sum_;
};

} // namespace quasirank
