#pragma once

#include <cstdint>

namespace quasirank {

/// Counter-based splittable PRNG built on the splitmix64 permutation.
///
/// A stream is keyed by (seed, stream index): the initial state is the
/// splitmix64 mix of `seed ^ (stream * 0x9E3779B97F4A7C15)`, and each draw
/// advances the state by the splitmix64 increment and returns the mixed
/// value. Streams keyed by distinct indices are statistically independent,
/// so batches (one stream per walk) can run in any order, or in parallel,
/// and still reproduce bit-identical results for a given seed.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : state_(mix(seed ^ (stream * GOLDEN + GOLDEN))) {}

    std::uint64_t next_u64() {
        state_ += GOLDEN;
        return mix(state_);
    }

    /// Uniform double in [0, 1), 53 mantissa bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound). bound must be nonzero.
    std::uint64_t next_below(std::uint64_t bound) {
        // multiply-shift; bias is negligible for desk-scale bounds
        return static_cast<std::uint64_t>(next_double() * static_cast<double>(bound));
    }

private:
    static constexpr std::uint64_t GOLDEN = 0x9E3779B97F4A7C15ull;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace quasirank
