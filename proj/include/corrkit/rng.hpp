#pragma once

#include <cstdint>
#include <limits>

namespace corrkit {

/// Counter-based SplitMix64 stream.
///
/// Output i is mix64(key + (i + 1) * 0x9E3779B97F4A7C15), where mix64 is the
/// SplitMix64 finalizer and key is derived from (seed, stream). Any term can
/// be computed directly from its index, so a Monte Carlo trial or a slice of
/// a sequence yields the same numbers no matter how work is scheduled.
class CounterStream {
public:
    explicit CounterStream(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t bits(std::uint64_t index) const;
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform(std::uint64_t index) const;

    static std::uint64_t mix64(std::uint64_t z);

private:
    std::uint64_t key_;
};

/// Sequential view over a CounterStream; models UniformRandomBitGenerator.
class StreamRng {
public:
    using result_type = std::uint64_t;

    explicit StreamRng(std::uint64_t seed, std::uint64_t stream = 0) : stream_(seed, stream) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return stream_.bits(counter_++); }
    double uniform() { return stream_.uniform(counter_++); }
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    CounterStream stream_;
    std::uint64_t counter_ = 0;
};

}  // namespace corrkit
