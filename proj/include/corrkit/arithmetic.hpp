#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "corrkit/correlations.hpp"

namespace corrkit {

using u128 = unsigned __int128;

/// Strictly increasing list of positive integers.
class IntegerSet {
public:
    explicit IntegerSet(std::vector<std::uint64_t> elements);
    /// {1, ..., n}
    static IntegerSet range(std::uint64_t n);

    std::size_t size() const { return elements_.size(); }
    std::span<const std::uint64_t> elements() const { return elements_; }
    std::uint64_t operator[](std::size_t i) const { return elements_[i]; }
    bool contains(std::uint64_t v) const;
    IntegerSet prefix(std::size_t n) const;

private:
    std::vector<std::uint64_t> elements_;
};

/// E(A) = #{(a, b, c, d) in A^4 : a + b = c + d}.
u128 additive_energy(const IntegerSet& a);

/// T(A) = #{(a, b, c) in A^3 : a - b = b - c != 0}; ordered, so every
/// progression is counted twice.
u128 three_ap_count(const IntegerSet& a);

struct MetricExperimentReport {
    double s = 0.0;
    std::size_t n = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased; 0 for a single trial
    double std_error = 0.0;
    double lower_bound = 0.0;  // 2 s T(A_N) / N^2
    double fraction_above = 0.0;  // share of samples with R_3 > 4 s^2
    double energy_ratio = 0.0;  // E(A_N) / N^3
    double ap_ratio = 0.0;      // T(A_N) / N^2
};

/// Samples alpha uniformly (trial t uses stream (seed, t)) and evaluates
/// R_3(s, s, N) for ({a_n alpha})_{n <= N}. Throws std::invalid_argument
/// when N > |A|, s > N/2 or N * trials > 10^9.
MetricExperimentReport metric_r3_experiment(const IntegerSet& a, double s, std::size_t n,
                                            std::size_t trials, std::uint64_t seed);

struct SampleStats {
    double mean = 0.0;
    double variance = 0.0;
    std::vector<double> samples;
};

/// R_k(1_B, N) over `trials` independent uniform samples of length N.
/// Trial t draws its points from the seed CounterStream(seed, t + 1).bits(0).
SampleStats random_correlation_stats(const BoxVector& boxes, std::size_t n, std::size_t trials,
                                     std::uint64_t seed);

/// Unbiased sample mean and variance.
SampleStats summarize(std::vector<double> samples);

}  // namespace corrkit
