#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "corrkit/point_sequence.hpp"

namespace corrkit {

/// F(t, s, N) as a circular step function: values[i] holds on
/// [breakpoints[i], breakpoints[i+1]), the last segment wrapping to
/// breakpoints[0] + 1. Without any endpoint (every ball covers the
/// circle) there is a single breakpoint at 0.
struct SweepProfile {
    std::vector<double> breakpoints;
    std::vector<std::int64_t> values;

    double segment_length(std::size_t i) const;
    /// Integral of F over [0, 1).
    double mass() const;
    std::int64_t max_value() const;
};

struct MomentReport {
    int k = 0;
    double s = 0.0;
    std::size_t n = 0;
    double i_k = 0.0;       // factorial moment
    double i_k_star = 0.0;  // power moment
};

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// F(t, s, N) = #{n : ||x_n - t|| <= s/(2N)}. Requires 0 < s <= N.
std::size_t f_count(const PointSequence& seq, double t, double s);

/// Step function of F built from the 2N arc endpoints. Coincident
/// endpoints are merged into one breakpoint. Requires 0 < s <= N.
SweepProfile sweep_profile(const PointSequence& seq, double s);

/// F(t) read off a profile.
std::int64_t profile_value(const SweepProfile& profile, double t);

/// I_k = int F(F-1)...(F-k+1) dt and I_k^* = int F^k dt, integrated
/// exactly over the profile. Throws std::logic_error if the profile mass
/// deviates from s by more than 1e-12 N.
MomentReport moments(const PointSequence& seq, double s, int k);
MomentReport moments(const SweepProfile& profile, std::size_t n, double s, int k);

/// g_s^(k)(y) = {s - max_i {y_i}^+ - max_i {-y_i}^+}^+, y of length k - 1.
double g_test(int k, double s, std::span<const double> y);

/// Monte Carlo estimate of the integral of g_s^(k) over [-s, s]^{k-1}.
McEstimate g_integral_mc(int k, double s, std::size_t samples, std::uint64_t seed);

/// R_k(g_s^(k), N), which equals I_k(s, N) when N >= 4s. Throws
/// std::invalid_argument for N < 4s.
double i_k_via_correlation(const PointSequence& seq, double s, int k);

/// sum_{j=1}^k S(k, j) T_j with T_1 = s and T_j = R_j(g_s^(j), N), the
/// correlation-side expression of I_k^*. Requires N >= 4s.
double ik_star_via_correlations(const PointSequence& seq, double s, int k);

/// sum_{j=1}^k S(k, j) s^j
double bell_prediction(int k, double s);

}  // namespace corrkit
