#pragma once

#include <cstddef>
#include <vector>

#include "corrkit/point_sequence.hpp"

namespace corrkit {

/// Empirical masses of the dyadic intervals [i/2^r, (i+1)/2^r).
struct DyadicProfile {
    int level = 0;
    std::vector<double> masses;
};

/// (1/N) #{n : x_n <= x}, 0 <= x <= 1.
double ecdf(const PointSequence& seq, double x);

/// Requires 0 <= r <= 30.
DyadicProfile dyadic_profile(const PointSequence& seq, int r);

/// sum_i 2^{r(k-1)} masses[i]^k
double density_moment_lower_bound(const DyadicProfile& profile, int k);
double density_moment_lower_bound(const PointSequence& seq, int r, int k);

/// max_i max(i/N - x_(i), x_(i) - (i-1)/N) over the sorted points.
double star_discrepancy(const PointSequence& seq);

}  // namespace corrkit
