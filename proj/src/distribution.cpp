#include "corrkit/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "corrkit/parallel.hpp"

namespace corrkit {

double ecdf(const PointSequence& seq, double x) {
    if (!(0.0 <= x && x <= 1.0)) throw std::invalid_argument("ecdf: x must lie in [0, 1]");
    const auto sorted = seq.sorted();
    const auto count = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
    return static_cast<double>(count) / static_cast<double>(seq.size());
}

DyadicProfile dyadic_profile(const PointSequence& seq, int r) {
    if (r < 0 || r > 30) throw std::invalid_argument("dyadic_profile: level must lie in [0, 30]");
    const std::size_t buckets = std::size_t{1} << r;
    std::vector<std::size_t> counts(buckets, 0);
    // Scaling by 2^r is exact, so floor gives the half-open bucket index.
    for (double x : seq.points()) ++counts[static_cast<std::size_t>(std::ldexp(x, r))];
    DyadicProfile profile{r, std::vector<double>(buckets)};
    const double n = static_cast<double>(seq.size());
    for (std::size_t i = 0; i < buckets; ++i) profile.masses[i] = static_cast<double>(counts[i]) / n;
    return profile;
}

double density_moment_lower_bound(const DyadicProfile& profile, int k) {
    if (k < 2) throw std::invalid_argument("density_moment_lower_bound: k must be >= 2");
    CompensatedSum sum;
    for (double m : profile.masses) {
        if (m > 0.0) sum.add(std::pow(m, k));
    }
    return std::ldexp(sum.value(), profile.level * (k - 1));
}

double density_moment_lower_bound(const PointSequence& seq, int r, int k) {
    return density_moment_lower_bound(dyadic_profile(seq, r), k);
}

double star_discrepancy(const PointSequence& seq) {
    const auto sorted = seq.sorted();
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double rank = static_cast<double>(i + 1);
        d = std::max({d, rank / n - sorted[i], sorted[i] - (rank - 1.0) / n});
    }
    return d;
}

}  // namespace corrkit
