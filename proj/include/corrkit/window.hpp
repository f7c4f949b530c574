#pragma once

#include <cstddef>
#include <vector>

#include "corrkit/point_sequence.hpp"

namespace corrkit {

/// Circular range queries over the sorted view of a sequence.
///
/// Membership is decided by the same predicate the brute-force paths use,
/// circle_distance(center, x) <= radius, so fast and reference counts agree
/// exactly. Binary searches over the wrapped array [x-1, x, x+1] narrow the
/// candidates; only points within a thin annulus of the boundary are
/// tested individually.
class CircularWindow {
public:
    explicit CircularWindow(const PointSequence& seq);

    std::size_t size() const { return sorted_.size(); }

    /// #{n : circle_distance(center, x_n) <= radius}
    std::size_t count(double center, double radius) const;

    /// Appends the sorted positions of all points within radius of center,
    /// in ascending circular order starting left of the center. Each point
    /// appears once.
    void collect(double center, double radius, std::vector<std::size_t>& out) const;

private:
    struct Range {
        std::size_t outer_lo, inner_lo, inner_hi, outer_hi;
    };
    bool full_scan(double radius) const;
    Range locate(double center, double radius) const;

    std::vector<double> sorted_;
    std::vector<double> wrapped_;
};

}  // namespace corrkit
