#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace corrkit {

/// Finite ordered list of points in [0, 1) together with a cached stable
/// sort. Immutable after construction, so a sequence can be shared freely
/// between worker threads. Duplicate values are allowed.
class PointSequence {
public:
    /// Throws std::invalid_argument if the list is empty or a value lies
    /// outside [0, 1).
    explicit PointSequence(std::vector<double> points);

    std::size_t size() const { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }

    /// Points in original order.
    std::span<const double> points() const { return points_; }
    /// Permutation p with points()[p[0]] <= points()[p[1]] <= ...
    std::span<const std::size_t> sorted_index() const { return order_; }
    /// points() permuted by sorted_index().
    std::span<const double> sorted() const { return sorted_; }

    /// First n points (1 <= n <= size()).
    PointSequence prefix(std::size_t n) const;

private:
    std::vector<double> points_;
    std::vector<std::size_t> order_;
    std::vector<double> sorted_;
};

/// Reads one decimal per line; blank lines and lines starting with '#'
/// are skipped. Throws std::runtime_error naming the offending line on
/// malformed or out-of-range input.
PointSequence read_points(std::istream& in);
PointSequence read_points_file(const std::filesystem::path& path);

/// Writes one value per line with enough digits to round-trip.
void write_points(std::ostream& out, const PointSequence& seq);

}  // namespace corrkit
