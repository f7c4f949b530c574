#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "corrkit/point_sequence.hpp"

namespace corrkit {

/// Scales s_1, ..., s_{k-1} > 0 of a k-th order correlation count.
class ScaleVector {
public:
    explicit ScaleVector(std::vector<double> scales);
    /// k - 1 copies of s.
    static ScaleVector uniform(int k, double s);

    int k() const { return static_cast<int>(scales_.size()) + 1; }
    std::span<const double> scales() const { return scales_; }
    double operator[](std::size_t r) const { return scales_[r]; }
    double max() const;

private:
    std::vector<double> scales_;
};

/// Closed boxes [a_r, b_r], a_r < b_r, constraining the signed scaled
/// differences N((x_{i_1} - x_{i_{r+1}})).
class BoxVector {
public:
    using Interval = std::pair<double, double>;
    explicit BoxVector(std::vector<Interval> intervals);

    int k() const { return static_cast<int>(intervals_.size()) + 1; }
    std::span<const Interval> intervals() const { return intervals_; }
    /// max_r max(|a_r|, |b_r|)
    double reach() const;

private:
    std::vector<Interval> intervals_;
};

/// Test function on (k-1)-tuples of scaled differences.
using TestFunction = std::function<double(std::span<const double>)>;

/// Result record shared by every statistic.
struct CorrelationReport {
    std::string statistic;
    int k = 0;
    std::vector<double> scales;
    std::vector<BoxVector::Interval> boxes;
    std::string test_function;
    double support_radius = 0.0;
    std::size_t n = 0;
    /// Exact tuple count for counting statistics; value * n == raw_count.
    std::optional<std::uint64_t> raw_count;
    double value = 0.0;

    bool operator==(const CorrelationReport&) const = default;
};

/// Raised by the brute-force oracles when N^k exceeds the tuple budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Tuple-visit cap of the brute-force oracles: CORRKIT_ORACLE_BUDGET if set,
/// otherwise 10^8.
std::uint64_t oracle_budget();

/// z_i(s, N) = #{j : ||x_i - x_j|| <= s/N}, in original index order.
std::vector<std::size_t> neighbor_counts(const PointSequence& seq, double s);

/// R_k^*: (1/N) sum_i prod_r z_i(s_r, N). Every scale must be <= N/2.
CorrelationReport r_k_star(const PointSequence& seq, const ScaleVector& scales);

/// R_k over distinct index tuples.
///
/// With the scales sorted descending the admissible sets per slot are
/// nested, so for every anchor the number of injective slot fillings is
/// c_{k-1} (c_{k-2} - 1) ... (c_1 - (k-2)), clamped at zero, where c_r
/// counts the other points within s_r/N of the anchor.
CorrelationReport r_k_distinct(const PointSequence& seq, const ScaleVector& scales);

/// R_k(1_B, N) for the closed box B = prod_r [a_r, b_r]; requires
/// |a_r|, |b_r| <= N/2.
CorrelationReport r_k_box(const PointSequence& seq, const BoxVector& boxes);

/// R_k(f, N): (1/N) sum over distinct tuples of
/// f(N((x_{i1}-x_{i2})), ..., N((x_{i1}-x_{ik}))). f must vanish outside
/// [-support_radius, support_radius]^{k-1}; support_radius <= N/2.
CorrelationReport r_k_testfn(const PointSequence& seq, const TestFunction& f, double support_radius,
                             int k, std::string name = "f");

/// Consecutive-difference form: f evaluated at
/// (N((x_{i1}-x_{i2})), N((x_{i2}-x_{i3})), ..., N((x_{i(k-1)}-x_{ik}))).
CorrelationReport r_k_consecutive(const PointSequence& seq, const TestFunction& f,
                                  double support_radius, int k, std::string name = "f");

/// Reference implementations by direct enumeration of all N^k tuples.
/// star = true admits repeated indices. Throw BudgetExceeded when N^k is
/// above oracle_budget(), and the same range errors as the fast paths.
CorrelationReport brute_force_r_k(const PointSequence& seq, const ScaleVector& scales, bool star);
CorrelationReport brute_force_r_k(const PointSequence& seq, const BoxVector& boxes, bool star);
CorrelationReport brute_force_r_k(const PointSequence& seq, const TestFunction& f, int k, bool star,
                                  std::string name = "f");
CorrelationReport brute_force_consecutive(const PointSequence& seq, const TestFunction& f, int k,
                                          std::string name = "f");

/// Calls visit(tuple) for every k-tuple in [0, n)^k (only injective ones
/// unless star). Enforces the oracle budget.
void enumerate_tuples(std::size_t n, int k, bool star,
                      const std::function<void(std::span<const std::size_t>)>& visit);

}  // namespace corrkit
