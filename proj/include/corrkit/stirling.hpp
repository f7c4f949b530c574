#pragma once

#include <cstdint>
#include <vector>

namespace corrkit {

/// Second-kind and unsigned first-kind Stirling numbers up to a fixed order.
///
/// Entries are exact; with max_order = 16 the largest first-kind value is
/// 15! which fits comfortably in 64 bits.
class StirlingTables {
public:
    static constexpr int kDefaultOrder = 16;

    explicit StirlingTables(int max_order = kDefaultOrder);

    int max_order() const { return max_order_; }

    /// S(k, j): number of partitions of a k-set into j blocks.
    std::uint64_t second_kind(int k, int j) const;
    /// [n, i]: permutations of n elements with i cycles.
    std::uint64_t first_kind_unsigned(int n, int i) const;

    /// Shared table of the default order.
    static const StirlingTables& instance();

private:
    int max_order_;
    std::vector<std::vector<std::uint64_t>> second_;
    std::vector<std::vector<std::uint64_t>> first_;
};

/// S(k, j) from the default table. Throws std::out_of_range unless
/// 0 <= j <= k <= 16.
std::uint64_t stirling_second(int k, int j);

/// Magnitude of the y^i coefficient in y(y-1)...(y-m), i.e. [m+1, i].
/// Throws std::out_of_range unless 0 <= i <= m + 1 <= 16.
std::uint64_t stirling_first_unsigned(int m, int i);

/// 2 * max_{1<=i<=m} stirling_first_unsigned(m, i). Scales above this
/// threshold make R_m(s/3, N) <= (6/s) R_{m+1}(s, N) hold for large N.
double prop22_threshold(int m);

}  // namespace corrkit
