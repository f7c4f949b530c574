#include "corrkit/stirling.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace corrkit {

StirlingTables::StirlingTables(int max_order) : max_order_(max_order) {
    if (max_order < 0 || max_order > 20) {
        throw std::out_of_range("StirlingTables: max_order must lie in [0, 20]");
    }
    const auto n = static_cast<std::size_t>(max_order) + 1;
    second_.assign(n, std::vector<std::uint64_t>(n, 0));
    first_.assign(n, std::vector<std::uint64_t>(n, 0));
    second_[0][0] = 1;
    first_[0][0] = 1;
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t j = 1; j <= k; ++j) {
            second_[k][j] = j * second_[k - 1][j] + second_[k - 1][j - 1];
            first_[k][j] = (k - 1) * first_[k - 1][j] + first_[k - 1][j - 1];
        }
    }
}

std::uint64_t StirlingTables::second_kind(int k, int j) const {
    if (k < 0 || j < 0 || j > k || k > max_order_) {
        throw std::out_of_range("stirling second kind: index (" + std::to_string(k) + ", " +
                                std::to_string(j) + ") out of range");
    }
    return second_[k][j];
}

std::uint64_t StirlingTables::first_kind_unsigned(int n, int i) const {
    if (n < 0 || i < 0 || i > n || n > max_order_) {
        throw std::out_of_range("stirling first kind: index (" + std::to_string(n) + ", " +
                                std::to_string(i) + ") out of range");
    }
    return first_[n][i];
}

const StirlingTables& StirlingTables::instance() {
    static const StirlingTables tables;
    return tables;
}

std::uint64_t stirling_second(int k, int j) { return StirlingTables::instance().second_kind(k, j); }

std::uint64_t stirling_first_unsigned(int m, int i) {
    if (m < 0) throw std::out_of_range("stirling_first_unsigned: negative order");
    return StirlingTables::instance().first_kind_unsigned(m + 1, i);
}

double prop22_threshold(int m) {
    if (m < 2) throw std::out_of_range("prop22_threshold: m must be >= 2");
    std::uint64_t best = 0;
    for (int i = 1; i <= m; ++i) best = std::max(best, stirling_first_unsigned(m, i));
    return 2.0 * static_cast<double>(best);
}

}  // namespace corrkit
