#include "corrkit/averaged.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "corrkit/circle.hpp"
#include "corrkit/parallel.hpp"
#include "corrkit/window.hpp"

namespace corrkit {

namespace {

void require_scale(double s, std::size_t n) {
    if (!(s > 0.0)) throw std::invalid_argument("scale must be positive");
    if (s > static_cast<double>(n)) {
        throw std::invalid_argument("scale " + std::to_string(s) + " exceeds N = " + std::to_string(n));
    }
}

CompensatedSum add_sums(CompensatedSum acc, CompensatedSum part) {
    acc.add(part.value());
    return acc;
}

// L(s) around `center`, using only points whose sorted position passes keep.
template <class Keep>
double overlap_sum(const CircularWindow& window, std::span<const double> sorted, double center,
                   double radius, std::vector<std::size_t>& scratch, Keep keep) {
    scratch.clear();
    window.collect(center, radius, scratch);
    CompensatedSum sum;
    for (std::size_t q : scratch) {
        if (keep(q)) sum.add(positive_part(radius - circle_distance(center, sorted[q])));
    }
    return sum.value();
}

}  // namespace

double lambda_overlap(const PointSequence& seq, double s, std::size_t i, std::size_t j) {
    require_scale(s, seq.size());
    if (i >= seq.size() || j >= seq.size()) throw std::out_of_range("lambda_overlap: index out of range");
    return positive_part(s / static_cast<double>(seq.size()) - circle_distance(seq[i], seq[j]));
}

std::vector<double> overlap_sums(const PointSequence& seq, double s) {
    require_scale(s, seq.size());
    const CircularWindow window(seq);
    const auto sorted = seq.sorted();
    const double radius = s / static_cast<double>(seq.size());
    std::vector<double> out(seq.size());
    std::vector<std::size_t> scratch;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        out[i] = overlap_sum(window, sorted, seq[i], radius, scratch, [](std::size_t) { return true; });
    }
    return out;
}

double c_k_star(const PointSequence& seq, const ScaleVector& scales) {
    const std::size_t n = seq.size();
    const double nd = static_cast<double>(n);
    for (double s : scales.scales()) require_scale(s, n);
    const CircularWindow window(seq);
    const auto sorted = seq.sorted();

    const CompensatedSum total = chunked_reduce(
        n,
        [&](std::size_t begin, std::size_t end) {
            CompensatedSum acc;
            std::vector<std::size_t> scratch;
            for (std::size_t p = begin; p < end; ++p) {
                double prod = 1.0;
                for (double s : scales.scales()) {
                    prod *= overlap_sum(window, sorted, sorted[p], s / nd, scratch,
                                        [](std::size_t) { return true; });
                }
                acc.add(prod);
            }
            return acc;
        },
        CompensatedSum{}, add_sums);
    return std::pow(nd, scales.k() - 2) * total.value();
}

double c_k_star_local(const PointSequence& seq, double s, double lo, double hi, int k) {
    const std::size_t n = seq.size();
    const double nd = static_cast<double>(n);
    require_scale(s, n);
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    if (!(0.0 <= lo && lo <= hi && hi <= 1.0)) throw std::invalid_argument("interval must satisfy 0 <= lo <= hi <= 1");
    const CircularWindow window(seq);
    const auto sorted = seq.sorted();
    auto inside = [&](std::size_t q) { return lo <= sorted[q] && sorted[q] < hi; };

    const CompensatedSum total = chunked_reduce(
        n,
        [&](std::size_t begin, std::size_t end) {
            CompensatedSum acc;
            std::vector<std::size_t> scratch;
            for (std::size_t p = begin; p < end; ++p) {
                if (!inside(p)) continue;
                const double l = overlap_sum(window, sorted, sorted[p], s / nd, scratch, inside);
                acc.add(std::pow(l, k - 1));
            }
            return acc;
        },
        CompensatedSum{}, add_sums);
    return std::pow(nd, k - 2) * total.value();
}

double c_k_distinct_bruteforce(const PointSequence& seq, const ScaleVector& scales) {
    const std::size_t n = seq.size();
    const double nd = static_cast<double>(n);
    for (double s : scales.scales()) require_scale(s, n);
    CompensatedSum sum;
    enumerate_tuples(n, scales.k(), false, [&](std::span<const std::size_t> t) {
        double prod = 1.0;
        for (std::size_t r = 0; r + 1 < t.size(); ++r) {
            prod *= positive_part(scales[r] / nd - circle_distance(seq[t[0]], seq[t[r + 1]]));
        }
        sum.add(prod);
    });
    return std::pow(nd, scales.k() - 2) * sum.value();
}

}  // namespace corrkit
