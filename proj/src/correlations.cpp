#include "corrkit/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "corrkit/circle.hpp"
#include "corrkit/parallel.hpp"
#include "corrkit/window.hpp"

namespace corrkit {

using u128 = unsigned __int128;

ScaleVector::ScaleVector(std::vector<double> scales) : scales_(std::move(scales)) {
    if (scales_.empty()) throw std::invalid_argument("ScaleVector: need at least one scale (k >= 2)");
    if (scales_.size() > 15) throw std::invalid_argument("ScaleVector: k > 16 is not supported");
    for (double s : scales_) {
        if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("ScaleVector: scales must be positive");
    }
}

ScaleVector ScaleVector::uniform(int k, double s) {
    if (k < 2) throw std::invalid_argument("ScaleVector: k must be >= 2");
    return ScaleVector(std::vector<double>(static_cast<std::size_t>(k - 1), s));
}

double ScaleVector::max() const { return *std::max_element(scales_.begin(), scales_.end()); }

BoxVector::BoxVector(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
    if (intervals_.empty()) throw std::invalid_argument("BoxVector: need at least one interval (k >= 2)");
    if (intervals_.size() > 15) throw std::invalid_argument("BoxVector: k > 16 is not supported");
    for (auto [a, b] : intervals_) {
        if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) {
            throw std::invalid_argument("BoxVector: every interval needs a < b");
        }
    }
}

double BoxVector::reach() const {
    double r = 0.0;
    for (auto [a, b] : intervals_) r = std::max({r, std::fabs(a), std::fabs(b)});
    return r;
}

std::uint64_t oracle_budget() {
    if (const char* env = std::getenv("CORRKIT_ORACLE_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return 100'000'000ULL;
}

namespace {

void require_half_circle(double reach, std::size_t n, const char* what) {
    if (reach > static_cast<double>(n) / 2.0) {
        throw std::invalid_argument(std::string(what) + " exceeds N/2 = " +
                                    std::to_string(static_cast<double>(n) / 2.0) +
                                    " (constraint arc would wrap)");
    }
}

void require_k(int k) {
    if (k < 2 || k > 16) throw std::invalid_argument("k must lie in [2, 16]");
}

std::uint64_t narrow(u128 count) {
    if (count > std::numeric_limits<std::uint64_t>::max()) {
        throw std::overflow_error("correlation count exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(count);
}

CorrelationReport make_count_report(std::string name, int k, std::size_t n, u128 count) {
    CorrelationReport rep;
    rep.statistic = std::move(name);
    rep.k = k;
    rep.n = n;
    rep.raw_count = narrow(count);
    rep.value = static_cast<double>(*rep.raw_count) / static_cast<double>(n);
    return rep;
}

u128 add_u128(u128 a, u128 b) { return a + b; }

CompensatedSum add_sums(CompensatedSum acc, CompensatedSum part) {
    acc.add(part.value());
    return acc;
}

std::vector<double> descending(std::span<const double> scales) {
    std::vector<double> s(scales.begin(), scales.end());
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

}  // namespace

std::vector<std::size_t> neighbor_counts(const PointSequence& seq, double s) {
    require_half_circle(s, seq.size(), "scale");
    const CircularWindow window(seq);
    const double radius = s / static_cast<double>(seq.size());
    std::vector<std::size_t> z(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) z[i] = window.count(seq[i], radius);
    return z;
}

CorrelationReport r_k_star(const PointSequence& seq, const ScaleVector& scales) {
    const std::size_t n = seq.size();
    require_half_circle(scales.max(), n, "scale");
    const CircularWindow window(seq);
    const auto sorted = seq.sorted();
    std::vector<double> radii;
    for (double s : scales.scales()) radii.push_back(s / static_cast<double>(n));

    const u128 total = chunked_reduce(
        n,
        [&](std::size_t begin, std::size_t end) {
            u128 acc = 0;
            for (std::size_t p = begin; p < end; ++p) {
                u128 prod = 1;
                for (double r : radii) prod *= window.count(sorted[p], r);
                acc += prod;
            }
            return acc;
        },
        u128{0}, add_u128);

    auto rep = make_count_report("R_k_star", scales.k(), n, total);
    rep.scales.assign(scales.scales().begin(), scales.scales().end());
    return rep;
}

CorrelationReport r_k_distinct(const PointSequence& seq, const ScaleVector& scales) {
    const std::size_t n = seq.size();
    require_half_circle(scales.max(), n, "scale");
    const CircularWindow window(seq);
    const auto sorted = seq.sorted();
    // The count is invariant under permuting slots, so order them by
    // decreasing radius to make the admissible sets nested.
    std::vector<double> radii;
    for (double s : descending(scales.scales())) radii.push_back(s / static_cast<double>(n));
    const std::size_t slots = radii.size();

    const u128 total = chunked_reduce(
        n,
        [&](std::size_t begin, std::size_t end) {
            u128 acc = 0;
            std::vector<std::int64_t> others(slots);
            for (std::size_t p = begin; p < end; ++p) {
                for (std::size_t r = 0; r < slots; ++r) {
                    if (r > 0 && radii[r] == radii[r - 1]) {
                        others[r] = others[r - 1];
                    } else {
                        others[r] = static_cast<std::int64_t>(window.count(sorted[p], radii[r])) - 1;
                    }
                }
                // Fill the smallest set first; each larger set has already
                // lost the indices used by the smaller ones.
                u128 prod = 1;
                for (std::size_t used = 0; used < slots; ++used) {
                    const std::int64_t choices =
                        others[slots - 1 - used] - static_cast<std::int64_t>(used);
                    if (choices <= 0) {
                        prod = 0;
                        break;
                    }
                    prod *= static_cast<std::uint64_t>(choices);
                }
                acc += prod;
            }
            return acc;
        },
        u128{0}, add_u128);

    auto rep = make_count_report("R_k", scales.k(), n, total);
    rep.scales.assign(scales.scales().begin(), scales.scales().end());
    return rep;
}

CorrelationReport r_k_box(const PointSequence& seq, const BoxVector& boxes) {
    const std::size_t n = seq.size();
    const double nd = static_cast<double>(n);
    require_half_circle(boxes.reach(), n, "box bound");
    const CircularWindow window(seq);
    const auto sorted = seq.sorted();
    const auto intervals = boxes.intervals();
    const std::size_t slots = intervals.size();
    std::vector<double> lo, hi;
    for (auto [a, b] : intervals) {
        lo.push_back(a / nd);
        hi.push_back(b / nd);
    }
    const double reach = boxes.reach() / nd;
    const std::size_t full = (std::size_t{1} << slots) - 1;

    const u128 total = chunked_reduce(
        n,
        [&](std::size_t begin, std::size_t end) {
            u128 acc = 0;
            std::vector<std::size_t> candidates;
            std::vector<u128> ways(full + 1);
            for (std::size_t p = begin; p < end; ++p) {
                const double x = sorted[p];
                candidates.clear();
                window.collect(x, reach, candidates);
                // ways[mask]: injective fillings of the slots in mask using
                // the candidates processed so far.
                std::fill(ways.begin(), ways.end(), u128{0});
                ways[0] = 1;
                for (std::size_t q : candidates) {
                    if (q == p) continue;
                    const double d = signed_distance(x - sorted[q]);
                    std::size_t allowed = 0;
                    for (std::size_t r = 0; r < slots; ++r) {
                        if (lo[r] <= d && d <= hi[r]) allowed |= std::size_t{1} << r;
                    }
                    if (allowed == 0) continue;
                    for (std::size_t mask = full; mask-- > 0;) {
                        if (ways[mask] == 0) continue;
                        std::size_t open = allowed & ~mask;
                        while (open != 0) {
                            const std::size_t bit = open & (~open + 1);
                            ways[mask | bit] += ways[mask];
                            open ^= bit;
                        }
                    }
                }
                acc += ways[full];
            }
            return acc;
        },
        u128{0}, add_u128);

    auto rep = make_count_report("R_k_box", boxes.k(), n, total);
    rep.boxes.assign(intervals.begin(), intervals.end());
    return rep;
}

namespace {

// Sum of f over injective (k-1)-tuples drawn from args.
void sum_injective(const TestFunction& f, std::span<const double> args, std::size_t slots,
                   std::vector<double>& point, std::vector<char>& used, std::size_t depth,
                   CompensatedSum& sum) {
    if (depth == slots) {
        sum.add(f(point));
        return;
    }
    for (std::size_t c = 0; c < args.size(); ++c) {
        if (used[c]) continue;
        used[c] = 1;
        point[depth] = args[c];
        sum_injective(f, args, slots, point, used, depth + 1, sum);
        used[c] = 0;
    }
}

CorrelationReport make_weighted_report(std::string statistic, std::string name, int k, std::size_t n,
                                       double support_radius, double sum) {
    CorrelationReport rep;
    rep.statistic = std::move(statistic);
    rep.test_function = std::move(name);
    rep.k = k;
    rep.n = n;
    rep.support_radius = support_radius;
    rep.value = sum / static_cast<double>(n);
    return rep;
}

void require_support(double support_radius, std::size_t n) {
    if (!(support_radius > 0.0)) throw std::invalid_argument("support radius must be positive");
    require_half_circle(support_radius, n, "support radius");
}

}  // namespace

CorrelationReport r_k_testfn(const PointSequence& seq, const TestFunction& f, double support_radius,
                             int k, std::string name) {
    require_k(k);
    const std::size_t n = seq.size();
    require_support(support_radius, n);
    const double nd = static_cast<double>(n);
    const CircularWindow window(seq);
    const auto sorted = seq.sorted();
    const std::size_t slots = static_cast<std::size_t>(k - 1);

    const CompensatedSum total = chunked_reduce(
        n,
        [&](std::size_t begin, std::size_t end) {
            CompensatedSum acc;
            std::vector<std::size_t> candidates;
            std::vector<double> args;
            std::vector<double> point(slots);
            std::vector<char> used;
            for (std::size_t p = begin; p < end; ++p) {
                const double x = sorted[p];
                candidates.clear();
                window.collect(x, support_radius / nd, candidates);
                args.clear();
                for (std::size_t q : candidates) {
                    if (q != p) args.push_back(nd * signed_distance(x - sorted[q]));
                }
                if (args.size() < slots) continue;
                used.assign(args.size(), 0);
                sum_injective(f, args, slots, point, used, 0, acc);
            }
            return acc;
        },
        CompensatedSum{}, add_sums);

    return make_weighted_report("R_k_testfn", std::move(name), k, n, support_radius, total.value());
}

namespace {

struct ChainWalker {
    const TestFunction& f;
    const CircularWindow& window;
    std::span<const double> sorted;
    double radius;
    double nd;
    std::size_t slots;
    std::vector<std::size_t> path;
    std::vector<double> point;

    void walk(std::size_t depth, CompensatedSum& sum) {
        if (depth == slots) {
            sum.add(f(point));
            return;
        }
        const std::size_t last = path.back();
        const double x = sorted[last];
        std::vector<std::size_t> next;
        window.collect(x, radius, next);
        for (std::size_t q : next) {
            if (std::find(path.begin(), path.end(), q) != path.end()) continue;
            point[depth] = nd * signed_distance(x - sorted[q]);
            path.push_back(q);
            walk(depth + 1, sum);
            path.pop_back();
        }
    }
};

}  // namespace

CorrelationReport r_k_consecutive(const PointSequence& seq, const TestFunction& f,
                                  double support_radius, int k, std::string name) {
    require_k(k);
    const std::size_t n = seq.size();
    require_support(support_radius, n);
    const double nd = static_cast<double>(n);
    const CircularWindow window(seq);
    const auto sorted = seq.sorted();

    const CompensatedSum total = chunked_reduce(
        n,
        [&](std::size_t begin, std::size_t end) {
            CompensatedSum acc;
            ChainWalker walker{f, window, sorted, support_radius / nd, nd,
                               static_cast<std::size_t>(k - 1), {}, std::vector<double>(k - 1)};
            for (std::size_t p = begin; p < end; ++p) {
                walker.path.assign(1, p);
                walker.walk(0, acc);
            }
            return acc;
        },
        CompensatedSum{}, add_sums);

    return make_weighted_report("R_k_consecutive", std::move(name), k, n, support_radius, total.value());
}

// ---- brute force -------------------------------------------------------------

void enumerate_tuples(std::size_t n, int k, bool star,
                      const std::function<void(std::span<const std::size_t>)>& visit) {
    require_k(k);
    const double visits = std::pow(static_cast<double>(n), k);
    if (visits > static_cast<double>(oracle_budget())) {
        throw BudgetExceeded("brute-force oracle: N^k = " + std::to_string(visits) +
                             " tuple visits exceed budget " + std::to_string(oracle_budget()) +
                             " (set CORRKIT_ORACLE_BUDGET to raise it)");
    }
    const auto kk = static_cast<std::size_t>(k);
    std::vector<std::size_t> tuple(kk, 0);
    while (true) {
        bool injective = true;
        if (!star) {
            for (std::size_t a = 0; a < kk && injective; ++a) {
                for (std::size_t b = a + 1; b < kk; ++b) {
                    if (tuple[a] == tuple[b]) {
                        injective = false;
                        break;
                    }
                }
            }
        }
        if (injective) visit(tuple);
        std::size_t pos = kk;
        while (pos > 0) {
            --pos;
            if (++tuple[pos] < n) break;
            tuple[pos] = 0;
            if (pos == 0) return;
        }
    }
}

CorrelationReport brute_force_r_k(const PointSequence& seq, const ScaleVector& scales, bool star) {
    const std::size_t n = seq.size();
    require_half_circle(scales.max(), n, "scale");
    std::vector<double> radii;
    for (double s : scales.scales()) radii.push_back(s / static_cast<double>(n));
    u128 count = 0;
    enumerate_tuples(n, scales.k(), star, [&](std::span<const std::size_t> t) {
        for (std::size_t r = 0; r < radii.size(); ++r) {
            if (!(circle_distance(seq[t[0]], seq[t[r + 1]]) <= radii[r])) return;
        }
        ++count;
    });
    auto rep = make_count_report(star ? "R_k_star" : "R_k", scales.k(), n, count);
    rep.scales.assign(scales.scales().begin(), scales.scales().end());
    return rep;
}

CorrelationReport brute_force_r_k(const PointSequence& seq, const BoxVector& boxes, bool star) {
    const std::size_t n = seq.size();
    const double nd = static_cast<double>(n);
    require_half_circle(boxes.reach(), n, "box bound");
    const auto intervals = boxes.intervals();
    u128 count = 0;
    enumerate_tuples(n, boxes.k(), star, [&](std::span<const std::size_t> t) {
        for (std::size_t r = 0; r < intervals.size(); ++r) {
            const double d = signed_distance(seq[t[0]] - seq[t[r + 1]]);
            if (!(intervals[r].first / nd <= d && d <= intervals[r].second / nd)) return;
        }
        ++count;
    });
    auto rep = make_count_report(star ? "R_k_box_star" : "R_k_box", boxes.k(), n, count);
    rep.boxes.assign(intervals.begin(), intervals.end());
    return rep;
}

CorrelationReport brute_force_r_k(const PointSequence& seq, const TestFunction& f, int k, bool star,
                                  std::string name) {
    const std::size_t n = seq.size();
    const double nd = static_cast<double>(n);
    CompensatedSum sum;
    std::vector<double> point(static_cast<std::size_t>(k > 1 ? k - 1 : 1));
    enumerate_tuples(n, k, star, [&](std::span<const std::size_t> t) {
        for (std::size_t r = 1; r < t.size(); ++r) point[r - 1] = nd * signed_distance(seq[t[0]] - seq[t[r]]);
        sum.add(f(point));
    });
    return make_weighted_report(star ? "R_k_testfn_star" : "R_k_testfn", std::move(name), k, n, 0.0,
                                sum.value());
}

CorrelationReport brute_force_consecutive(const PointSequence& seq, const TestFunction& f, int k,
                                          std::string name) {
    const std::size_t n = seq.size();
    const double nd = static_cast<double>(n);
    CompensatedSum sum;
    std::vector<double> point(static_cast<std::size_t>(k > 1 ? k - 1 : 1));
    enumerate_tuples(n, k, false, [&](std::span<const std::size_t> t) {
        for (std::size_t r = 1; r < t.size(); ++r) point[r - 1] = nd * signed_distance(seq[t[r - 1]] - seq[t[r]]);
        sum.add(f(point));
    });
    return make_weighted_report("R_k_consecutive", std::move(name), k, n, 0.0, sum.value());
}

}  // namespace corrkit
