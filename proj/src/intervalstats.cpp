#include "corrkit/intervalstats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "corrkit/circle.hpp"
#include "corrkit/correlations.hpp"
#include "corrkit/parallel.hpp"
#include "corrkit/rng.hpp"
#include "corrkit/stirling.hpp"
#include "corrkit/window.hpp"

namespace corrkit {

namespace {

void require_scale(double s, std::size_t n) {
    if (!(s > 0.0)) throw std::invalid_argument("scale must be positive");
    if (s > static_cast<double>(n)) {
        throw std::invalid_argument("scale " + std::to_string(s) + " exceeds N = " + std::to_string(n));
    }
}

void require_k(int k) {
    if (k < 1 || k > StirlingTables::kDefaultOrder) throw std::invalid_argument("k out of range");
}

double falling(std::int64_t f, int k) {
    double out = 1.0;
    for (int j = 0; j < k; ++j) {
        if (f - j <= 0) return 0.0;
        out *= static_cast<double>(f - j);
    }
    return out;
}

}  // namespace

double SweepProfile::segment_length(std::size_t i) const {
    const double next = i + 1 < breakpoints.size() ? breakpoints[i + 1] : breakpoints[0] + 1.0;
    return next - breakpoints[i];
}

double SweepProfile::mass() const {
    CompensatedSum sum;
    for (std::size_t i = 0; i < values.size(); ++i) sum.add(static_cast<double>(values[i]) * segment_length(i));
    return sum.value();
}

std::int64_t SweepProfile::max_value() const { return *std::max_element(values.begin(), values.end()); }

std::size_t f_count(const PointSequence& seq, double t, double s) {
    require_scale(s, seq.size());
    const double radius = s / (2.0 * static_cast<double>(seq.size()));
    if (radius >= 0.5) return seq.size();
    return CircularWindow(seq).count(fractional_part(t), radius);
}

SweepProfile sweep_profile(const PointSequence& seq, double s) {
    require_scale(s, seq.size());
    const double h = s / (2.0 * static_cast<double>(seq.size()));
    std::int64_t base = 0;
    std::vector<std::pair<double, std::int64_t>> events;
    events.reserve(2 * seq.size());
    if (h >= 0.5) {
        base = static_cast<std::int64_t>(seq.size());
    } else {
        for (double x : seq.sorted()) {
            const double start = fractional_part(x - h);
            const double end = fractional_part(x + h);
            // Arc [start, end]; it covers 0 when it wraps.
            if (start > end) ++base;
            events.emplace_back(start, +1);
            events.emplace_back(end, -1);
        }
    }
    if (events.empty()) events.emplace_back(0.0, 0);
    std::sort(events.begin(), events.end());

    SweepProfile profile;
    std::int64_t value = base;
    for (std::size_t e = 0; e < events.size();) {
        const double at = events[e].first;
        while (e < events.size() && events[e].first == at) value += events[e++].second;
        profile.breakpoints.push_back(at);
        profile.values.push_back(value);
    }
    return profile;
}

std::int64_t profile_value(const SweepProfile& profile, double t) {
    const double u = fractional_part(t);
    const auto it = std::upper_bound(profile.breakpoints.begin(), profile.breakpoints.end(), u);
    // Before the first breakpoint we are still on the wrapping last segment.
    if (it == profile.breakpoints.begin()) return profile.values.back();
    return profile.values[static_cast<std::size_t>(it - profile.breakpoints.begin()) - 1];
}

MomentReport moments(const SweepProfile& profile, std::size_t n, double s, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    const double mass = profile.mass();
    if (std::fabs(mass - s) > 1e-12 * static_cast<double>(n)) {
        throw std::logic_error("sweep profile mass " + std::to_string(mass) + " differs from s = " +
                               std::to_string(s));
    }
    CompensatedSum fact, power;
    for (std::size_t i = 0; i < profile.values.size(); ++i) {
        const double len = profile.segment_length(i);
        const std::int64_t f = profile.values[i];
        if (f == 0) continue;
        fact.add(falling(f, k) * len);
        power.add(std::pow(static_cast<double>(f), k) * len);
    }
    return MomentReport{k, s, n, fact.value(), power.value()};
}

MomentReport moments(const PointSequence& seq, double s, int k) {
    return moments(sweep_profile(seq, s), seq.size(), s, k);
}

double g_test(int k, double s, std::span<const double> y) {
    if (k < 2) throw std::invalid_argument("g_test: k must be >= 2");
    if (y.size() != static_cast<std::size_t>(k - 1)) throw std::invalid_argument("g_test: y must have k - 1 entries");
    double up = 0.0, down = 0.0;
    for (double v : y) {
        up = std::max(up, positive_part(v));
        down = std::max(down, positive_part(-v));
    }
    return positive_part(s - up - down);
}

McEstimate g_integral_mc(int k, double s, std::size_t samples, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("g_integral_mc: k must be >= 2");
    if (samples < 1) throw std::invalid_argument("g_integral_mc: need at least one sample");
    const std::size_t dim = static_cast<std::size_t>(k - 1);
    const CounterStream stream(seed, 0);
    struct Moments {
        CompensatedSum sum, sum_sq;
    };
    const Moments m = chunked_reduce(
        samples,
        [&](std::size_t begin, std::size_t end) {
            Moments part;
            std::vector<double> y(dim);
            for (std::size_t i = begin; i < end; ++i) {
                for (std::size_t r = 0; r < dim; ++r) y[r] = s * (2.0 * stream.uniform(i * dim + r) - 1.0);
                const double g = g_test(k, s, y);
                part.sum.add(g);
                part.sum_sq.add(g * g);
            }
            return part;
        },
        Moments{},
        [](Moments acc, Moments part) {
            acc.sum.add(part.sum.value());
            acc.sum_sq.add(part.sum_sq.value());
            return acc;
        });
    const double volume = std::pow(2.0 * s, static_cast<double>(dim));
    const double n = static_cast<double>(samples);
    const double mean = m.sum.value() / n;
    const double var = samples > 1 ? std::max(0.0, (m.sum_sq.value() - n * mean * mean) / (n - 1.0)) : 0.0;
    return McEstimate{volume * mean, volume * std::sqrt(var / n)};
}

double i_k_via_correlation(const PointSequence& seq, double s, int k) {
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    if (!(s > 0.0)) throw std::invalid_argument("scale must be positive");
    if (static_cast<double>(seq.size()) < 4.0 * s) {
        throw std::invalid_argument("i_k_via_correlation requires N >= 4s");
    }
    const TestFunction g = [k, s](std::span<const double> y) { return g_test(k, s, y); };
    return r_k_testfn(seq, g, s, k, "g_s").value;
}

double ik_star_via_correlations(const PointSequence& seq, double s, int k) {
    require_k(k);
    if (static_cast<double>(seq.size()) < 4.0 * s) {
        throw std::invalid_argument("ik_star_via_correlations requires N >= 4s");
    }
    CompensatedSum sum;
    sum.add(static_cast<double>(stirling_second(k, 1)) * s);
    for (int j = 2; j <= k; ++j) {
        sum.add(static_cast<double>(stirling_second(k, j)) * i_k_via_correlation(seq, s, j));
    }
    return sum.value();
}

double bell_prediction(int k, double s) {
    require_k(k);
    double out = 0.0;
    for (int j = k; j >= 1; --j) out = (out + static_cast<double>(stirling_second(k, j))) * s;
    return out;
}

}  // namespace corrkit
