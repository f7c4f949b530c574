#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"

#include "corrkit/averaged.hpp"
#include "corrkit/circle.hpp"
#include "corrkit/correlations.hpp"
#include "corrkit/rng.hpp"
#include "corrkit/seqgen.hpp"

using namespace corrkit;

namespace {

// Length of [x - h, x + h] intersected with [y - h, y + h] on R/Z, by
// intersecting real intervals against the integer translates of the second.
double arc_overlap(double x, double y, double h) {
    double total = 0.0;
    for (int shift = -1; shift <= 1; ++shift) {
        const double lo = std::max(x - h, y + shift - h), hi = std::min(x + h, y + shift + h);
        total += std::max(0.0, hi - lo);
    }
    return total;
}

PointSequence random_points(StreamRng& rng, std::size_t n) {
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i] = i % 3 == 0 ? 0.5 + 0.02 * rng.uniform() : rng.uniform();
        if (i > 0 && rng.uniform() < 0.1) pts[i] = pts[i - 1];
    }
    return PointSequence(pts);
}

}  // namespace

TEST_CASE("overlap kernel hand values") {
    const PointSequence seq({0.0, 0.3});
    CHECK(lambda_overlap(seq, 1.0, 0, 1) == doctest::Approx(0.2));
    CHECK(lambda_overlap(seq, 1.0, 1, 1) == 0.5);
    CHECK(lambda_overlap(seq, 0.5, 0, 1) == 0.0);
    CHECK_THROWS_AS(lambda_overlap(seq, 3.0, 0, 1), std::invalid_argument);
}

TEST_CASE("overlap kernel is the measure of the ball intersection for s <= N/2") {
    StreamRng rng(1);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 30);
        const auto seq = random_points(rng, n);
        const double s = rng.uniform() * static_cast<double>(n) / 2.0;
        const double h = s / (2.0 * static_cast<double>(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                REQUIRE(lambda_overlap(seq, s, i, j) == doctest::Approx(arc_overlap(seq[i], seq[j], h)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("C_2^* of a single point") {
    const PointSequence one({0.7});
    for (double s : {0.1, 0.5, 1.0}) CHECK(c_k_star(one, ScaleVector::uniform(2, s)) == doctest::Approx(s));
    CHECK(c_k_distinct_bruteforce(one, ScaleVector::uniform(3, 0.5)) == 0.0);
}

TEST_CASE("C_k^* equals the enumerated sum over all index tuples") {
    StreamRng rng(2);
    for (int t = 0; t < 30; ++t) {
        const int k = 2 + t % 3;
        const std::size_t n = 3 + static_cast<std::size_t>(rng.uniform() * (k == 4 ? 20 : 35));
        const auto seq = random_points(rng, n);
        std::vector<double> scales;
        for (int r = 1; r < k; ++r) scales.push_back(0.1 + rng.uniform() * static_cast<double>(n) / 2.0);
        const double nd = static_cast<double>(n);
        double direct = 0.0, distinct = 0.0;
        enumerate_tuples(n, k, true, [&](std::span<const std::size_t> tup) {
            double prod = 1.0;
            bool injective = true;
            for (std::size_t r = 1; r < tup.size(); ++r) {
                prod *= positive_part(scales[r - 1] / nd - circle_distance(seq[tup[0]], seq[tup[r]]));
                for (std::size_t q = 0; q < r; ++q) injective = injective && tup[q] != tup[r];
            }
            direct += prod;
            if (injective) distinct += prod;
        });
        direct *= std::pow(nd, k - 2);
        distinct *= std::pow(nd, k - 2);
        const double fast = c_k_star(seq, ScaleVector(scales));
        CHECK(fast == doctest::Approx(direct).epsilon(1e-12));
        CHECK(c_k_distinct_bruteforce(seq, ScaleVector(scales)) == doctest::Approx(distinct).epsilon(1e-12));
        CHECK(c_k_distinct_bruteforce(seq, ScaleVector(scales)) <= fast * (1 + 1e-12));
    }
}

TEST_CASE("distinct averaged hand example") {
    const PointSequence seq({0.0, 0.1, 0.5});
    CHECK(c_k_distinct_bruteforce(seq, ScaleVector::uniform(2, 0.6)) == doctest::Approx(0.2));
}

TEST_CASE("C_2^* is the integral of R_2^* over the scale") {
    StreamRng rng(3);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 5 + static_cast<std::size_t>(rng.uniform() * 30);
        const auto seq = random_points(rng, n);
        const double s = 0.2 + rng.uniform() * 3.0;
        const double nd = static_cast<double>(n);
        std::set<double> cuts{0.0, s};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double d = nd * circle_distance(seq[i], seq[j]);
                if (d < s) cuts.insert(d);
            }
        const std::vector<double> g(cuts.begin(), cuts.end());
        double integral = 0.0;
        for (std::size_t a = 0; a + 1 < g.size(); ++a) {
            integral += brute_force_r_k(seq, ScaleVector::uniform(2, 0.5 * (g[a] + g[a + 1])), true).value * (g[a + 1] - g[a]);
        }
        CHECK(c_k_star(seq, ScaleVector::uniform(2, s)) == doctest::Approx(integral).epsilon(1e-12));
    }
}

TEST_CASE("C_3^* is the double scale integral of R_3^*") {
    StreamRng rng(4);
    for (int t = 0; t < 5; ++t) {
        const std::size_t n = 8 + static_cast<std::size_t>(t);
        const auto seq = random_points(rng, n);
        const double nd = static_cast<double>(n);
        const double s1 = 0.5 + 2.5 * rng.uniform(), s2 = 0.5 + 2.5 * rng.uniform();
        std::set<double> c1{0.0, s1}, c2{0.0, s2};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double d = nd * circle_distance(seq[i], seq[j]);
                if (d < s1) c1.insert(d);
                if (d < s2) c2.insert(d);
            }
        const std::vector<double> g1(c1.begin(), c1.end()), g2(c2.begin(), c2.end());
        double integral = 0.0;
        for (std::size_t a = 0; a + 1 < g1.size(); ++a)
            for (std::size_t b = 0; b + 1 < g2.size(); ++b) {
                const ScaleVector mid({0.5 * (g1[a] + g1[a + 1]), 0.5 * (g2[b] + g2[b + 1])});
                integral += brute_force_r_k(seq, mid, true).value * (g1[a + 1] - g1[a]) * (g2[b + 1] - g2[b]);
            }
        CHECK(c_k_star(seq, ScaleVector({s1, s2})) == doctest::Approx(integral).epsilon(1e-3));
    }
}

TEST_CASE("lower bounds and the power chain") {
    StreamRng rng(5);
    for (int t = 0; t < 30; ++t) {
        const int k = 2 + t % 3;
        const std::size_t n = 20 + static_cast<std::size_t>(rng.uniform() * 3000);
        const auto seq = random_points(rng, n);
        const double s = 0.1 + rng.uniform() * 10.0;
        const double ck = c_k_star(seq, ScaleVector::uniform(k, s));
        CHECK(ck >= std::pow(s, 2 * (k - 1)) * (1 - 1e-12));
        CHECK(std::pow(c_k_star(seq, ScaleVector::uniform(2, s)), k - 1) <= ck * (1 + 1e-12));
    }
}

TEST_CASE("localized sums") {
    StreamRng rng(6);
    for (int t = 0; t < 20; ++t) {
        const int k = 2 + t % 3;
        const std::size_t n = 50 + static_cast<std::size_t>(rng.uniform() * 500);
        const auto seq = random_points(rng, n);
        const double s = 0.5 + rng.uniform() * 5.0;
        const double whole = c_k_star(seq, ScaleVector::uniform(k, s));
        CHECK(c_k_star_local(seq, s, 0.0, 1.0, k) == doctest::Approx(whole).epsilon(1e-12));
        const int parts = 2 + t % 6;
        double split = 0.0;
        for (int p = 0; p < parts; ++p) {
            const double local = c_k_star_local(seq, s, double(p) / parts, double(p + 1) / parts, k);
            CHECK(local >= 0.0);
            split += local;
        }
        CHECK(split <= whole * (1 + 1e-12));
    }
    const PointSequence seq({0.1, 0.2, 0.9});
    CHECK(c_k_star_local(seq, 1.0, 0.4, 0.6, 3) == 0.0);
}

TEST_CASE("localized lower bound trend for uniform samples") {
    const double a = 0.5, s = 1.0;
    for (std::size_t n : {1000, 10000, 100000}) {
        GeneratorSpec spec;
        spec.seed = 21;
        const auto seq = generate(spec, n);
        const auto sorted = seq.sorted();
        const double b = static_cast<double>(std::lower_bound(sorted.begin(), sorted.end(), a) - sorted.begin()) /
                         static_cast<double>(n);
        for (int k : {2, 3}) {
            const double target = std::pow(b, k) / std::pow(a, k - 1) * std::pow(s, 2 * (k - 1));
            CHECK(c_k_star_local(seq, s, 0.0, a, k) >= 0.9 * target);
        }
    }
}

TEST_CASE("scale range") {
    const PointSequence seq({0.1, 0.6});
    CHECK_NOTHROW(c_k_star(seq, ScaleVector::uniform(2, 2.0)));
    CHECK_THROWS_AS(c_k_star(seq, ScaleVector::uniform(2, 2.5)), std::invalid_argument);
    CHECK_THROWS_AS(c_k_star_local(seq, 1.0, 0.6, 0.2, 2), std::invalid_argument);
}
