#include <cmath>
#include <vector>

#include "doctest.h"

#include "corrkit/correlations.hpp"
#include "corrkit/distribution.hpp"
#include "corrkit/rng.hpp"
#include "corrkit/seqgen.hpp"

using namespace corrkit;

namespace {

PointSequence uniform_sample(std::size_t n, std::uint64_t seed, double width = 1.0) {
    StreamRng rng(seed);
    std::vector<double> pts(n);
    for (auto& x : pts) x = width * rng.uniform();
    return PointSequence(pts);
}

PointSequence grid(std::size_t n) {
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = static_cast<double>(i) / static_cast<double>(n);
    return PointSequence(pts);
}

}  // namespace

TEST_CASE("empirical distribution function") {
    const PointSequence seq({0.2, 0.8});
    CHECK(ecdf(seq, 1.0) == 1.0);
    CHECK(ecdf(seq, 0.0) == 0.0);
    CHECK(ecdf(seq, 0.5) == 0.5);
    CHECK(ecdf(seq, 0.2) == 0.5);
    CHECK(ecdf(PointSequence({0.0, 0.5}), 0.0) == 0.5);

    const auto sample = uniform_sample(500, 3);
    StreamRng rng(4);
    for (int q = 0; q < 200; ++q) {
        const double x = rng.uniform();
        std::size_t below = 0;
        for (std::size_t i = 0; i < sample.size(); ++i) below += sample[i] <= x;
        REQUIRE(ecdf(sample, x) == static_cast<double>(below) / 500.0);
    }
}

TEST_CASE("dyadic profile") {
    const auto g = dyadic_profile(grid(1024), 5);
    CHECK(g.level == 5);
    REQUIRE(g.masses.size() == 32);
    for (double m : g.masses) CHECK(m == 1.0 / 32.0);

    const auto zero = dyadic_profile(PointSequence(std::vector<double>(7, 0.0)), 3);
    CHECK(zero.masses[0] == 1.0);
    for (std::size_t i = 1; i < zero.masses.size(); ++i) CHECK(zero.masses[i] == 0.0);

    const auto edge = dyadic_profile(PointSequence({0.25, std::nextafter(0.5, 0.0), 0.75}), 2);
    CHECK(edge.masses == std::vector<double>{0.0, 2.0 / 3.0, 0.0, 1.0 / 3.0});

    const auto sample = uniform_sample(3001, 5);
    for (int r = 0; r <= 12; ++r) {
        const auto p = dyadic_profile(sample, r);
        double total = 0.0;
        for (double m : p.masses) {
            CHECK(m >= 0.0);
            CHECK(m <= 1.0);
            total += m * 3001.0;
        }
        CHECK(total == 3001.0);
        for (std::size_t i = 0; i < p.masses.size(); i += 97) {
            const double lo = std::ldexp(static_cast<double>(i), -r);
            const double hi = std::ldexp(static_cast<double>(i + 1), -r);
            std::size_t in = 0;
            for (std::size_t j = 0; j < sample.size(); ++j) in += sample[j] >= lo && sample[j] < hi;
            CHECK(p.masses[i] == static_cast<double>(in) / 3001.0);
        }
    }
    CHECK_THROWS_AS(dyadic_profile(sample, -1), std::invalid_argument);
    CHECK_THROWS_AS(dyadic_profile(sample, 31), std::invalid_argument);
}

TEST_CASE("density moment functional") {
    for (int k = 2; k <= 5; ++k) {
        CHECK(density_moment_lower_bound(grid(256), 4, k) == doctest::Approx(1.0));
        for (int r = 0; r <= 6; ++r) {
            CHECK(density_moment_lower_bound(PointSequence({0.1, 0.1, 0.1}), r, k) ==
                  doctest::Approx(std::ldexp(1.0, r * (k - 1))));
        }
    }
    CHECK_THROWS_AS(density_moment_lower_bound(grid(8), 2, 1), std::invalid_argument);
}

TEST_CASE("density moment functional grows with the level") {
    StreamRng rng(6);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 10 + rng() % 2000;
        const auto seq = t % 4 == 0 ? dyadic_counterexample(n) : uniform_sample(n, 100 + t, 0.3 + 0.7 * rng.uniform());
        for (int k = 2; k <= 4; ++k) {
            double prev = density_moment_lower_bound(seq, 0, k);
            for (int r = 1; r <= 14; ++r) {
                const double cur = density_moment_lower_bound(seq, r, k);
                REQUIRE(cur >= prev * (1.0 - 1e-12));
                prev = cur;
            }
        }
    }
}

TEST_CASE("star discrepancy") {
    for (std::size_t n : {1, 2, 7, 100}) {
        std::vector<double> pts(n);
        for (std::size_t i = 0; i < n; ++i) pts[i] = (2.0 * static_cast<double>(i) + 1.0) / (2.0 * static_cast<double>(n));
        CHECK(star_discrepancy(PointSequence(pts)) == doctest::Approx(0.5 / static_cast<double>(n)));
    }
    CHECK(star_discrepancy(PointSequence(std::vector<double>(9, 0.0))) == 1.0);
    const double d = star_discrepancy(uniform_sample(100000, 8));
    CHECK(d > 0.0);
    CHECK(d <= 0.05);

    const auto small = uniform_sample(40, 9);
    double worst = 0.0;
    for (std::size_t i = 0; i < small.size(); ++i) {
        for (double x : {small[i], std::nextafter(small[i], 0.0)}) {
            worst = std::max(worst, std::fabs(ecdf(small, x) - x));
        }
    }
    CHECK(star_discrepancy(small) == doctest::Approx(worst).epsilon(1e-12));
}

TEST_CASE("concentrated samples have excess pair correlation") {
    const auto half = uniform_sample(100000, 10, 0.5);
    CHECK(r_k_distinct(half, ScaleVector::uniform(2, 5.0)).value >= 15.0);
    CHECK(density_moment_lower_bound(half, 6, 2) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("functional trends") {
    const auto dyadic = dyadic_counterexample(std::size_t{1} << 16);
    CHECK(density_moment_lower_bound(dyadic, 15, 2) == doctest::Approx(1.0));
    CHECK(density_moment_lower_bound(dyadic, 16, 2) > density_moment_lower_bound(dyadic, 8, 2));
    CHECK(density_moment_lower_bound(dyadic, 16, 2) == doctest::Approx(2.0));
    const double u = density_moment_lower_bound(uniform_sample(100000, 11), 6, 2);
    CHECK(u >= 0.9);
    CHECK(u <= 1.5);
}
