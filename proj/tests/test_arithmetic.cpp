#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"

#include "corrkit/arithmetic.hpp"
#include "corrkit/circle.hpp"
#include "corrkit/correlations.hpp"
#include "corrkit/rng.hpp"
#include "corrkit/seqgen.hpp"

using namespace corrkit;

namespace {

IntegerSet random_set(StreamRng& rng, std::size_t size, std::uint64_t max) {
    std::vector<std::uint64_t> v;
    while (v.size() < size) {
        v.push_back(1 + rng() % max);
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return IntegerSet(v);
}

std::uint64_t brute_energy(const IntegerSet& a) {
    std::uint64_t count = 0;
    for (auto x : a.elements())
        for (auto y : a.elements())
            for (auto z : a.elements())
                for (auto w : a.elements()) count += x + y == z + w;
    return count;
}

std::uint64_t brute_aps(const IntegerSet& a) {
    std::uint64_t count = 0;
    for (auto x : a.elements())
        for (auto y : a.elements())
            for (auto z : a.elements()) count += x != y && x + z == 2 * y;
    return count;
}

}  // namespace

TEST_CASE("integer set contract") {
    CHECK_THROWS_AS(IntegerSet({}), std::invalid_argument);
    CHECK_THROWS_AS(IntegerSet({0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(IntegerSet({2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(IntegerSet({3, 2}), std::invalid_argument);
    const auto r = IntegerSet::range(5);
    CHECK(r.size() == 5);
    CHECK(r[4] == 5);
    CHECK(r.contains(3));
    CHECK_FALSE(r.contains(6));
    CHECK(r.prefix(2).size() == 2);
}

TEST_CASE("energy and progressions hand values") {
    CHECK(additive_energy(IntegerSet({1})) == 1);
    CHECK(additive_energy(IntegerSet({1, 2, 3})) == 19);
    CHECK(three_ap_count(IntegerSet({1, 2, 3})) == 2);
    CHECK(three_ap_count(IntegerSet({1, 2, 4})) == 0);
    CHECK(three_ap_count(IntegerSet({7})) == 0);
}

TEST_CASE("energy of an interval") {
    for (std::uint64_t n = 1; n <= 1000; n += (n < 40 ? 1 : 37)) {
        const u128 nn = n;
        const u128 closed = nn * (nn + 1) * (2 * nn + 1) / 3 - nn * nn;
        REQUIRE(additive_energy(IntegerSet::range(n)) == closed);
    }
    CHECK(additive_energy(IntegerSet::range(1000)) == u128(1000) * 1001 * 2001 / 3 - 1000000);
}

TEST_CASE("energy and progressions against brute force") {
    StreamRng rng(11);
    for (int t = 0; t < 120; ++t) {
        const std::size_t size = 1 + rng() % 30;
        const std::uint64_t max = t % 3 == 0 ? 60 : (t % 3 == 1 ? 1000 : (std::uint64_t{1} << 40));
        const auto a = random_set(rng, size, std::max<std::uint64_t>(max, size));
        const u128 e = additive_energy(a);
        REQUIRE(e == brute_energy(a));
        REQUIRE(three_ap_count(a) == brute_aps(a));
        CHECK(e >= u128(size) * size);
    }
}

TEST_CASE("measure of alphas with a small dilation") {
    const std::size_t grid = 1 << 20;
    for (std::uint64_t d = 1; d <= 10; ++d) {
        for (double ratio : {0.01, 0.05, 0.2}) {
            std::size_t hits = 0;
            for (std::size_t i = 0; i < grid; ++i) {
                const double alpha = (static_cast<double>(i) + 0.5) / grid;
                hits += std::fabs(signed_distance(static_cast<double>(d) * alpha)) <= ratio;
            }
            CHECK(static_cast<double>(hits) / grid == doctest::Approx(2.0 * ratio).epsilon(1e-4 * d / ratio));
        }
    }
}

TEST_CASE("metric experiment") {
    const auto a = IntegerSet::range(128);
    const auto rep = metric_r3_experiment(a, 0.5, 128, 40, 3);
    CHECK(rep.mean >= 0.0);
    CHECK(rep.lower_bound == doctest::Approx(2.0 * 0.5 * 2 * 64 * 63 / (128.0 * 128.0)));
    CHECK(rep.lower_bound == doctest::Approx(2.0 * 0.5 * rep.ap_ratio));
    CHECK(rep.mean >= 0.9 * rep.lower_bound - 3.0 * rep.std_error);
    CHECK(rep.energy_ratio == doctest::Approx(static_cast<double>(additive_energy(a)) / (128.0 * 128.0 * 128.0)));
    CHECK(rep.fraction_above >= 0.0);
    CHECK(rep.fraction_above <= 1.0);

    const auto once = metric_r3_experiment(a, 0.5, 128, 1, 99);
    const auto again = metric_r3_experiment(a, 0.5, 128, 1, 99);
    CHECK(once.mean == again.mean);
    CHECK(once.variance == 0.0);

    CHECK(metric_r3_experiment(a, 1e-9, 128, 20, 4).mean == 0.0);
    CHECK_THROWS_AS(metric_r3_experiment(a, 0.5, 129, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(metric_r3_experiment(a, 65.0, 128, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(metric_r3_experiment(IntegerSet::range(100000), 1.0, 100000, 20000, 1),
                    std::invalid_argument);
}

TEST_CASE("metric experiment matches a direct evaluation") {
    const auto a = IntegerSet({1, 3, 4, 9, 10, 17, 30, 31, 40, 55});
    const auto rep = metric_r3_experiment(a, 1.0, 10, 5, 21);
    double sum = 0.0;
    for (std::uint64_t t = 0; t < 5; ++t) {
        const double alpha = CounterStream(21, t).uniform(0);
        std::vector<double> pts;
        for (auto v : a.elements()) pts.push_back(fractional_product(v, alpha));
        sum += brute_force_r_k(PointSequence(pts), ScaleVector::uniform(3, 1.0), false).value;
    }
    CHECK(rep.mean == doctest::Approx(sum / 5.0));
}

TEST_CASE("random correlation statistics") {
    const BoxVector box({{0.0, 1.0}});
    std::vector<double> scaled;
    for (std::size_t n : {1000, 10000, 100000}) {
        const auto st = random_correlation_stats(box, n, 100, 17);
        REQUIRE(st.samples.size() == 100);
        const double se = std::sqrt(st.variance / 100.0);
        CHECK(std::fabs(st.mean - 1.0) <= 5.0 * se);
        scaled.push_back(static_cast<double>(n) * st.variance);
    }
    const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
    CHECK(*hi <= 3.0 * *lo);

    const auto three = random_correlation_stats(BoxVector({{-1.0, 1.0}, {-1.0, 1.0}}), 5000, 20, 2);
    CHECK(std::fabs(three.mean - 4.0) <= 5.0 * std::sqrt(three.variance / 20.0) + 0.01);

    const auto repeat = random_correlation_stats(box, 500, 4, 5);
    CHECK(repeat.samples == random_correlation_stats(box, 500, 4, 5).samples);
    CHECK_THROWS(BoxVector({{0.5, 0.5}}));
    CHECK_THROWS_AS(random_correlation_stats(box, 500, 1, 5), std::invalid_argument);
}

TEST_CASE("summary statistics") {
    const auto st = summarize({1.0, 2.0, 3.0, 4.0});
    CHECK(st.mean == 2.5);
    CHECK(st.variance == doctest::Approx(5.0 / 3.0));
}

TEST_CASE("dyadic triples stay far from the Poisson value") {
    for (int m = 2; m <= 14; ++m) {
        const std::size_t n = std::size_t{1} << m;
        const auto seq = dyadic_counterexample(n);
        const double r3 = r_k_distinct(seq, ScaleVector::uniform(3, 1.5)).value;
        CHECK(std::fabs(r3 - 9.0) > 1.0);
    }
}
