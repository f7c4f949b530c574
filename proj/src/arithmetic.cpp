#include "corrkit/arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "corrkit/parallel.hpp"
#include "corrkit/rng.hpp"
#include "corrkit/seqgen.hpp"

namespace corrkit {

IntegerSet::IntegerSet(std::vector<std::uint64_t> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw std::invalid_argument("IntegerSet: must be non-empty");
    if (elements_.front() == 0) throw std::invalid_argument("IntegerSet: elements must be positive");
    for (std::size_t i = 1; i < elements_.size(); ++i) {
        if (elements_[i] <= elements_[i - 1]) throw std::invalid_argument("IntegerSet: elements must be strictly increasing");
    }
    if (elements_.back() > (std::uint64_t{1} << 62)) throw std::invalid_argument("IntegerSet: elements must be below 2^62");
}

IntegerSet IntegerSet::range(std::uint64_t n) {
    std::vector<std::uint64_t> v(n);
    for (std::uint64_t i = 0; i < n; ++i) v[i] = i + 1;
    return IntegerSet(std::move(v));
}

bool IntegerSet::contains(std::uint64_t v) const {
    return std::binary_search(elements_.begin(), elements_.end(), v);
}

IntegerSet IntegerSet::prefix(std::size_t n) const {
    if (n < 1 || n > elements_.size()) throw std::out_of_range("IntegerSet::prefix: bad length");
    return IntegerSet(std::vector<std::uint64_t>(elements_.begin(), elements_.begin() + static_cast<std::ptrdiff_t>(n)));
}

u128 additive_energy(const IntegerSet& a) {
    const auto e = a.elements();
    const std::uint64_t max_sum = 2 * e.back();
    u128 energy = 0;
    if (max_sum < (std::uint64_t{1} << 24)) {
        std::vector<std::uint32_t> r(max_sum + 1, 0);
        for (std::uint64_t x : e) {
            for (std::uint64_t y : e) ++r[x + y];
        }
        for (std::uint32_t c : r) energy += static_cast<u128>(c) * c;
    } else {
        std::unordered_map<std::uint64_t, std::uint64_t> r;
        r.reserve(e.size() * e.size());
        for (std::uint64_t x : e) {
            for (std::uint64_t y : e) ++r[x + y];
        }
        for (const auto& [sum, c] : r) energy += static_cast<u128>(c) * c;
    }
    return energy;
}

u128 three_ap_count(const IntegerSet& a) {
    const auto e = a.elements();
    u128 count = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = i + 1; j < e.size(); ++j) {
            const std::uint64_t sum = e[i] + e[j];
            if (sum % 2 == 0 && std::binary_search(e.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                                   e.begin() + static_cast<std::ptrdiff_t>(j), sum / 2)) {
                count += 2;
            }
        }
    }
    return count;
}

SampleStats summarize(std::vector<double> samples) {
    SampleStats st;
    st.samples = std::move(samples);
    const double m = static_cast<double>(st.samples.size());
    if (st.samples.empty()) return st;
    CompensatedSum sum;
    for (double v : st.samples) sum.add(v);
    st.mean = sum.value() / m;
    if (st.samples.size() > 1) {
        CompensatedSum sq;
        for (double v : st.samples) sq.add((v - st.mean) * (v - st.mean));
        st.variance = sq.value() / (m - 1.0);
    }
    return st;
}

namespace {

template <class Trial>
std::vector<double> run_trials(std::size_t trials, Trial trial) {
    return chunked_reduce(
        trials,
        [&](std::size_t begin, std::size_t end) {
            std::vector<double> out;
            for (std::size_t t = begin; t < end; ++t) out.push_back(trial(t));
            return out;
        },
        std::vector<double>{},
        [](std::vector<double> acc, std::vector<double> part) {
            acc.insert(acc.end(), part.begin(), part.end());
            return acc;
        },
        1);
}

}  // namespace

MetricExperimentReport metric_r3_experiment(const IntegerSet& a, double s, std::size_t n,
                                            std::size_t trials, std::uint64_t seed) {
    if (n < 3 || n > a.size()) throw std::invalid_argument("metric experiment: need 3 <= N <= |A|");
    if (!(s > 0.0) || s > static_cast<double>(n) / 2.0) throw std::invalid_argument("metric experiment: need 0 < s <= N/2");
    if (trials < 1) throw std::invalid_argument("metric experiment: need at least one trial");
    if (static_cast<double>(n) * static_cast<double>(trials) > 1e9) {
        throw std::invalid_argument("metric experiment: N * trials exceeds 1e9");
    }
    const IntegerSet an = a.prefix(n);
    const ScaleVector scales = ScaleVector::uniform(3, s);
    auto samples = run_trials(trials, [&](std::size_t t) {
        const double alpha = CounterStream(seed, t).uniform(0);
        std::vector<double> pts(n);
        for (std::size_t i = 0; i < n; ++i) pts[i] = fractional_product(an[i], alpha);
        return r_k_distinct(PointSequence(std::move(pts)), scales).value;
    });

    MetricExperimentReport rep;
    rep.s = s;
    rep.n = n;
    rep.trials = trials;
    rep.seed = seed;
    const auto above = std::count_if(samples.begin(), samples.end(), [&](double v) { return v > 4.0 * s * s; });
    rep.fraction_above = static_cast<double>(above) / static_cast<double>(trials);
    const SampleStats st = summarize(std::move(samples));
    rep.mean = st.mean;
    rep.variance = st.variance;
    rep.std_error = std::sqrt(st.variance / static_cast<double>(trials));
    const double nd = static_cast<double>(n);
    const double t_count = static_cast<double>(three_ap_count(an));
    rep.lower_bound = 2.0 * s * t_count / (nd * nd);
    rep.energy_ratio = static_cast<double>(additive_energy(an)) / (nd * nd * nd);
    rep.ap_ratio = t_count / (nd * nd);
    return rep;
}

SampleStats random_correlation_stats(const BoxVector& boxes, std::size_t n, std::size_t trials,
                                     std::uint64_t seed) {
    if (trials < 2) throw std::invalid_argument("random_correlation_stats: need at least two trials");
    if (static_cast<double>(n) * static_cast<double>(trials) > 1e9) {
        throw std::invalid_argument("random_correlation_stats: N * trials exceeds 1e9");
    }
    return summarize(run_trials(trials, [&](std::size_t t) {
        GeneratorSpec spec;
        spec.kind = SequenceKind::uniform_random;
        spec.seed = CounterStream(seed, t + 1).bits(0);
        return r_k_box(generate(spec, n), boxes).value;
    }));
}

}  // namespace corrkit
