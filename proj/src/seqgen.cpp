#include "corrkit/seqgen.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <istream>
#include <stdexcept>
#include <string>

#include "corrkit/rng.hpp"

namespace corrkit {

using u128 = unsigned __int128;

// ---- rng -----------------------------------------------------------------

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kStreamMul = 0xD1B54A32D192ED03ULL;
}  // namespace

std::uint64_t CounterStream::mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

CounterStream::CounterStream(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(mix64(seed) ^ (stream * kStreamMul + kGolden))) {}

std::uint64_t CounterStream::bits(std::uint64_t index) const {
    return mix64(key_ + (index + 1) * kGolden);
}

double CounterStream::uniform(std::uint64_t index) const {
    return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
}

// ---- exact reduction -------------------------------------------------------

double fractional_product_wide(u128 a_mod, bool a_below_2_75, double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("fractional_product: non-finite factor");
    if (x == 0.0) return 0.0;
    const bool negative = x < 0.0;
    int exponent = 0;
    const double mantissa = std::frexp(std::fabs(x), &exponent);  // |x| = mantissa * 2^exponent
    const auto m = static_cast<std::uint64_t>(std::ldexp(mantissa, 53));
    const int q = 53 - exponent;  // |x| = m * 2^-q
    if (q <= 0) return 0.0;
    const u128 product = a_mod * m;  // exact modulo 2^128
    // {-y} = 1 - {y}: negate the numerator modulo 2^q so that the result is
    // rounded only once.
    if (q <= 128) {
        u128 numerator = negative ? u128{0} - product : product;
        if (q < 128) numerator &= (u128{1} << q) - 1;
        const double value = std::ldexp(static_cast<double>(numerator), -q);
        return value >= 1.0 ? 0.0 : value;
    }
    if (!a_below_2_75) {
        throw std::invalid_argument("fractional_product: factor too small for exact reduction");
    }
    // Here a*m < 2^128 < 2^q, so product is the whole numerator.
    if (product == 0) return 0.0;
    if (!negative) return std::ldexp(static_cast<double>(product), -q);
    // 1 - product/2^q scaled by 2^128, truncated to an odd sticky value.
    const int shift = q - 127;
    const u128 kept = shift >= 128 ? 0 : product >> shift;
    const bool sticky = shift >= 128 || (product & ((u128{1} << shift) - 1)) != 0;
    const u128 scaled = u128{0} - (2 * kept + (sticky ? 1 : 0));
    const double value = std::ldexp(static_cast<double>(scaled), -128);
    return value >= 1.0 ? 0.0 : value;
}

double fractional_product(std::uint64_t a, double x) { return fractional_product_wide(a, true, x); }

// ---- generators ------------------------------------------------------------

std::string_view to_string(SequenceKind kind) {
    switch (kind) {
        case SequenceKind::uniform_random: return "uniform_random";
        case SequenceKind::kronecker: return "kronecker";
        case SequenceKind::polynomial: return "polynomial";
        case SequenceKind::dilated: return "dilated";
        case SequenceKind::dyadic_counterexample: return "dyadic_counterexample";
        case SequenceKind::van_der_corput: return "van_der_corput";
    }
    return "unknown";
}

std::optional<SequenceKind> parse_sequence_kind(std::string_view name) {
    for (auto kind : {SequenceKind::uniform_random, SequenceKind::kronecker, SequenceKind::polynomial,
                      SequenceKind::dilated, SequenceKind::dyadic_counterexample,
                      SequenceKind::van_der_corput}) {
        if (name == to_string(kind)) return kind;
    }
    if (name == "uniform") return SequenceKind::uniform_random;
    if (name == "dyadic") return SequenceKind::dyadic_counterexample;
    if (name == "vdc") return SequenceKind::van_der_corput;
    return std::nullopt;
}

void validate(const GeneratorSpec& spec, std::size_t n) {
    if (n == 0) throw std::invalid_argument("generate: N must be >= 1");
    if (!std::isfinite(spec.alpha)) throw std::invalid_argument("generate: alpha must be finite");
    switch (spec.kind) {
        case SequenceKind::polynomial:
            if (spec.degree < 1) throw std::invalid_argument("generate: polynomial degree must be >= 1");
            break;
        case SequenceKind::dilated: {
            if (spec.integers.size() < n) {
                throw std::invalid_argument("generate: dilated sequence needs " + std::to_string(n) +
                                            " integers, have " + std::to_string(spec.integers.size()));
            }
            for (std::size_t i = 0; i < spec.integers.size(); ++i) {
                if (spec.integers[i] == 0) throw std::invalid_argument("generate: integers must be positive");
                if (i > 0 && spec.integers[i] <= spec.integers[i - 1]) {
                    throw std::invalid_argument("generate: integer sequence must be strictly increasing");
                }
            }
            break;
        }
        default:
            break;
    }
}

double dyadic_counterexample_term(std::uint64_t index) {
    if (index == 0) throw std::invalid_argument("dyadic_counterexample_term: index is 1-based");
    if (index <= 2) return 0.0;
    // index = 2^m + k with 1 <= k <= 2^m
    const int m = std::bit_width(index - 1) - 1;
    const std::uint64_t k = index - (std::uint64_t{1} << m);
    const std::uint64_t numerator = 2 * ((k + 1) / 2) - 1;
    return std::ldexp(static_cast<double>(numerator), -m);
}

namespace {

double van_der_corput_term(std::uint64_t n) {
    double value = 0.0;
    double scale = 0.5;
    for (; n != 0; n >>= 1, scale *= 0.5) {
        if (n & 1) value += scale;
    }
    return value;
}

double polynomial_term(std::uint64_t n, int degree, double alpha) {
    u128 power = 1;
    bool below = true;  // true power < 2^75
    const double log2n = std::log2(static_cast<double>(n));
    for (int d = 0; d < degree; ++d) power *= n;
    if (static_cast<double>(degree) * log2n >= 74.5) below = false;
    return fractional_product_wide(power, below, alpha);
}

}  // namespace

double sequence_term(const GeneratorSpec& spec, std::uint64_t index) {
    switch (spec.kind) {
        case SequenceKind::uniform_random:
            return CounterStream(spec.seed).uniform(index - 1);
        case SequenceKind::kronecker:
            return fractional_product(index, spec.alpha);
        case SequenceKind::polynomial:
            return polynomial_term(index, spec.degree, spec.alpha);
        case SequenceKind::dilated:
            return fractional_product(spec.integers.at(index - 1), spec.alpha);
        case SequenceKind::dyadic_counterexample:
            return dyadic_counterexample_term(index);
        case SequenceKind::van_der_corput:
            return van_der_corput_term(index);
    }
    throw std::invalid_argument("sequence_term: unknown kind");
}

std::vector<double> generate_range(const GeneratorSpec& spec, std::size_t begin, std::size_t end) {
    if (begin > end) throw std::invalid_argument("generate_range: begin > end");
    validate(spec, end == 0 ? 1 : end);
    std::vector<double> out;
    out.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) out.push_back(sequence_term(spec, i + 1));
    return out;
}

PointSequence generate(const GeneratorSpec& spec, std::size_t n) {
    validate(spec, n);
    return PointSequence(generate_range(spec, 0, n));
}

PointSequence dyadic_counterexample(std::size_t n) {
    GeneratorSpec spec;
    spec.kind = SequenceKind::dyadic_counterexample;
    return generate(spec, n);
}

std::vector<std::uint64_t> read_integers(std::istream& in) {
    std::vector<std::uint64_t> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t\r");
        const char* b = line.data() + first;
        const char* e = line.data() + last + 1;
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(b, e, v);
        if (ec != std::errc{} || ptr != e || v == 0) {
            throw std::runtime_error("integer file line " + std::to_string(line_no) +
                                     ": expected a positive integer");
        }
        if (!values.empty() && v <= values.back()) {
            throw std::runtime_error("integer file line " + std::to_string(line_no) +
                                     ": sequence must be strictly increasing");
        }
        values.push_back(v);
    }
    if (values.empty()) throw std::runtime_error("integer file contains no integers");
    return values;
}

}  // namespace corrkit
