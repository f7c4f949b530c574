#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "corrkit/point_sequence.hpp"

namespace corrkit {

enum class SequenceKind {
    uniform_random,         // i.i.d. uniform, counter-based stream of `seed`
    kronecker,              // {n alpha}
    polynomial,             // {n^degree alpha}
    dilated,                // {a_n alpha} for the stored integer sequence
    dyadic_counterexample,  // 0, 0, 1/2, 1/2, 1/4, 1/4, 3/4, 3/4, ...
    van_der_corput,         // base-2 radical inverse of n
};

std::string_view to_string(SequenceKind kind);
std::optional<SequenceKind> parse_sequence_kind(std::string_view name);

struct GeneratorSpec {
    SequenceKind kind = SequenceKind::uniform_random;
    double alpha = 0.0;
    int degree = 1;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> integers;  // dilated only
};

/// Throws std::invalid_argument when the parameters are unusable for the
/// first n terms (degree < 1, integers not strictly increasing or too few,
/// non-finite alpha).
void validate(const GeneratorSpec& spec, std::size_t n);

/// Term number `index` (1-based), reduced mod 1.
double sequence_term(const GeneratorSpec& spec, std::uint64_t index);

/// Terms begin+1 .. end. Equal to the corresponding slice of generate().
std::vector<double> generate_range(const GeneratorSpec& spec, std::size_t begin, std::size_t end);

/// First n terms of the sequence.
PointSequence generate(const GeneratorSpec& spec, std::size_t n);

/// x_n = (2 ceil(k/2) - 1) / 2^m for n = 2^m + k, 1 <= k <= 2^m, with
/// x_1 = x_2 = 0.
PointSequence dyadic_counterexample(std::size_t n);
double dyadic_counterexample_term(std::uint64_t index);

/// {a x}, with a*x formed exactly in integer arithmetic before the single
/// final rounding.
double fractional_product(std::uint64_t a, double x);

/// {a x} where only a mod 2^128 is known. `a_below_2_75` states that the
/// true a is smaller than 2^75; it is required when x < 2^-75.
double fractional_product_wide(unsigned __int128 a_mod, bool a_below_2_75, double x);

/// One positive integer per line ('#' comments allowed), strictly
/// increasing. Throws std::runtime_error on violations.
std::vector<std::uint64_t> read_integers(std::istream& in);

}  // namespace corrkit
