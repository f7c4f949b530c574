#pragma once

#include <cstddef>

#include "corrkit/correlations.hpp"
#include "corrkit/point_sequence.hpp"

namespace corrkit {

/// lambda_N(s; i, j) = {s/N - ||x_i - x_j||}^+, the measure of the overlap
/// of the balls of radius s/(2N) around x_i and x_j. Requires s <= N. For
/// s > N/2 the formula still evaluates but no longer equals the measure of
/// the intersection of the two arcs.
double lambda_overlap(const PointSequence& seq, double s, std::size_t i, std::size_t j);

/// L_i(s) = sum_j lambda_N(s; i, j) for every i, in original index order.
std::vector<double> overlap_sums(const PointSequence& seq, double s);

/// C_k^* = N^{k-2} sum_i prod_r L_i(s_r). Scales must be <= N.
double c_k_star(const PointSequence& seq, const ScaleVector& scales);

/// C_k^*(A; s, N): the same sum with every index restricted to points in
/// the half-open interval A = [lo, hi) of [0, 1).
double c_k_star_local(const PointSequence& seq, double s, double lo, double hi, int k);

/// C_k over distinct index tuples, by direct enumeration (oracle budget
/// applies).
double c_k_distinct_bruteforce(const PointSequence& seq, const ScaleVector& scales);

}  // namespace corrkit
