#pragma once

// Arithmetic on the circle R/Z.

namespace corrkit {

/// Fractional part {x} in [0, 1).
double fractional_part(double x);

/// Distance of x - y to the nearest integer, in [0, 1/2].
double circle_distance(double x, double y);

/// Representative of x mod 1 in (-1/2, 1/2]: {x} if {x} <= 1/2, else {x} - 1.
double signed_distance(double x);

/// max(x, 0)
inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

}  // namespace corrkit
