#include "corrkit/circle.hpp"

#include <algorithm>
#include <cmath>

namespace corrkit {

double fractional_part(double x) {
    double f = x - std::floor(x);
    // x slightly below an integer can round up to exactly 1.
    return f >= 1.0 ? 0.0 : f;
}

double circle_distance(double x, double y) {
    double f = fractional_part(x - y);
    return std::min(f, 1.0 - f);
}

double signed_distance(double x) {
    double f = fractional_part(x);
    return f <= 0.5 ? f : f - 1.0;
}

}  // namespace corrkit
