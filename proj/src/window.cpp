#include "corrkit/window.hpp"

#include <algorithm>

#include "corrkit/circle.hpp"

namespace corrkit {

namespace {
// Far larger than any rounding in the wrapped coordinates (values < 2).
constexpr double kSlack = 1e-12;
}  // namespace

CircularWindow::CircularWindow(const PointSequence& seq)
    : sorted_(seq.sorted().begin(), seq.sorted().end()) {
    const std::size_t n = sorted_.size();
    wrapped_.resize(3 * n);
    for (std::size_t i = 0; i < n; ++i) {
        wrapped_[i] = sorted_[i] - 1.0;
        wrapped_[n + i] = sorted_[i];
        wrapped_[2 * n + i] = sorted_[i] + 1.0;
    }
}

bool CircularWindow::full_scan(double radius) const { return radius + 2 * kSlack >= 0.5; }

CircularWindow::Range CircularWindow::locate(double center, double radius) const {
    const auto lower = [&](double v) {
        return static_cast<std::size_t>(std::lower_bound(wrapped_.begin(), wrapped_.end(), v) -
                                        wrapped_.begin());
    };
    const auto upper = [&](double v) {
        return static_cast<std::size_t>(std::upper_bound(wrapped_.begin(), wrapped_.end(), v) -
                                        wrapped_.begin());
    };
    Range r{};
    r.outer_lo = lower(center - radius - kSlack);
    r.outer_hi = upper(center + radius + kSlack);
    if (radius > kSlack) {
        r.inner_lo = lower(center - radius + kSlack);
        r.inner_hi = upper(center + radius - kSlack);
    } else {
        r.inner_lo = r.inner_hi = r.outer_lo;
    }
    return r;
}

std::size_t CircularWindow::count(double center, double radius) const {
    const std::size_t n = sorted_.size();
    if (radius >= 0.5) return n;
    if (full_scan(radius)) {
        return static_cast<std::size_t>(std::count_if(sorted_.begin(), sorted_.end(), [&](double x) {
            return circle_distance(center, x) <= radius;
        }));
    }
    const Range r = locate(center, radius);
    std::size_t total = r.inner_hi - r.inner_lo;
    for (std::size_t i = r.outer_lo; i < r.inner_lo; ++i) {
        total += circle_distance(center, sorted_[i % n]) <= radius;
    }
    for (std::size_t i = r.inner_hi; i < r.outer_hi; ++i) {
        total += circle_distance(center, sorted_[i % n]) <= radius;
    }
    return total;
}

void CircularWindow::collect(double center, double radius, std::vector<std::size_t>& out) const {
    const std::size_t n = sorted_.size();
    if (full_scan(radius)) {
        for (std::size_t i = 0; i < n; ++i) {
            if (circle_distance(center, sorted_[i]) <= radius) out.push_back(i);
        }
        return;
    }
    const Range r = locate(center, radius);
    for (std::size_t i = r.outer_lo; i < r.inner_lo; ++i) {
        if (circle_distance(center, sorted_[i % n]) <= radius) out.push_back(i % n);
    }
    for (std::size_t i = r.inner_lo; i < r.inner_hi; ++i) out.push_back(i % n);
    for (std::size_t i = r.inner_hi; i < r.outer_hi; ++i) {
        if (circle_distance(center, sorted_[i % n]) <= radius) out.push_back(i % n);
    }
}

}  // namespace corrkit
