#include "corrkit/point_sequence.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>

namespace corrkit {

PointSequence::PointSequence(std::vector<double> points) : points_(std::move(points)) {
    if (points_.empty()) throw std::invalid_argument("PointSequence: empty point list");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const double x = points_[i];
        if (!(x >= 0.0 && x < 1.0)) {
            throw std::invalid_argument("PointSequence: point " + std::to_string(i) +
                                        " = " + std::to_string(x) + " outside [0,1)");
        }
    }
    order_.resize(points_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return points_[a] < points_[b]; });
    sorted_.resize(points_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) sorted_[i] = points_[order_[i]];
}

PointSequence PointSequence::prefix(std::size_t n) const {
    if (n == 0 || n > size()) throw std::invalid_argument("PointSequence::prefix: bad length");
    return PointSequence(std::vector<double>(points_.begin(), points_.begin() + static_cast<std::ptrdiff_t>(n)));
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

PointSequence read_points(std::istream& in) {
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        double x = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
        if (ec != std::errc{} || ptr != text.data() + text.size()) {
            throw std::runtime_error("point file line " + std::to_string(line_no) +
                                     ": not a decimal number: '" + std::string(text) + "'");
        }
        if (!(x >= 0.0 && x < 1.0)) {
            throw std::runtime_error("point file line " + std::to_string(line_no) +
                                     ": value outside [0,1): " + std::string(text));
        }
        values.push_back(x);
    }
    if (values.empty()) throw std::runtime_error("point file contains no points");
    return PointSequence(std::move(values));
}

PointSequence read_points_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open point file " + path.string());
    return read_points(in);
}

void write_points(std::ostream& out, const PointSequence& seq) {
    char buf[32];
    for (double x : seq.points()) {
        std::snprintf(buf, sizeof buf, "%.17g\n", x);
        out << buf;
    }
}

}  // namespace corrkit
