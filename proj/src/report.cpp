#include "corrkit/report.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace corrkit {

using nlohmann::json;

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

json to_json(const CorrelationReport& rep) {
    json j;
    j["schema"] = kSchema;
    j["statistic"] = rep.statistic;
    j["k"] = rep.k;
    j["N"] = rep.n;
    if (!rep.scales.empty()) j["scales"] = rep.scales;
    if (!rep.boxes.empty()) {
        json boxes = json::array();
        for (auto [a, b] : rep.boxes) boxes.push_back({a, b});
        j["boxes"] = boxes;
    }
    if (!rep.test_function.empty()) {
        j["test_function"] = rep.test_function;
        j["support_radius"] = rep.support_radius;
    }
    if (rep.raw_count) j["raw_count"] = *rep.raw_count;
    j["value"] = rep.value;
    return j;
}

CorrelationReport correlation_report_from_json(const json& j) {
    if (!j.is_object() || j.value("schema", "") != kSchema) {
        throw std::runtime_error(std::string("expected a report with schema ") + kSchema);
    }
    try {
        CorrelationReport rep;
        rep.statistic = j.at("statistic").get<std::string>();
        rep.k = j.at("k").get<int>();
        rep.n = j.at("N").get<std::size_t>();
        if (j.contains("scales")) rep.scales = j["scales"].get<std::vector<double>>();
        if (j.contains("boxes")) {
            for (const auto& b : j["boxes"]) rep.boxes.emplace_back(b.at(0).get<double>(), b.at(1).get<double>());
        }
        if (j.contains("test_function")) {
            rep.test_function = j["test_function"].get<std::string>();
            rep.support_radius = j.at("support_radius").get<double>();
        }
        if (j.contains("raw_count")) rep.raw_count = j["raw_count"].get<std::uint64_t>();
        rep.value = j.at("value").get<double>();
        return rep;
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("malformed report: ") + e.what());
    }
}

json to_json(const MomentReport& rep) {
    return json{{"schema", kSchema}, {"k", rep.k},     {"s", rep.s},
                {"N", rep.n},        {"I_k", rep.i_k}, {"I_k_star", rep.i_k_star}};
}

json to_json(const MetricExperimentReport& rep) {
    return json{{"schema", kSchema},
                {"s", rep.s},
                {"N", rep.n},
                {"trials", rep.trials},
                {"seed", rep.seed},
                {"mean", rep.mean},
                {"variance", rep.variance},
                {"std_error", rep.std_error},
                {"lower_bound", rep.lower_bound},
                {"fraction_above_4s2", rep.fraction_above},
                {"energy_over_N3", rep.energy_ratio},
                {"ap_over_N2", rep.ap_ratio}};
}

json to_json(const DyadicProfile& profile) {
    return json{{"level", profile.level}, {"masses", profile.masses}};
}

void write_csv(std::ostream& out, const std::vector<CorrelationReport>& reports) {
    out << "statistic,k,N,parameters,raw_count,value\n";
    for (const auto& rep : reports) {
        std::string params;
        for (double s : rep.scales) params += (params.empty() ? "" : ";") + format_double(s);
        for (auto [a, b] : rep.boxes) {
            params += (params.empty() ? "" : ";") + format_double(a) + ":" + format_double(b);
        }
        if (!rep.test_function.empty()) params = rep.test_function + "@" + format_double(rep.support_radius);
        out << rep.statistic << ',' << rep.k << ',' << rep.n << ',' << params << ','
            << (rep.raw_count ? std::to_string(*rep.raw_count) : "") << ',' << format_double(rep.value) << '\n';
    }
}

std::string to_decimal(unsigned __int128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return s;
}

}  // namespace corrkit
