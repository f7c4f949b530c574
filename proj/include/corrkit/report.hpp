#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "corrkit/arithmetic.hpp"
#include "corrkit/correlations.hpp"
#include "corrkit/distribution.hpp"
#include "corrkit/intervalstats.hpp"

namespace corrkit {

inline constexpr const char* kSchema = "corrkit/1";

nlohmann::json to_json(const CorrelationReport& rep);
/// Inverse of to_json. Throws std::runtime_error on a schema mismatch or
/// missing fields.
CorrelationReport correlation_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MomentReport& rep);
nlohmann::json to_json(const MetricExperimentReport& rep);
nlohmann::json to_json(const DyadicProfile& profile);

/// CSV with a header row; one line per report.
void write_csv(std::ostream& out, const std::vector<CorrelationReport>& reports);

/// Decimal rendering of a 128-bit count.
std::string to_decimal(unsigned __int128 v);

}  // namespace corrkit
