#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace corrkit {

enum class VerifyStatus { pass, fail, report_only };

struct VerifyEntry {
    std::string name;
    std::string reference;  // the identity or inequality being checked
    VerifyStatus status = VerifyStatus::pass;
    double measured = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
};

struct VerifyReport {
    std::vector<VerifyEntry> entries;
    bool passed() const;
};

struct VerifyOptions {
    bool full = false;  // adds the N = 10^5 statistical checks
    std::uint64_t seed = 7;
};

/// Runs the identity and inequality suite. Deterministic given the seed.
VerifyReport run_verify(const VerifyOptions& options);

std::string to_string(VerifyStatus status);
nlohmann::json to_json(const VerifyReport& report);

}  // namespace corrkit
