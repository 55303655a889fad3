#pragma once

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace bifractal::cli {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string summary;   ///< one-line human-readable outcome
    nlohmann::json details; ///< measured values; no timings, so reruns compare byte for byte
    double seconds = 0.0;   ///< wall time, kept out of the report
};

struct SuiteReport {
    std::vector<CriterionResult> criteria;

    [[nodiscard]] bool pass() const;
    [[nodiscard]] nlohmann::json to_json() const;
};

/// Runs criteria 1-11 (12, determinism, needs two runs and is checked by the
/// caller). Prints one line per criterion to `progress` when given.
[[nodiscard]] SuiteReport run_suite(std::ostream* progress = nullptr);

/// "PASS AC3 contraction rate: ..." style line.
[[nodiscard]] std::string format_line(const CriterionResult& r);

} // namespace bifractal::cli
