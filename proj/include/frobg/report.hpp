#pragma once

// Machine-readable outcome of a batch of checks.

#include "frobg/numeric.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace frobg {

enum class CheckStatus { Pass, Fail, Skipped };

std::string status_name(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Skipped;
    Real max_residual = 0;
    Real tolerance = 0;
    std::size_t points = 0;
    std::string notes;

    /// Status is pass exactly when residual <= tolerance.
    static CheckResult measured(std::string name, const Real& residual, const Real& tolerance, std::size_t points,
                                std::string notes = {});
    static CheckResult skipped(std::string name, std::string notes);
};

struct GammaSummary {
    Rational theorem1;
    std::optional<Scalar> euler_applied;
    std::optional<Rational> table_value;
    bool consistent = false;
};

struct VerificationReport {
    static constexpr int kSchemaVersion = 1;

    std::string model;
    std::uint64_t seed = 0;
    unsigned precision = kDefaultPrecision;
    std::vector<CheckResult> checks;
    std::optional<GammaSummary> gamma;
    std::map<std::string, std::string> metadata;

    /// No check failed (skipped checks do not count as failures).
    bool passed() const;
    nlohmann::ordered_json to_json() const;
    std::string to_text() const;
};

/// JSON Schema (draft 2020-12) for VerificationReport::to_json.
const nlohmann::ordered_json& report_schema();

}  // namespace frobg
