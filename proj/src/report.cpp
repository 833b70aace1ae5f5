#include "frobg/report.hpp"

#include "frobg/errors.hpp"

#include <algorithm>
#include <sstream>

namespace frobg {

std::string status_name(CheckStatus s) {
    switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
    }
    return "skipped";
}

CheckResult CheckResult::measured(std::string name, const Real& residual, const Real& tolerance, std::size_t points,
                                  std::string notes) {
    CheckResult r;
    r.name = std::move(name);
    r.max_residual = residual;
    r.tolerance = tolerance;
    r.points = points;
    r.notes = std::move(notes);
    r.status = residual <= tolerance ? CheckStatus::Pass : CheckStatus::Fail;
    return r;
}

CheckResult CheckResult::skipped(std::string name, std::string notes) {
    CheckResult r;
    r.name = std::move(name);
    r.notes = std::move(notes);
    return r;
}

bool VerificationReport::passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::Fail; });
}

nlohmann::ordered_json VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["model"] = model;
    j["seed"] = seed;
    j["precision"] = precision;
    j["passed"] = passed();
    auto checks_json = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["status"] = status_name(c.status);
        cj["max_residual"] = to_decimal(c.max_residual);
        cj["tolerance"] = to_decimal(c.tolerance);
        cj["points"] = c.points;
        cj["notes"] = c.notes;
        checks_json.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks_json);
    if (gamma) {
        nlohmann::ordered_json g;
        g["theorem1"] = to_string(gamma->theorem1);
        g["euler_applied"] = gamma->euler_applied ? nlohmann::ordered_json(gamma->euler_applied->to_string())
                                                  : nlohmann::ordered_json(nullptr);
        g["table_value"] =
            gamma->table_value ? nlohmann::ordered_json(to_string(*gamma->table_value)) : nlohmann::ordered_json(nullptr);
        g["consistent"] = gamma->consistent;
        j["gamma"] = std::move(g);
    } else {
        j["gamma"] = nullptr;
    }
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : metadata) meta[k] = v;
    j["metadata"] = std::move(meta);
    return j;
}

std::string VerificationReport::to_text() const {
    std::ostringstream out;
    out << "model " << model << "  seed " << seed << "  precision " << precision << '\n';
    std::size_t width = 5;
    for (const auto& c : checks) width = std::max(width, c.name.size());
    for (const auto& c : checks) {
        out << "  " << c.name << std::string(width - c.name.size() + 2, ' ') << status_name(c.status);
        if (c.status != CheckStatus::Skipped)
            out << "  residual " << to_decimal(c.max_residual, 4) << " <= " << to_decimal(c.tolerance, 4) << "  points "
                << c.points;
        if (!c.notes.empty()) out << "  (" << c.notes << ')';
        out << '\n';
    }
    if (gamma) {
        out << "  gamma: theorem1 " << to_string(gamma->theorem1);
        if (gamma->euler_applied) out << ", E(G) " << gamma->euler_applied->to_string();
        if (gamma->table_value) out << ", table " << to_string(*gamma->table_value);
        out << (gamma->consistent ? "  consistent" : "  INCONSISTENT") << '\n';
    }
    for (const auto& [k, v] : metadata) out << "  " << k << ": " << v << '\n';
    out << (passed() ? "PASS" : "FAIL") << '\n';
    return out.str();
}

const nlohmann::ordered_json& report_schema() {
    static const nlohmann::ordered_json schema = nlohmann::ordered_json::parse(R"({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "title": "VerificationReport",
  "type": "object",
  "required": ["schema_version", "model", "seed", "precision", "passed", "checks", "gamma", "metadata"],
  "properties": {
    "schema_version": {"const": 1},
    "model": {"type": "string"},
    "seed": {"type": "integer", "minimum": 0},
    "precision": {"type": "integer", "minimum": 1},
    "passed": {"type": "boolean"},
    "checks": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["name", "status", "max_residual", "tolerance", "points", "notes"],
        "properties": {
          "name": {"type": "string"},
          "status": {"enum": ["pass", "fail", "skipped"]},
          "max_residual": {"type": "string"},
          "tolerance": {"type": "string"},
          "points": {"type": "integer", "minimum": 0},
          "notes": {"type": "string"}
        }
      }
    },
    "gamma": {
      "type": ["object", "null"],
      "required": ["theorem1", "euler_applied", "table_value", "consistent"],
      "properties": {
        "theorem1": {"type": "string"},
        "euler_applied": {"type": ["string", "null"]},
        "table_value": {"type": ["string", "null"]},
        "consistent": {"type": "boolean"}
      }
    },
    "metadata": {"type": "object", "additionalProperties": {"type": "string"}}
  }
})");
    return schema;
}

}  // namespace frobg
