#pragma once

// Registry of Frobenius models with their expected G-functions, anomalies and
// caustic data, plus reference rows for groups whose prepotentials are not
// built in. Models can also be loaded from JSON model files.

#include "frobg/getzler.hpp"
#include "frobg/report.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace frobg {

using ModelParams = std::map<std::string, Rational>;

struct ModelEntry {
    Prepotential model;
    GCandidate G;
    Rational gamma;
    std::vector<CausticDatum> caustics;
    std::optional<long> n_log;  // present for models with a logarithmic caustic
    ModelParams params;
    std::vector<std::string> notes;

    /// "cp1" or "cp1(r=2)"
    std::string label() const;
};

std::vector<std::string> list_models();

/// Builds and validates a registered model. Throws UnknownModel, InvalidModel.
ModelEntry get_model(const std::string& name, const ModelParams& params = {});

/// Load-time invariants: WDVV identity, quasihomogeneity, stored gamma equals the anomaly computed from the charges.
std::vector<CheckResult> validate_entry(const ModelEntry& entry);

/// Validates every registered model at its default parameters.
VerificationReport validate_all();

/// Validates the given entries; check names are prefixed by the entry label.
VerificationReport validate_entries(const std::vector<ModelEntry>& entries);

/// Model-file documents. Rationals are "p/q" strings; identity_index is 1-based.
ModelEntry model_from_json(const nlohmann::json& j);
nlohmann::ordered_json model_to_json(const ModelEntry& entry);
ModelEntry load_model_file(const std::string& path);

/// Reference rows for Coxeter groups (caustic types, G, anomaly).
struct CoxeterReference {
    std::string group;
    std::vector<long> degrees;        // degrees of basic invariants, largest = Coxeter number
    std::vector<long> caustic_types;  // N_i
    std::optional<std::string> kappa;  // leading caustic polynomial in flat coordinates, when known
    std::string g_function;
    Rational gamma;
};

/// One representative per row of the Coxeter caustic and G-function tables
/// (families instantiated at small rank).
std::vector<CoxeterReference> coxeter_references();

/// Euler field t_a (d_a / h) d/dt_a for the given degrees, ordered by decreasing degree.
EulerField coxeter_euler_field(const std::vector<long>& degrees);

struct AnomalyReference {
    std::string group;
    std::string formula;
};

/// Scaling anomalies of extended affine Weyl orbit spaces, as formulas in d_k.
std::vector<AnomalyReference> eaw_anomaly_references();

}  // namespace frobg
