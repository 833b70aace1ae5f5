#include "frobg/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace frobg {

namespace {

Rational param(const ModelParams& params, const std::string& key, const Rational& fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

long positive_integer(const Rational& x, long minimum, const std::string& what) {
    if (denominator(x) != 1 || x < minimum)
        fail(ErrorCode::InvalidModel, what + " must be an integer >= " + std::to_string(minimum) + ", got " + to_string(x));
    return numerator(x).convert_to<long>();
}

void reject_unknown(const ModelParams& params, const std::vector<std::string>& allowed, const std::string& model) {
    for (const auto& [k, v] : params)
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            fail(ErrorCode::InvalidModel, model + " has no parameter '" + k + "'");
}

EulerField euler(std::vector<Rational> weights, std::vector<Rational> shifts = {}) {
    if (shifts.empty()) shifts.assign(weights.size(), Rational(0));
    return EulerField{std::move(weights), std::move(shifts)};
}

ModelEntry make_cp1(const ModelParams& params) {
    reject_unknown(params, {"r"}, "cp1");
    const Rational r = param(params, "r", 1);
    const long ri = positive_integer(r, 1, "cp1 parameter r");
    ModelEntry e{Prepotential("cp1", parse_expression("1/2*t1^2*t2 + exp(" + to_string(r) + "*t2)"), 0,
                              euler({1, 0}, {0, Rational(2) / r})),
                 GCandidate{{0, -r / 24}, {}},
                 Rational(-1, 12),
                 {},
                 ri,
                 {{"r", r}},
                 {"no finite caustic; the logarithmic caustic sits at t2 -> -infinity with N_log = r"}};
    return e;
}

ModelEntry make_eaw_a2(const ModelParams& params) {
    reject_unknown(params, {}, "eaw_a2");
    ModelEntry e{Prepotential("eaw_a2", parse_expression("1/2*t1^2*t3 + 1/2*t1*t2^2 - 1/24*t2^4 + t2*exp(t3)"), 0,
                              euler({1, Rational(1, 2), 0}, {0, 0, Rational(3, 2)})),
                 GCandidate{{0, 0, Rational(-1, 24)}, {}},
                 Rational(-1, 16),
                 {CausticDatum{parse_expression("4*t2^3 - 27*exp(t3)"), 3}},
                 1,
                 {},
                 {"caustic polynomial from the cubed factor of the discriminant of det(g - lambda eta)",
                  "d_k = 2/3, so the Euler shift is 1/d_k = 3/2"}};
    return e;
}

ModelEntry make_i2(const ModelParams& params) {
    reject_unknown(params, {"h"}, "i2");
    const Rational h = param(params, "h", 5);
    positive_integer(h, 3, "i2 parameter h");
    const Rational norm = h * h * h - h;
    const Expression F = parse_expression("1/2*t1^2*t2 + 1/" + to_string(norm) + "*t2^" + to_string(h + 1));
    const Rational coeff = -(h - 2) * (h - 3) / (24 * h);
    GCandidate G;
    if (coeff != 0) G.logs.push_back({coeff, var(1)});
    ModelEntry e{Prepotential("i2", F, 0, euler({1, Rational(2) / h})),
                 G,
                 -(h - 2) * (h - 3) / (12 * h * h),
                 {CausticDatum{var(1), numerator(h).convert_to<long>()}},
                 std::nullopt,
                 {{"h", h}},
                 {"normalized so that c_222 = t2^(h-2)"}};
    return e;
}

ModelEntry make_a3(const ModelParams& params) {
    reject_unknown(params, {}, "a3_coxeter");
    ModelEntry e{
        Prepotential("a3_coxeter", parse_expression("1/2*t1^2*t3 + 1/2*t1*t2^2 - 1/16*t2^2*t3^2 + 1/960*t3^5"), 0,
                     euler({1, Rational(3, 4), Rational(1, 2)})),
        GCandidate{},
        Rational(0),
        {CausticDatum{parse_expression("27*t2^2 + 8*t3^3"), 3}},
        std::nullopt,
        {},
        {"flat coordinates of the unfolding p^4 + s2 p^2 + s1 p + s0: t3 = s2, t2 = s1, t1 = s0 - s2^2/8"}};
    return e;
}

ModelEntry make_legendre_s2(const ModelParams& params) {
    reject_unknown(params, {}, "legendre_s2_a2");
    ModelEntry e{Prepotential("legendre_s2_a2",
                              parse_expression("1/6*t2^3 + t1*t2*t3 + 1/6*t1*t3^3 + 1/2*t1^2*(log(t1) - 3/4)"), 1,
                              euler({Rational(3, 2), 1, Rational(1, 2)})),
                 GCandidate{{}, {{Rational(-1, 12), var(0)}}},
                 Rational(-1, 8),
                 {},
                 std::nullopt,
                 {},
                 {"image of eaw_a2 under the Legendre-type map with kappa = 2", "unit field d/dt2, d = 0"}};
    return e;
}

ModelEntry make_legendre_s3(const ModelParams& params) {
    reject_unknown(params, {}, "legendre_s3_a2");
    ModelEntry e{Prepotential("legendre_s3_a2", parse_expression("1/2*t1*t3^2 + 1/2*t2^2*t3 + 1/2*t1^2*log(t2)"), 2,
                              euler({2, Rational(3, 2), 1})),
                 GCandidate{{}, {{Rational(-1, 8), var(1)}}},
                 Rational(-3, 16),
                 {},
                 std::nullopt,
                 {},
                 {"image of eaw_a2 under the Legendre-type map with kappa = 3", "unit field d/dt3, d = -1"}};
    return e;
}

const std::map<std::string, std::function<ModelEntry(const ModelParams&)>>& registry() {
    static const std::map<std::string, std::function<ModelEntry(const ModelParams&)>> r{
        {"a3_coxeter", make_a3},           {"cp1", make_cp1},
        {"eaw_a2", make_eaw_a2},           {"i2", make_i2},
        {"legendre_s2_a2", make_legendre_s2}, {"legendre_s3_a2", make_legendre_s3},
    };
    return r;
}

CheckResult boolean_check(const std::string& name, bool ok, const std::string& notes = {}) {
    return CheckResult::measured(name, ok ? Real(0) : Real(1), Real(0), 0, notes);
}

void require_valid(const ModelEntry& e) {
    for (const auto& c : validate_entry(e))
        if (c.status == CheckStatus::Fail)
            fail(ErrorCode::InvalidModel, e.label() + " failed load-time check " + c.name + ": " + c.notes);
}

Rational json_rational(const nlohmann::json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    fail(ErrorCode::InvalidModel, "expected a rational as a \"p/q\" string, got " + j.dump());
}

std::vector<Rational> json_rationals(const nlohmann::json& j) {
    if (!j.is_array()) fail(ErrorCode::InvalidModel, "expected an array of rationals, got " + j.dump());
    std::vector<Rational> out;
    for (const auto& x : j) out.push_back(json_rational(x));
    return out;
}

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) fail(ErrorCode::InvalidModel, std::string("model file lacks field '") + key + "'");
    return j.at(key);
}

}  // namespace

std::string ModelEntry::label() const {
    if (params.empty()) return model.name();
    std::string s = model.name() + "(";
    bool first = true;
    for (const auto& [k, v] : params) {
        s += (first ? "" : ",") + k + "=" + to_string(v);
        first = false;
    }
    return s + ")";
}

std::vector<std::string> list_models() {
    std::vector<std::string> names;
    for (const auto& [k, v] : registry()) names.push_back(k);
    return names;
}

ModelEntry get_model(const std::string& name, const ModelParams& params) {
    auto it = registry().find(name);
    if (it == registry().end()) fail(ErrorCode::UnknownModel, "unknown model '" + name + "'");
    ModelEntry e = it->second(params);
    require_valid(e);
    return e;
}

std::vector<CheckResult> validate_entry(const ModelEntry& e) {
    const std::string p = e.label() + ":";
    std::vector<CheckResult> out;

    try {
        eta_metric(e.model);
        out.push_back(boolean_check(p + "eta", true));
    } catch (const Error& err) {
        out.push_back(boolean_check(p + "eta", false, err.what()));
        return out;
    }
    out.push_back(boolean_check(p + "wdvv", wdvv_identity(e.model)));

    std::optional<Rational> theorem1;
    try {
        quasihom_check(e.model);
        out.push_back(boolean_check(p + "quasihom", true, "d = " + to_string(*e.model.charge_d())));
        theorem1 = gamma_theorem1(e.model);
    } catch (const Error& err) {
        out.push_back(boolean_check(p + "quasihom", false, err.what()));
    }
    if (theorem1) {
        const Rational diff = *theorem1 - e.gamma;
        out.push_back(CheckResult::measured(p + "gamma", Real(diff < 0 ? Rational(-diff) : diff), Real(0), 0,
                                            "stored " + to_string(e.gamma) + ", from charges " + to_string(*theorem1)));
    }
    try {
        out.push_back(boolean_check(p + "bo7", check_bo7(e.G, e.model)));
    } catch (const Error& err) {
        out.push_back(boolean_check(p + "bo7", false, err.what()));
    }
    if (!e.caustics.empty() || e.n_log) {
        try {
            const Rational g = gamma_from_caustics(e.caustics, e.n_log.value_or(0), e.model.euler());
            out.push_back(boolean_check(p + "caustic-gamma", g == e.gamma, "from caustics " + to_string(g)));
        } catch (const Error& err) {
            out.push_back(boolean_check(p + "caustic-gamma", false, err.what()));
        }
    }
    return out;
}

VerificationReport validate_entries(const std::vector<ModelEntry>& entries) {
    VerificationReport r;
    r.model = "catalog";
    for (const auto& e : entries)
        for (auto& c : validate_entry(e)) r.checks.push_back(std::move(c));
    return r;
}

VerificationReport validate_all() {
    std::vector<ModelEntry> entries;
    for (const auto& [name, make] : registry()) entries.push_back(make({}));
    return validate_entries(entries);
}

static ModelEntry model_from_json_impl(const nlohmann::json& j) {
    if (!j.is_object()) fail(ErrorCode::InvalidModel, "model file must be a JSON object");
    const std::string name = field(j, "name").get<std::string>();
    const long n = field(j, "dimension").get<long>();
    const long identity = field(j, "identity_index").get<long>();
    if (n < 1) fail(ErrorCode::InvalidModel, "dimension must be positive");
    if (identity < 1 || identity > n) fail(ErrorCode::InvalidModel, "identity_index must lie in 1..dimension");
    const auto& ej = field(j, "euler");
    EulerField E{json_rationals(field(ej, "weights")),
                 ej.contains("shifts") ? json_rationals(ej.at("shifts")) : std::vector<Rational>(n, Rational(0))};
    if (E.weights.size() != static_cast<std::size_t>(n) || E.shifts.size() != static_cast<std::size_t>(n))
        fail(ErrorCode::InvalidModel, "euler weights and shifts need one entry per coordinate");

    GCandidate G;
    if (j.contains("G")) {
        const auto& gj = j.at("G");
        if (gj.contains("linear")) G.linear = json_rationals(gj.at("linear"));
        if (gj.contains("logs"))
            for (const auto& l : gj.at("logs"))
                G.logs.push_back({json_rational(field(l, "coeff")), parse_expression(field(l, "arg").get<std::string>())});
    }
    std::vector<CausticDatum> caustics;
    if (j.contains("caustics"))
        for (const auto& c : j.at("caustics")) {
            const long N = field(c, "N").get<long>();
            if (N < 3) fail(ErrorCode::InvalidModel, "caustic type N must be at least 3");
            caustics.push_back({parse_expression(field(c, "kappa").get<std::string>()), N});
        }
    std::optional<long> n_log;
    if (j.contains("N_log") && !j.at("N_log").is_null()) n_log = j.at("N_log").get<long>();

    ModelEntry e{Prepotential(name, parse_expression(field(j, "F").get<std::string>()),
                              static_cast<std::size_t>(identity - 1), std::move(E)),
                 std::move(G),
                 json_rational(field(j, "gamma")),
                 std::move(caustics),
                 n_log,
                 {},
                 {}};
    require_valid(e);
    return e;
}

ModelEntry model_from_json(const nlohmann::json& j) {
    try {
        return model_from_json_impl(j);
    } catch (const nlohmann::json::exception& ex) {
        fail(ErrorCode::InvalidModel, std::string("malformed model document: ") + ex.what());
    }
}

nlohmann::ordered_json model_to_json(const ModelEntry& e) {
    nlohmann::ordered_json j;
    const auto strings = [](const std::vector<Rational>& v) {
        auto a = nlohmann::ordered_json::array();
        for (const auto& x : v) a.push_back(to_string(x));
        return a;
    };
    j["name"] = e.model.name();
    j["dimension"] = e.model.dimension();
    j["identity_index"] = e.model.identity() + 1;
    j["euler"] = {{"weights", strings(e.model.euler().weights)}, {"shifts", strings(e.model.euler().shifts)}};
    j["F"] = e.model.F().to_string();
    auto logs = nlohmann::ordered_json::array();
    for (const auto& l : e.G.logs) logs.push_back({{"coeff", to_string(l.coeff)}, {"arg", l.arg.to_string()}});
    j["G"] = {{"linear", strings(e.G.linear)}, {"logs", logs}};
    j["gamma"] = to_string(e.gamma);
    auto caustics = nlohmann::ordered_json::array();
    for (const auto& c : e.caustics) caustics.push_back({{"kappa", c.kappa.to_string()}, {"N", c.N}});
    j["caustics"] = caustics;
    if (e.n_log) j["N_log"] = *e.n_log;
    return j;
}

ModelEntry load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Usage, "cannot open model file " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& ex) {
        fail(ErrorCode::InvalidModel, path + ": " + ex.what());
    }
    return model_from_json(j);
}

EulerField coxeter_euler_field(const std::vector<long>& degrees) {
    std::vector<long> d = degrees;
    std::sort(d.begin(), d.end(), std::greater<>());
    EulerField E;
    for (long x : d) {
        E.weights.push_back(Rational(x, d.front()));
        E.shifts.push_back(0);
    }
    return E;
}

std::vector<CoxeterReference> coxeter_references() {
    return {
        {"A3", {2, 3, 4}, {3}, "27*t2^2 + 8*t3^3", "0", Rational(0)},
        {"B3", {2, 4, 6}, {4, 3}, std::nullopt, "-1/48 log kappa1", Rational(-1, 72)},
        {"B4", {2, 4, 6, 8}, {4, 3}, std::nullopt, "-1/48 log kappa1", Rational(-1, 64)},
        {"D4", {2, 4, 4, 6}, {3}, std::nullopt, "0", Rational(0)},
        {"E6", {2, 5, 6, 8, 9, 12}, {3}, std::nullopt, "0", Rational(0)},
        {"E7", {2, 6, 8, 10, 12, 14, 18}, {3}, std::nullopt, "0", Rational(0)},
        {"E8", {2, 8, 12, 14, 18, 20, 24, 30}, {3}, std::nullopt, "0", Rational(0)},
        {"F4", {2, 6, 8, 12}, {4, 3, 3}, "6*t3^2 - 2*t2*t4^2 + t4^6", "-1/48 log(6 t3^2 - 2 t2 t4^2 + t4^6)",
         Rational(-1, 48)},
        {"H3", {2, 6, 10}, {5, 3}, "t2 - t3^3", "-1/20 log(t2 - t3^3)", Rational(-3, 100)},
        {"H4", {2, 12, 20, 30}, {5, 3}, "2025*t3^2 - 8100*t2*t4^2 + 630*t3*t4^6 - 16*t4^12",
         "-1/20 log(2025 t3^2 - 8100 t2 t4^2 + 630 t3 t4^6 - 16 t4^12)", Rational(-1, 25)},
        {"I2(5)", {2, 5}, {5}, "t2", "-1/20 log t2", Rational(-1, 50)},
    };
}

std::vector<AnomalyReference> eaw_anomaly_references() {
    return {
        {"A_l^(k), D_l, E_6,7,8", "-1/(24 d_k)"},
        {"B_l", "-(l+1)/(48 d_k)"},
        {"C_l", "-(l+1)/(24 d_k)"},
        {"F_4", "-5/144"},
        {"G_2", "-1/16"},
    };
}

}  // namespace frobg
