#include "frobg/commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>

using namespace frobg;

namespace {

struct Common {
    std::vector<std::string> params;
    std::string model_file;
    std::string model;
    std::uint64_t seed = 0;
    std::string format = "text";
};

ModelParams parse_params(const std::vector<std::string>& items) {
    ModelParams out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) fail(ErrorCode::Usage, "--param expects NAME=RATIONAL, got '" + item + "'");
        out[item.substr(0, eq)] = parse_rational(item.substr(eq + 1));
    }
    return out;
}

ModelEntry load(const Common& c) {
    if (!c.model_file.empty()) return load_model_file(c.model_file);
    if (c.model.empty()) fail(ErrorCode::Usage, "a model name or --model-file is required");
    return get_model(c.model, parse_params(c.params));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

// "re" or "re:im", each a rational
Complex parse_complex(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) return Complex(Real(parse_rational(s)));
    return Complex(Real(parse_rational(s.substr(0, colon))), Real(parse_rational(s.substr(colon + 1))));
}

std::size_t parse_coordinate(const std::string& s, std::size_t n_hint) {
    std::string digits = s;
    if (!digits.empty() && digits[0] == 't') digits = digits.substr(1);
    std::size_t idx = 0;
    try {
        idx = std::stoul(digits);
    } catch (const std::exception&) {
        fail(ErrorCode::Usage, "expected a coordinate such as t2, got '" + s + "'");
    }
    if (idx == 0 || (n_hint && idx > n_hint)) fail(ErrorCode::Usage, "coordinate '" + s + "' out of range");
    return idx - 1;
}

int emit(const VerificationReport& r, const std::string& format) {
    if (format == "json")
        std::cout << r.to_json().dump(2) << '\n';
    else
        std::cout << r.to_text();
    return r.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frobenius-manifold G-function verifier"};
    app.require_subcommand(1);
    unsigned digits = precision_from_env();
    app.add_option("--precision", digits, "working precision in decimal digits (env FROBG_PRECISION)");

    Common common;
    auto add_common = [&](CLI::App* sub, bool with_model) {
        if (with_model) {
            sub->add_option("model", common.model, "catalog model name");
            sub->add_option("--param", common.params, "model parameter NAME=RATIONAL")->take_all();
            sub->add_option("--model-file", common.model_file, "JSON model definition");
        }
        sub->add_option("--seed", common.seed, "random seed");
        sub->add_option("--format", common.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--precision", digits, "working precision in decimal digits");
    };

    auto* list = app.add_subcommand("list", "list catalog models");
    list->add_option("--format", common.format, "text or json")->check(CLI::IsMember({"text", "json"}));

    auto* verify = app.add_subcommand("verify", "run the check suite on a model");
    add_common(verify, true);
    std::string checks;
    std::size_t points = 100;
    std::string tol = "1e-9";
    verify->add_option("--checks", checks, "comma-separated subset of checks");
    verify->add_option("--points", points, "number of sample points");
    verify->add_option("--tol", tol, "tolerance");

    auto* caustic = app.add_subcommand("caustic", "collision exponents and residues at the caustics");
    add_common(caustic, true);
    std::string ray;
    caustic->add_option("--ray", ray, "probe ray coordinate, e.g. t2");

    auto* lg = app.add_subcommand("lg", "critical values of x^k + ... + a_{k+m} x^-m");
    add_common(lg, false);
    int k = 1, m = 1;
    std::string coeffs;
    bool sweep = false;
    std::size_t paths = 20;
    lg->add_option("--k", k, "leading degree")->required();
    lg->add_option("--m", m, "pole order")->required();
    lg->add_option("--coeffs", coeffs, "a_1,...,a_{k+m}; each re or re:im");
    lg->add_flag("--sweep", sweep, "fit exponents along seeded transversal paths");
    lg->add_option("--paths", paths, "paths in a sweep");

    auto* symmetry = app.add_subcommand("symmetry", "Legendre-type transforms and the inversion");
    add_common(symmetry, true);
    std::string legendre;
    bool inversion = false;
    std::size_t sym_points = 20;
    symmetry->add_option("--legendre", legendre, "coordinate index kappa (1-based)");
    symmetry->add_flag("--inversion", inversion, "apply the inversion");
    symmetry->add_option("--points", sym_points, "number of sample points");
    symmetry->add_option("--tol", tol, "tolerance")->default_str("1e-8");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        set_precision(digits);
        if (list->parsed()) {
            if (common.format == "json")
                std::cout << cmd_list_json().dump(2) << '\n';
            else
                std::cout << cmd_list_text();
            return 0;
        }
        if (verify->parsed()) {
            VerifyOptions opt;
            opt.checks = split(checks, ',');
            opt.points = points;
            opt.seed = common.seed;
            opt.tol = Real(parse_rational(tol));
            return emit(cmd_verify(load(common), opt), common.format);
        }
        if (caustic->parsed()) {
            const ModelEntry e = load(common);
            CausticOptions opt;
            opt.seed = common.seed;
            if (!ray.empty()) opt.ray = parse_coordinate(ray, e.model.dimension());
            return emit(cmd_caustic(e, opt), common.format);
        }
        if (lg->parsed()) {
            LgOptions opt;
            opt.k = k;
            opt.m = m;
            for (const auto& c : split(coeffs, ',')) opt.coeffs.push_back(parse_complex(c));
            opt.sweep = sweep;
            opt.paths = paths;
            opt.seed = common.seed;
            return emit(cmd_lg(opt), common.format);
        }
        if (symmetry->parsed()) {
            const ModelEntry e = load(common);
            SymmetryOptions opt;
            if (!legendre.empty()) opt.legendre = parse_coordinate(legendre, e.model.dimension());
            opt.inversion = inversion;
            opt.points = sym_points;
            opt.seed = common.seed;
            if (symmetry->count("--tol")) opt.tol = Real(parse_rational(tol));
            return emit(cmd_symmetry(e, opt), common.format);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
