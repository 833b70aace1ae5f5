#include <catch2/catch_amalgamated.hpp>

#include "frobg/commands.hpp"

#include "support.hpp"

using namespace frobg;
using frobg::testing::throws_code;

namespace {

const CheckResult& find(const VerificationReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return c;
    FAIL("no check named " << name);
    throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("verify runs every check on the catalog", "[cli]") {
    VerifyOptions opt;
    opt.points = 10;
    for (const auto& name : list_models()) {
        const VerificationReport r = cmd_verify(get_model(name), opt);
        INFO(r.to_text());
        CHECK(r.passed());
        REQUIRE(r.gamma.has_value());
        CHECK(r.gamma->consistent);
    }
}

TEST_CASE("verify options", "[cli]") {
    VerifyOptions opt;
    opt.points = 5;
    opt.checks = {"bo8"};
    const VerificationReport r = cmd_verify(get_model("cp1", {{"r", Rational(2)}}), opt);
    REQUIRE(r.checks.size() == 1);
    CHECK(r.checks[0].notes.find("E(G) = -1/12 exactly, rhs -1/12") != std::string::npos);
    CHECK(r.model == "cp1(r=2)");

    opt.checks = {"bogus"};
    CHECK(throws_code([&] { cmd_verify(get_model("eaw_a2"), opt); }, ErrorCode::UnknownCheck));

    // Order of --checks does not change the report.
    opt.checks = {"getzler", "wdvv"};
    const auto a = cmd_verify(get_model("eaw_a2"), opt).to_json().dump();
    opt.checks = {"wdvv", "getzler"};
    CHECK(cmd_verify(get_model("eaw_a2"), opt).to_json().dump() == a);
}

TEST_CASE("a wrong G fails verification", "[cli]") {
    ModelEntry e = get_model("eaw_a2");
    e.G.linear[2] = Rational(-1, 12);
    VerifyOptions opt;
    opt.points = 5;
    opt.checks = {"getzler", "bo8"};
    const VerificationReport r = cmd_verify(e, opt);
    CHECK_FALSE(r.passed());
    CHECK(find(r, "getzler").status == CheckStatus::Fail);
    CHECK(find(r, "bo8").status == CheckStatus::Fail);
}

TEST_CASE("caustic command", "[cli]") {
    CausticOptions opt;
    opt.ray = 1;
    const VerificationReport r = cmd_caustic(get_model("i2", {{"h", Rational(5)}}), opt);
    CHECK(r.passed());
    CHECK(find(r, "K1:exponent").status == CheckStatus::Pass);
    CHECK(find(r, "K1:tau").status == CheckStatus::Pass);
    const VerificationReport c = cmd_caustic(get_model("cp1", {{"r", Rational(2)}}), {});
    CHECK(c.passed());
    CHECK(find(c, "Klog:dlogJ").notes.find("lemma4-labels-swapped") == std::string::npos);
    CHECK(find(c, "Klog:dG").notes.find("lemma4-labels-swapped") != std::string::npos);
    CHECK(cmd_caustic(get_model("a3_coxeter"), {}).passed());
    CHECK(cmd_caustic(get_model("eaw_a2"), {}).passed());
}

TEST_CASE("lg command", "[cli]") {
    LgOptions opt;
    opt.k = 1;
    opt.m = 2;
    opt.sweep = true;
    opt.paths = 4;
    const VerificationReport r = cmd_lg(opt);
    CHECK(r.passed());
    CHECK(r.checks.size() == 5);
    opt.k = 1;
    opt.m = 1;
    const VerificationReport one = cmd_lg(opt);
    CHECK(find(one, "cp1-identification").status == CheckStatus::Pass);
    CHECK(find(one, "path-0").status == CheckStatus::Fail);
    CHECK(find(one, "path-0").notes.find("boundary path") != std::string::npos);
    opt.coeffs = {Complex(1), Complex(0)};
    CHECK(throws_code([&] { cmd_lg(opt); }, ErrorCode::DegenerateLeadingCoefficient));
}

TEST_CASE("symmetry command", "[cli]") {
    SymmetryOptions opt;
    opt.legendre = 1;
    const VerificationReport r = cmd_symmetry(get_model("eaw_a2"), opt);
    CHECK(r.passed());
    CHECK(r.metadata.at("hatted_model") == "legendre_s2_a2");
    CHECK(r.metadata.at("gamma_hat") == "-1/8");
    opt.legendre.reset();
    opt.inversion = true;
    CHECK_FALSE(cmd_symmetry(get_model("cp1"), opt).passed());
    const VerificationReport inv = cmd_symmetry(get_model("i2", {{"h", Rational(4)}}), opt);
    CHECK(inv.passed());
    opt.inversion = false;
    CHECK(throws_code([&] { cmd_symmetry(get_model("cp1"), opt); }, ErrorCode::Usage));
}

TEST_CASE("reports are deterministic", "[cli]") {
    VerifyOptions opt;
    opt.points = 10;
    opt.seed = 7;
    const auto a = cmd_verify(get_model("eaw_a2"), opt).to_json().dump();
    const auto b = cmd_verify(get_model("eaw_a2"), opt).to_json().dump();
    CHECK(a == b);
    opt.seed = 8;
    CHECK(cmd_verify(get_model("eaw_a2"), opt).to_json().dump() != a);
}
