#include <catch2/catch_amalgamated.hpp>

#include "frobg/catalog.hpp"
#include "frobg/getzler.hpp"

#include "support.hpp"

using namespace frobg;
using frobg::testing::near;
using frobg::testing::rabs;

namespace {

const Real kTol("1e-9");

Real residual(const ModelEntry& e, const GCandidate& G, std::size_t count, std::uint64_t seed,
              GetzlerMode mode = GetzlerMode::Symmetrized) {
    return getzler_residual(e.model, G, sample_points(e.model, G, count, seed), mode, seed).to_real();
}

}  // namespace

TEST_CASE("Getzler's equation holds for the catalog G-functions", "[getzler]") {
    for (const auto& name : list_models()) {
        const auto e = get_model(name);
        INFO(e.label());
        CHECK(residual(e, e.G, 20, 1) < kTol);
    }
    for (int r = 1; r <= 3; ++r) {
        const auto e = get_model("cp1", {{"r", r}});
        CHECK(residual(e, e.G, 20, 2) < kTol);
    }
    for (int h = 3; h <= 6; ++h) {
        const auto e = get_model("i2", {{"h", h}});
        const auto pts = sample_points(e.model, e.G, 20, 3);
        const Scalar s = getzler_residual(e.model, e.G, pts);
        REQUIRE(s.is_exact());
        CHECK(s.exact() == 0);
    }
}

TEST_CASE("the A3 model satisfies Getzler's equation exactly with G = 0", "[getzler]") {
    const auto e = get_model("a3_coxeter");
    const Scalar s = getzler_residual(e.model, GCandidate{}, sample_points(e.model, GCandidate{}, 30, 4));
    REQUIRE(s.is_exact());
    CHECK(s.exact() == 0);
}

TEST_CASE("a wrong G leaves a nonzero residual", "[getzler]") {
    const auto eaw = get_model("eaw_a2");
    CHECK(residual(eaw, GCandidate{}, 5, 1) > Real("1e-3"));
    const auto i2 = get_model("i2", {{"h", 5}});
    GCandidate off = i2.G;
    off.logs[0].coeff *= 2;
    CHECK(residual(i2, off, 5, 1) > Real("1e-3"));
}

TEST_CASE("symmetrized and z-contracted residuals agree", "[getzler]") {
    for (const char* name : {"eaw_a2", "cp1", "i2"}) {
        const auto e = get_model(name);
        const Real sym = residual(e, e.G, 10, 9);
        const Real con = residual(e, e.G, 10, 9, GetzlerMode::Contracted);
        CHECK(sym < kTol);
        CHECK(con < kTol);
        const Real bad_sym = residual(e, GCandidate{}, 3, 9);
        const Real bad_con = residual(e, GCandidate{}, 3, 9, GetzlerMode::Contracted);
        if (std::string(name) != "cp1") {
            CHECK(bad_sym > Real("1e-3"));
            CHECK(bad_con > Real("1e-3"));
        }
    }
}

TEST_CASE("the G-function is invariant under rescaling its log arguments", "[getzler]") {
    const auto e = get_model("i2", {{"h", 6}});
    GCandidate scaled = e.G;
    scaled.logs[0].arg = Expression(7) * scaled.logs[0].arg;
    const auto pts = sample_points(e.model, e.G, 5, 10);
    for (const auto& p : pts) {
        const auto q = p.rationals();
        const GJet a(e.G, 2), b(scaled, 2);
        CHECK(a.gradient<Rational>(q) == b.gradient<Rational>(q));
        CHECK(a.hessian<Rational>(q) == b.hessian<Rational>(q));
    }
    CHECK(check_bo7(scaled, e.model));
    CHECK(euler_derivative_constant(e.model, scaled) == euler_derivative_constant(e.model, e.G));
}

TEST_CASE("bo7: G does not depend on the unit direction", "[getzler]") {
    const auto eaw = get_model("eaw_a2");
    CHECK(check_bo7(GCandidate{{0, 0, Rational(-1, 24)}, {}}, eaw.model));
    CHECK(check_bo7(GCandidate{}, eaw.model));
    const GCandidate hatted{{}, {{Rational(-1, 12), var(0)}}};
    CHECK_FALSE(check_bo7(hatted, eaw.model));
    CHECK(check_bo7(hatted, get_model("legendre_s2_a2").model));
}

TEST_CASE("bo8: E(G) equals the anomaly from the charges", "[getzler]") {
    struct Case {
        const char* name;
        ModelParams params;
        Rational gamma;
    };
    for (const auto& c : {Case{"cp1", {{"r", 2}}, Rational(-1, 12)}, Case{"eaw_a2", {}, Rational(-1, 16)},
                          Case{"i2", {{"h", 5}}, Rational(-1, 50)}, Case{"a3_coxeter", {}, Rational(0)},
                          Case{"legendre_s2_a2", {}, Rational(-1, 8)}, Case{"legendre_s3_a2", {}, Rational(-3, 16)}}) {
        const auto e = get_model(c.name, c.params);
        INFO(e.label());
        CHECK(gamma_theorem1(e.model) == c.gamma);
        CHECK(euler_derivative_constant(e.model, e.G) == c.gamma);
        std::vector<Real> lhs;
        for (const auto& p : sample_points(e.model, e.G, 20, 11)) {
            const auto r = check_bo8(e.model, e.G, p, kTol);
            CHECK(r.match);
            REQUIRE(r.lhs.is_exact());
            CHECK(r.lhs.exact() == c.gamma);
            lhs.push_back(r.lhs.to_real());
        }
        Real mean = 0, var = 0;
        for (const auto& x : lhs) mean += x;
        mean /= lhs.size();
        for (const auto& x : lhs) var += (x - mean) * (x - mean);
        CHECK(var / lhs.size() < Real("1e-18"));
    }
}

TEST_CASE("bo9: derivatives along Euler powers", "[getzler]") {
    struct Case {
        const char* name;
        ModelParams params;
    };
    for (const auto& c : {Case{"cp1", {{"r", 1}}}, Case{"cp1", {{"r", 2}}}, Case{"eaw_a2", {}}, Case{"i2", {{"h", 4}}},
                          Case{"a3_coxeter", {}}}) {
        const auto e = get_model(c.name, c.params);
        for (int k = 2; k <= 4; ++k) {
            INFO(e.label() << " k=" << k);
            for (const auto& p : sample_points(e.model, e.G, 10, 12)) {
                const auto r = check_bo9(e.model, e.G, k, p, Real("1e-8"));
                CHECK(r.match);
            }
        }
    }
    // A wrong G breaks the identity.
    const auto e = get_model("eaw_a2");
    const auto p = sample_points(e.model, e.G, 1, 13).front();
    CHECK_FALSE(check_bo9(e.model, GCandidate{}, 2, p, Real("1e-8")).match);
}

TEST_CASE("CP1 bo9 at k = 2 reduces to -t1/6 on both sides", "[getzler]") {
    const auto e = get_model("cp1", {{"r", 2}});
    const auto r = check_bo9(e.model, e.G, 2, EvaluationPoint::exact({Rational(3, 5), Rational(-1, 4)}), kTol);
    INFO(r.lhs.to_string() << " " << r.rhs.to_string());
    CHECK(near(r.lhs.to_real(), Real(Rational(-1, 10)), Real("1e-40")));
    CHECK(near(r.rhs.to_real(), Real(Rational(-1, 10)), Real("1e-40")));
}

TEST_CASE("anomaly from Coxeter exponents reproduces the reference table", "[getzler]") {
    for (const auto& row : coxeter_references()) {
        INFO(row.group);
        const EulerField E = coxeter_euler_field(row.degrees);
        const long h = *std::max_element(row.degrees.begin(), row.degrees.end());
        const Rational d = 1 - Rational(2, h);
        std::vector<Rational> q;
        for (const auto& w : E.weights) q.push_back(1 - w);
        CHECK(gamma_theorem1(row.degrees.size(), d, q) == row.gamma);
        if (row.kappa) {
            std::vector<CausticDatum> data{{parse_expression(*row.kappa), row.caustic_types.front()}};
            CHECK(gamma_from_caustics(data, 0, E) == row.gamma);
        }
    }
}

TEST_CASE("G-functions assembled from caustic data", "[getzler]") {
    const Expression k1 = parse_expression("t2 - t3^3");
    const GCandidate b = build_g_coxeter({{var(0), 4}, {var(1), 3}});
    REQUIRE(b.logs.size() == 1);
    CHECK(b.logs[0].coeff == Rational(-1, 48));
    CHECK(build_g_coxeter({{var(0), 3}}).logs.empty());
    const GCandidate h3 = build_g_coxeter({{k1, 5}, {var(0), 3}});
    REQUIRE(h3.logs.size() == 1);
    CHECK(h3.logs[0].coeff == Rational(-1, 20));
    CHECK(h3.logs[0].arg == k1);

    const GCandidate eaw = build_g_eaw({{var(1), 3}}, 1, 3);
    CHECK(eaw.linear == std::vector<Rational>{0, 0, Rational(-1, 24)});
    CHECK(eaw.logs.empty());
    const GCandidate cp = build_g_eaw({}, 3, 2);
    CHECK(cp.linear == std::vector<Rational>{0, Rational(-1, 8)});
    const GCandidate mixed = build_g_eaw({{var(1), 4}}, 1, 3);
    CHECK(mixed.linear.back() == Rational(-1, 24));
    REQUIRE(mixed.logs.size() == 1);
    CHECK(mixed.logs[0].coeff == Rational(-1, 48));
}

TEST_CASE("anomaly from caustic weights", "[getzler]") {
    for (long n = 2; n <= 6; ++n)
        CHECK(gamma_from_caustics(std::vector<CausticWeight>{{4, Rational(n - 1, n)}, {3, 1}}, 0, 0) ==
              Rational(1 - n, 48 * n));
    for (const Rational dk : {Rational(2, 3), Rational(1, 2), Rational(3, 4)})
        CHECK(gamma_from_caustics(std::vector<CausticWeight>{{3, 1}}, 1, 1 / dk) == -1 / (24 * dk));
    CHECK(gamma_from_caustics(std::vector<CausticWeight>{{3, 1}, {3, 2}}, 0, 0) == 0);

    const auto eaw = get_model("eaw_a2");
    CHECK(gamma_from_caustics(eaw.caustics, 1, eaw.model.euler()) == Rational(-1, 16));
    CHECK(euler_weight(eaw.caustics[0].kappa, eaw.model.euler()) == Rational(3, 2));
    CHECK(frobg::testing::throws_code(
        [&] { euler_weight(parse_expression("t2 + t3"), eaw.model.euler()); }, ErrorCode::NotQuasihomogeneous));
}
