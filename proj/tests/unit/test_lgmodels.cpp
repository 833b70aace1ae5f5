#include <catch2/catch_amalgamated.hpp>

#include "frobg/catalog.hpp"
#include "frobg/lgmodels.hpp"
#include "frobg/polyroots.hpp"

#include "support.hpp"

using namespace frobg;
using frobg::testing::near;
using frobg::testing::rabs;
using frobg::testing::throws_code;

namespace {

Complex c(const char* re, const char* im = "0") { return Complex(Real(re), Real(im)); }

}  // namespace

TEST_CASE("superpotential invariants", "[lgmodels]") {
    CHECK(throws_code([] { Superpotential(1, 1, {c("1"), c("0")}); }, ErrorCode::DegenerateLeadingCoefficient));
    CHECK(throws_code([] { Superpotential(1, 2, {c("1")}); }, ErrorCode::InvalidModel));
    CHECK(throws_code([] { Superpotential(0, 2, {c("1"), c("1")}); }, ErrorCode::InvalidModel));
    const Superpotential S(2, 1, {c("0.5"), c("-1"), c("2")});
    const Complex x = c("0.7", "0.2");
    CHECK(abs(S.value(x) - (x * x + c("0.5") * x + c("-1") + c("2") / x)) < Real("1e-50"));
    CHECK(abs(S.derivative(x) - (Real(2) * x + c("0.5") - c("2") / (x * x))) < Real("1e-50"));
}

TEST_CASE("critical points and values", "[lgmodels]") {
    const Superpotential S(1, 1, {c("0.3"), c("4")});
    const auto x = critical_points(S);
    REQUIRE(x.size() == 2);
    CHECK(abs(x[0] + c("2")) < Real("1e-50"));
    CHECK(abs(x[1] - c("2")) < Real("1e-50"));

    for (int r = 1; r <= 3; ++r) {
        const Real t1("0.25"), t2("-0.6");
        const Superpotential cp(1, 1, {Complex(t1), Complex(Real(r) * exp(Real(r) * t2))});
        const auto u = critical_values(cp);
        const auto model = get_model("cp1", {{"r", r}});
        const std::vector<Real> p{t1, t2};
        const auto v = canonical_coordinates(model.model, std::span<const Real>(p));
        CHECK(abs(u[0] - v[0]) < Real("1e-50"));
        CHECK(abs(u[1] - v[1]) < Real("1e-50"));
        CHECK(near(abs(u[1] - u[0]), 4 * sqrt(Real(r) * exp(Real(r) * t2)), Real("1e-50")));
    }

    PointSampler rng(3, Rational(2), 100);
    for (auto [k, m] : {std::pair{1, 2}, {2, 1}, {2, 2}, {3, 2}}) {
        std::vector<Complex> a;
        for (int j = 0; j < k + m; ++j) a.emplace_back(Real(rng.next_rational()), Real(rng.next_rational()));
        a.back() += Complex(3);
        const Superpotential S2(k, m, a);
        const auto pts = critical_points(S2);
        CHECK(pts.size() == static_cast<std::size_t>(k + m));
        for (const auto& p : pts) {
            CHECK(abs(p) > 0);
            CHECK(abs(S2.derivative(p)) < Real("1e-12"));
        }
        // continuity in a
        auto b = a;
        b[0] += Complex(Real("1e-6"));
        const auto u = critical_values(S2), w = critical_values(Superpotential(k, m, b));
        for (std::size_t i = 0; i < u.size(); ++i) CHECK(abs(u[i] - w[i]) < Real("1e-4"));
        CHECK(abs(lg_caustic_indicator(S2)) > Real("1e-20"));
    }
}

TEST_CASE("caustic indicator vanishes at a constructed double point", "[lgmodels]") {
    // x^2 F'(x) = x^3 - a_2 x - 2 a_3 with a double root at x = 1: a_2 = 3, a_3 = -1.
    const Superpotential S(1, 2, {c("0.4"), c("3"), c("-1")});
    CHECK(abs(lg_caustic_indicator(S)) < Real("1e-30"));
    const auto clusters = cluster_roots(critical_points(S), Real("1e-7"));
    CHECK(clusters.size() == 2);
}

TEST_CASE("collision exponent along transversal paths is 3", "[lgmodels]") {
    for (auto [k, m] : {std::pair{1, 2}, {2, 1}, {2, 2}, {1, 3}, {3, 1}}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto fit = lg_collision_exponent(transversal_path(k, m, seed));
            INFO("k=" << k << " m=" << m << " seed=" << seed);
            CHECK(near(fit.exponent, Real(3), Real("0.02")));
        }
    }
    CHECK(throws_code([] { transversal_path(1, 1, 0); }, ErrorCode::NoCollision));
    // The excluded boundary a_2 -> 0 of (1, 1) separates like s^{1/2}.
    const auto fit = lg_collision_exponent(boundary_path(1, 1, 0));
    CHECK(near(fit.exponent, Real(1), Real("0.02")));
    // A path that stays off the caustic.
    const SuperpotentialPath flat = [](const Real& s) { return Superpotential(1, 2, {Complex(s), c("1"), c("2")}); };
    CHECK(throws_code([&] { lg_collision_exponent(flat); }, ErrorCode::NoCollision));
}
