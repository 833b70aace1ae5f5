#include <catch2/catch_amalgamated.hpp>

#include "frobg/catalog.hpp"
#include "frobg/symmetry.hpp"

#include "support.hpp"

using namespace frobg;
using frobg::testing::near;
using frobg::testing::rabs;
using frobg::testing::throws_code;

namespace {

std::vector<std::vector<Real>> points(std::size_t n, std::size_t count, std::uint64_t seed) {
    PointSampler rng(seed, Rational(1), 1000);
    std::vector<std::vector<Real>> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(frobg::testing::reals(rng.next_point(n)));
    return out;
}

struct Pair {
    const char* hatted;
    std::size_t kappa;  // 0-based
    Rational gamma_hat;
};

const Pair kPairs[] = {{"legendre_s2_a2", 1, Rational(-1, 8)}, {"legendre_s3_a2", 2, Rational(-3, 16)}};

}  // namespace

TEST_CASE("Legendre map of the A2 extended affine model", "[symmetry]") {
    const auto eaw = get_model("eaw_a2");
    const auto map = legendre_map(eaw.model, 1);
    const std::vector<Real> p{Real("0.3"), Real("0.7"), Real("-0.4")};
    const auto at = [&](std::size_t a) { return evaluate_as<Real>(map[a], std::span<const Real>(p)); };
    CHECK(near(at(0), exp(p[2]), Real("1e-50")));
    CHECK(near(at(1), p[0] - p[1] * p[1] / 2, Real("1e-50")));
    CHECK(near(at(2), p[1], Real("1e-50")));
}

TEST_CASE("hatted prepotentials agree with the Legendre transform", "[symmetry]") {
    const auto eaw = get_model("eaw_a2");
    const auto pts = points(3, 20, 9);
    for (const auto& pair : kPairs) {
        const auto hat = get_model(pair.hatted);
        const auto chk = legendre_check(eaw.model, hat.model, pair.kappa, pts);
        INFO(pair.hatted);
        CHECK(chk.residual < Real("1e-8"));
        CHECK(chk.offset_spread < Real("1e-8"));
    }
    // S2: the quadratic ambiguity of F^ shows up as a constant 3/4 in one entry.
    const auto chk = legendre_check(eaw.model, get_model("legendre_s2_a2").model, 1, pts);
    CHECK(near(chk.offset(0, 0), Real(3) / 4, Real("1e-40")));
    // The identity coordinate gives the identity map.
    const auto self = legendre_check(eaw.model, eaw.model, eaw.model.identity(), pts);
    CHECK(self.residual == 0);
    CHECK(rabs(self.offset(1, 1)) == 0);
}

TEST_CASE("G transforms by the Jacobian determinant", "[symmetry]") {
    const auto eaw = get_model("eaw_a2");
    const auto pts = points(3, 20, 10);
    for (const auto& pair : kPairs) {
        const auto hat = get_model(pair.hatted);
        const GCandidate pulled = transform_g_legendre(eaw.G, eaw.model, pair.kappa);
        INFO(pair.hatted);
        CHECK(legendre_g_residual(pulled, eaw.model, pair.kappa, hat.G, pts) < Real("1e-8"));
        CHECK(legendre_g_residual(eaw.G, eaw.model, pair.kappa, hat.G, pts) > Real("1e-3"));
        const Charges ch = charges(eaw.model);
        CHECK(transform_gamma_legendre(eaw.gamma, 3, ch.q[pair.kappa]) == pair.gamma_hat);
        CHECK(hat.gamma == pair.gamma_hat);
    }
    const GCandidate same = transform_g_legendre(eaw.G, eaw.model, eaw.model.identity());
    CHECK(same.to_string() == eaw.G.to_string());
    CHECK(transform_gamma_legendre(Rational(-1, 16), 3, 0) == Rational(-1, 16));
}

TEST_CASE("inversion", "[symmetry]") {
    const auto twelve = transform_g_inversion(GCandidate{}, 12, Rational(2));
    CHECK(twelve.G.logs.empty());
    CHECK(twelve.gamma_shift == 0);
    const auto two = transform_g_inversion(GCandidate{}, 2, Rational(3));
    REQUIRE(two.G.logs.size() == 1);
    CHECK(two.G.logs[0].coeff == Rational(-5, 12));
    CHECK(two.G.logs[0].arg == var(1));
    CHECK(two.gamma_shift == Rational(5, 6));
    CHECK(throws_code([] { transform_g_inversion(GCandidate{}, 3, Rational(1)); }, ErrorCode::PreconditionViolated));
    const auto cp1 = get_model("cp1");
    CHECK(throws_code([&] { transform_g_inversion(cp1.G, cp1.model); }, ErrorCode::PreconditionViolated));
    const auto i2 = get_model("i2", {{"h", 5}});
    const auto inv = transform_g_inversion(i2.G, i2.model);
    CHECK(inv.gamma_shift == (Rational(2, 24) - Rational(1, 2)) * (1 - Rational(3, 5)));
}

TEST_CASE("singular Legendre transforms are rejected", "[symmetry]") {
    // For I2(5), S_2 maps t to (t2^4 / 1, t1)-type coordinates that degenerate at t2 = 0.
    const auto i2 = get_model("i2", {{"h", 5}});
    const std::vector<std::vector<Real>> pts{{Real("0.5"), Real(0)}};
    CHECK(throws_code([&] { legendre_check(i2.model, i2.model, 1, pts); }, ErrorCode::SingularTransform));
}
