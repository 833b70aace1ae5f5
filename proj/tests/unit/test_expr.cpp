#include <catch2/catch_amalgamated.hpp>

#include "frobg/expr.hpp"

#include "support.hpp"

using namespace frobg;
using frobg::testing::random_expression;
using frobg::testing::throws_code;

TEST_CASE("diff follows the polynomial, exponential and log rules", "[expr]") {
    const Expression t1 = var(0), t2 = var(1), t3 = var(2);

    CHECK(normalize(diff(t1 * t1 * t3, 0)) == normalize(Expression(2) * t1 * t3));
    CHECK(normalize(diff(Expression::exp_linear({0, 0, 1}), 2)) == normalize(Expression::exp_linear({0, 0, 1})));
    CHECK(to_normal_form(diff(Expression::log(t2), 1)) == NormalForm::variable(1).pow(-1));
    CHECK(diff(t1, 5).is_zero());
}

TEST_CASE("evaluate is exact on rational points and reports domain errors", "[expr]") {
    const Expression t1 = var(0), t2 = var(1), t3 = var(2);

    const Scalar s = evaluate(t1 + t2, EvaluationPoint::exact({1, 2}));
    REQUIRE(s.is_exact());
    CHECK(s.exact() == 3);

    const Scalar e = evaluate(Expression::exp_linear({0, 0, 1}), EvaluationPoint::exact({0, 0, 0}));
    CHECK_FALSE(e.is_exact());
    CHECK(e.to_real() == 1);

    CHECK(throws_code([&] { evaluate(Expression(1) / t2, EvaluationPoint::exact({1, 0})); },
                      ErrorCode::DivisionByZero));
    CHECK(throws_code([&] { evaluate(Expression::log(t1 - 2), EvaluationPoint::exact({1})); },
                      ErrorCode::LogOfNonPositive));
    CHECK(throws_code([&] { evaluate(t3, EvaluationPoint::exact({1, 2})); }, ErrorCode::UnassignedVariable));
}

TEST_CASE("normalize produces canonical forms", "[expr]") {
    const Expression t1 = var(0), t2 = var(1), t3 = var(2);
    const Expression u = Expression::exp_linear({0, 0, 1});

    CHECK(normalize(t1 * t2 - t2 * t1).is_zero());
    CHECK(normalize(u * u) == Expression::exp_linear({0, 0, 2}));
    CHECK(normalize(Expression::pow(t2, 2) / t2) == t2);
    CHECK(normalize((t1 * t1 - t2 * t2) / (t1 - t2)) == normalize(t1 + t2));
    CHECK(throws_code([&] { normalize(t1 / (t1 + t2)); }, ErrorCode::UnsupportedShape));
    CHECK(throws_code([&] { normalize(Expression::log(t1)); }, ErrorCode::UnsupportedShape));
}

TEST_CASE("normal forms separate functions of the exp-polynomial ring", "[expr]") {
    const Expression t1 = var(0), t2 = var(1);
    const Expression e = Expression::exp_linear({0, 1});
    const Expression half = Expression::exp_linear({0, Rational(1, 2)});
    CHECK(normalize(half * half) == normalize(e));
    CHECK_FALSE(normalize(t2 * e) == normalize(e));
    CHECK(normalize((t1 + e) * (t1 - e)) == normalize(t1 * t1 - Expression::exp_linear({0, 2})));
}

TEST_CASE("parser reads the model-file syntax", "[expr]") {
    const Expression f = parse_expression("1/2*t1^2*t3 + 1/2*t1*t2^2 - 1/24*t2^4 + t2*exp(t3)");
    const Expression t1 = var(0), t2 = var(1), t3 = var(2);
    const Expression expected = Expression(Rational(1, 2)) * t1 * t1 * t3 + Expression(Rational(1, 2)) * t1 * t2 * t2 -
                                Expression(Rational(1, 24)) * Expression::pow(t2, 4) +
                                t2 * Expression::exp_linear({0, 0, 1});
    CHECK(normalize(f) == normalize(expected));
    CHECK(parse_expression("exp(2*t2 - t1/3)") == Expression::exp_linear({Rational(-1, 3), 2}));
    CHECK(parse_expression("t2^(-2)") == Expression::pow(t2, -2));
    CHECK(parse_expression("0.75") == Expression(Rational(3, 4)));
    CHECK(parse_expression("log(t1)").has_log());

    CHECK(throws_code([] { parse_expression("exp(t1^2)"); }, ErrorCode::ParseError));
    CHECK(throws_code([] { parse_expression("exp(t1 + 1)"); }, ErrorCode::ParseError));
    CHECK(throws_code([] { parse_expression("t0"); }, ErrorCode::ParseError));
    CHECK(throws_code([] { parse_expression("t1 +"); }, ErrorCode::ParseError));
    CHECK(throws_code([] { parse_expression("sin(t1)"); }, ErrorCode::ParseError));
}

TEST_CASE("random expressions: normalization is idempotent and printing round-trips", "[expr][property]") {
    PointSampler rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const Expression f = random_expression(rng, 3, 3, true);
        const Expression n1 = normalize(f);
        CHECK(normalize(n1) == n1);
        CHECK(normalize(parse_expression(f.to_string())) == n1);
        CHECK(parse_expression(n1.to_string()) == n1);
    }
}

TEST_CASE("random expressions: mixed partials commute", "[expr][property]") {
    PointSampler rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        const Expression f = random_expression(rng, 3, 3, true);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j)
                CHECK(normalize(diff(diff(f, i), j)) == normalize(diff(diff(f, j), i)));
    }
}

TEST_CASE("random expressions: normalization preserves exact values", "[expr][property]") {
    PointSampler rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        const Expression f = random_expression(rng, 3, 3, false);
        const auto p = EvaluationPoint::exact(rng.next_point(3));
        const Scalar a = evaluate(f, p), b = evaluate(normalize(f), p);
        REQUIRE(a.is_exact());
        REQUIRE(b.is_exact());
        CHECK(a.exact() == b.exact());
    }
}

TEST_CASE("random expressions: derivatives agree with central differences", "[expr][property]") {
    PointSampler rng(14);
    const Real h("1e-6");
    for (int trial = 0; trial < 40; ++trial) {
        const Expression f = random_expression(rng, 3, 3, true);
        std::vector<Real> p;
        for (const auto& q : rng.next_point(3)) p.emplace_back(q);
        for (std::size_t i = 0; i < 3; ++i) {
            auto plus = p, minus = p;
            plus[i] += h;
            minus[i] -= h;
            const Real fd = (evaluate_as<Real>(f, plus) - evaluate_as<Real>(f, minus)) / (2 * h);
            const Real d = evaluate_as<Real>(diff(f, i), p);
            const Real scale = std::max(Real(1), boost::multiprecision::abs(d));
            CHECK(boost::multiprecision::abs(fd - d) / scale < Real("1e-6"));
        }
    }
}
