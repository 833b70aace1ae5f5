#pragma once

// Shared helpers for the unit and acceptance suites.

#include "frobg/errors.hpp"
#include "frobg/expr.hpp"
#include "frobg/numeric.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <functional>

namespace frobg::testing {

inline bool throws_code(const std::function<void()>& f, ErrorCode code) {
    try {
        f();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

inline Real rabs(const Real& x) { return boost::multiprecision::abs(x); }

inline bool near(const Real& a, const Real& b, const Real& tol) { return rabs(a - b) <= tol; }

/// Random element of Q[t1..tn, exp(linear)] built from small integers.
inline Expression random_expression(PointSampler& rng, std::size_t n, int depth, bool allow_exp) {
    const auto pick = [&](std::uint64_t k) { return rng.next_raw() % k; };
    const auto small = [&] { return Rational(static_cast<long>(pick(7)) - 3, static_cast<long>(pick(3)) + 1); };
    if (depth == 0 || pick(4) == 0) {
        switch (pick(allow_exp ? 3 : 2)) {
        case 0: return Expression(small());
        case 1: return var(pick(n));
        default: {
            std::vector<Rational> lf(n, Rational(0));
            lf[pick(n)] = Rational(static_cast<long>(pick(3)) + 1, static_cast<long>(pick(2)) + 1);
            return Expression::exp_linear(lf);
        }
        }
    }
    switch (pick(3)) {
    case 0: return random_expression(rng, n, depth - 1, allow_exp) + random_expression(rng, n, depth - 1, allow_exp);
    case 1: return random_expression(rng, n, depth - 1, allow_exp) * random_expression(rng, n, depth - 1, allow_exp);
    default:
        return Expression::pow(random_expression(rng, n, depth - 1, allow_exp), static_cast<long>(pick(3)) + 1);
    }
}

inline std::vector<Real> reals(const std::vector<Rational>& q) { return std::vector<Real>(q.begin(), q.end()); }

}  // namespace frobg::testing
