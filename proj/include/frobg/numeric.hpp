#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace frobg {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using Complex = std::complex<Real>;

inline constexpr unsigned kDefaultPrecision = 64;

/// Sets the working precision (decimal digits) used by every Real created afterwards.
void set_precision(unsigned digits);
unsigned precision();

/// Reads FROBG_PRECISION, falling back to kDefaultPrecision.
unsigned precision_from_env();

/// Restores the previous working precision on scope exit.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

/// Parses "p/q", "p", or a finite decimal such as "-0.75".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// Scientific decimal string with a fixed number of significant digits; "0" for zero.
std::string to_decimal(const Real& x, unsigned significant = 10);

inline Real to_real(const Rational& q) { return Real(q); }
inline Real to_real(const Real& x) { return x; }

Real abs(const Complex& z);
Real pi();

/// An evaluated value: exact when every step stayed rational.
class Scalar {
public:
    Scalar() : value_(Rational(0)) {}
    Scalar(Rational q) : value_(std::move(q)) {}
    Scalar(Real x) : value_(std::move(x)) {}

    bool is_exact() const { return std::holds_alternative<Rational>(value_); }
    const Rational& exact() const;
    Real to_real() const;
    std::string to_string() const;

private:
    std::variant<Rational, Real> value_;
};

/// Values assigned to t1..tn; either all exact or all floating.
class EvaluationPoint {
public:
    EvaluationPoint() = default;
    static EvaluationPoint exact(std::vector<Rational> values);
    static EvaluationPoint real(std::vector<Real> values);

    bool is_exact() const { return exact_; }
    std::size_t size() const { return exact_ ? rationals_.size() : reals_.size(); }
    const std::vector<Rational>& rationals() const;
    std::vector<Real> reals() const;

private:
    bool exact_ = true;
    std::vector<Rational> rationals_;
    std::vector<Real> reals_;
};

/// Deterministic sampler of rational points on a grid of step 1/denominator.
class PointSampler {
public:
    explicit PointSampler(std::uint64_t seed, Rational half_width = 2, long denominator = 1000);

    Rational next_rational();
    Rational next_rational(const Rational& lo, const Rational& hi);
    std::vector<Rational> next_point(std::size_t n);
    std::uint64_t next_raw();

private:
    std::mt19937_64 engine_;
    Rational half_width_;
    long denominator_;
};

}  // namespace frobg
