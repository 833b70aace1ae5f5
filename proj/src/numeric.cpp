#include "frobg/numeric.hpp"

#include "frobg/errors.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <cctype>
#include <cstdlib>
#include <ios>

namespace frobg {

void set_precision(unsigned digits) {
    if (digits < 16) digits = 16;
    Real::default_precision(digits);
}

unsigned precision() { return Real::default_precision(); }

unsigned precision_from_env() {
    const char* env = std::getenv("FROBG_PRECISION");
    if (env == nullptr || *env == '\0') return kDefaultPrecision;
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || value < 16 || value > 4096)
        fail(ErrorCode::Usage, "FROBG_PRECISION must be an integer in [16, 4096]");
    return static_cast<unsigned>(value);
}

PrecisionScope::PrecisionScope(unsigned digits) : saved_(precision()) { set_precision(digits); }
PrecisionScope::~PrecisionScope() { set_precision(saved_); }

namespace {

Integer parse_integer(std::string_view digits, std::string_view whole) {
    if (digits.empty()) fail(ErrorCode::ParseError, "malformed number '" + std::string(whole) + "'");
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            fail(ErrorCode::ParseError, "malformed number '" + std::string(whole) + "'");
    return Integer(std::string(digits));
}

Integer pow10(long e) {
    Integer r = 1;
    for (long i = 0; i < e; ++i) r *= 10;
    return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view whole = text;
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    Rational value;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const Integer num = parse_integer(text.substr(0, slash), whole);
        const Integer den = parse_integer(text.substr(slash + 1), whole);
        if (den == 0) fail(ErrorCode::DivisionByZero, "zero denominator in '" + std::string(whole) + "'");
        value = Rational(num, den);
    } else {
        long exponent = 0;
        if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
            std::string exp_text(text.substr(e + 1));
            char* end = nullptr;
            exponent = std::strtol(exp_text.c_str(), &end, 10);
            if (exp_text.empty() || *end != '\0')
                fail(ErrorCode::ParseError, "malformed exponent in '" + std::string(whole) + "'");
            text = text.substr(0, e);
        }
        std::string_view int_part = text, frac_part;
        if (auto dot = text.find('.'); dot != std::string_view::npos) {
            int_part = text.substr(0, dot);
            frac_part = text.substr(dot + 1);
        }
        if (int_part.empty() && frac_part.empty())
            fail(ErrorCode::ParseError, "malformed number '" + std::string(whole) + "'");
        const Integer i = int_part.empty() ? Integer(0) : parse_integer(int_part, whole);
        const Integer f = frac_part.empty() ? Integer(0) : parse_integer(frac_part, whole);
        value = Rational(i) + Rational(f, pow10(static_cast<long>(frac_part.size())));
        if (exponent > 0) value *= Rational(pow10(exponent));
        if (exponent < 0) value /= Rational(pow10(-exponent));
    }
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

std::string to_decimal(const Real& x, unsigned significant) {
    if (x == 0) return "0";
    return x.str(significant, std::ios_base::scientific);
}

Real abs(const Complex& z) {
    using boost::multiprecision::sqrt;
    return sqrt(z.real() * z.real() + z.imag() * z.imag());
}

Real pi() { return boost::math::constants::pi<Real>(); }

const Rational& Scalar::exact() const {
    if (!is_exact()) fail(ErrorCode::NotExact, "scalar is not exact");
    return std::get<Rational>(value_);
}

Real Scalar::to_real() const {
    if (is_exact()) return Real(std::get<Rational>(value_));
    return std::get<Real>(value_);
}

std::string Scalar::to_string() const {
    if (is_exact()) return frobg::to_string(std::get<Rational>(value_));
    return to_decimal(std::get<Real>(value_), 20);
}

EvaluationPoint EvaluationPoint::exact(std::vector<Rational> values) {
    EvaluationPoint p;
    p.exact_ = true;
    p.rationals_ = std::move(values);
    return p;
}

EvaluationPoint EvaluationPoint::real(std::vector<Real> values) {
    EvaluationPoint p;
    p.exact_ = false;
    p.reals_ = std::move(values);
    return p;
}

const std::vector<Rational>& EvaluationPoint::rationals() const {
    if (!exact_) fail(ErrorCode::NotExact, "evaluation point is not exact");
    return rationals_;
}

std::vector<Real> EvaluationPoint::reals() const {
    if (!exact_) return reals_;
    std::vector<Real> out;
    out.reserve(rationals_.size());
    for (const auto& q : rationals_) out.emplace_back(q);
    return out;
}

PointSampler::PointSampler(std::uint64_t seed, Rational half_width, long denominator)
    : engine_(seed), half_width_(std::move(half_width)), denominator_(denominator) {}

std::uint64_t PointSampler::next_raw() { return engine_(); }

Rational PointSampler::next_rational(const Rational& lo, const Rational& hi) {
    // grid points lo + k/denominator, k uniform in [0, steps]; mt19937_64 output is portable
    const Rational span = (hi - lo) * denominator_;
    const Integer steps = numerator(span) / denominator(span);
    const Integer k = Integer(engine_()) % (steps + 1);
    return lo + Rational(k, denominator_);
}

Rational PointSampler::next_rational() { return next_rational(-half_width_, half_width_); }

std::vector<Rational> PointSampler::next_point(std::size_t n) {
    std::vector<Rational> p;
    p.reserve(n);
    for (std::size_t i = 0; i < n; ++i) p.push_back(next_rational());
    return p;
}

}  // namespace frobg
