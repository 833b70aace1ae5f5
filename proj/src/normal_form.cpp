#include "frobg/expr.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>

namespace frobg {

namespace {

// Lexicographic order on zero-padded vectors; a total order compatible with
// addition, so leading terms multiply.
template <class V>
int compare_padded(const std::vector<V>& a, const std::vector<V>& b) {
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const V x = i < a.size() ? a[i] : V(0);
        const V y = i < b.size() ? b[i] : V(0);
        if (x < y) return -1;
        if (y < x) return 1;
    }
    return 0;
}

template <class V>
std::vector<V> add_padded(const std::vector<V>& a, const std::vector<V>& b, const V& scale_b = V(1)) {
    std::vector<V> out(std::max(a.size(), b.size()), V(0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += scale_b * b[i];
    while (!out.empty() && out.back() == V(0)) out.pop_back();
    return out;
}

Monomial inverse(const Monomial& m) {
    Monomial r;
    for (long p : m.powers) r.powers.push_back(-p);
    for (const auto& c : m.exp_coeffs) r.exp_coeffs.push_back(-c);
    return r;
}

template <class T>
T ipow(const T& base, long e) {
    if (e < 0) {
        if (base == T(0)) fail(ErrorCode::DivisionByZero, "zero raised to a negative power");
        return T(1) / ipow(base, -e);
    }
    T result(1), b = base;
    while (e > 0) {
        if (e & 1) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

}  // namespace

bool Monomial::operator<(const Monomial& o) const {
    const int c = compare_padded(exp_coeffs, o.exp_coeffs);
    if (c != 0) return c < 0;
    return compare_padded(powers, o.powers) < 0;
}

long Monomial::total_degree() const {
    long d = 0;
    for (long p : powers) d += p;
    return d;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    return Monomial{add_padded(a.powers, b.powers), add_padded(a.exp_coeffs, b.exp_coeffs)};
}

NormalForm::NormalForm(Rational c) {
    if (c != 0) terms_.emplace(Monomial{}, std::move(c));
}

NormalForm NormalForm::variable(std::size_t index) {
    Monomial m;
    m.powers.assign(index + 1, 0);
    m.powers[index] = 1;
    return term(std::move(m), 1);
}

NormalForm NormalForm::term(Monomial m, Rational c) {
    while (!m.powers.empty() && m.powers.back() == 0) m.powers.pop_back();
    while (!m.exp_coeffs.empty() && m.exp_coeffs.back() == 0) m.exp_coeffs.pop_back();
    NormalForm nf;
    nf.add_term(m, c);
    return nf;
}

void NormalForm::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool NormalForm::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

Rational NormalForm::constant_value() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

bool NormalForm::has_exp() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return !t.first.exp_coeffs.empty(); });
}

std::size_t NormalForm::variable_count() const {
    std::size_t n = 0;
    for (const auto& [m, c] : terms_) n = std::max({n, m.powers.size(), m.exp_coeffs.size()});
    return n;
}

bool NormalForm::is_polynomial_of_degree_at_most(long degree) const {
    for (const auto& [m, c] : terms_) {
        if (!m.exp_coeffs.empty()) return false;
        if (std::any_of(m.powers.begin(), m.powers.end(), [](long p) { return p < 0; })) return false;
        if (m.total_degree() > degree) return false;
    }
    return true;
}

NormalForm operator+(const NormalForm& a, const NormalForm& b) {
    NormalForm r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
}

NormalForm operator-(const NormalForm& a) {
    NormalForm r;
    for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
    return r;
}

NormalForm operator-(const NormalForm& a, const NormalForm& b) { return a + (-b); }

NormalForm operator*(const Rational& s, const NormalForm& a) {
    NormalForm r;
    if (s == 0) return r;
    for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, s * c);
    return r;
}

NormalForm operator*(const NormalForm& a, const NormalForm& b) {
    NormalForm r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

NormalForm NormalForm::pow(long exponent) const {
    if (exponent < 0) {
        if (terms_.empty()) fail(ErrorCode::DivisionByZero, "zero raised to a negative power");
        if (terms_.size() != 1)
            fail(ErrorCode::UnsupportedShape, "negative power of a multi-term expression: " + to_string());
        const auto& [m, c] = *terms_.begin();
        return term(inverse(m), 1 / c).pow(-exponent);
    }
    NormalForm result(1), base = *this;
    while (exponent > 0) {
        if (exponent & 1) result = result * base;
        exponent >>= 1;
        if (exponent) base = base * base;
    }
    return result;
}

NormalForm NormalForm::divide(const NormalForm& den) const {
    if (den.is_zero()) fail(ErrorCode::DivisionByZero, "division by an expression that normalizes to 0");
    if (den.terms_.size() == 1) return *this * den.pow(-1);
    // Long division by leading terms. Exact division terminates; otherwise the
    // remainder never vanishes and the step cap reports the shape.
    const auto& [lead_m, lead_c] = *den.terms_.rbegin();
    const NormalForm lead_inv = term(inverse(lead_m), 1 / lead_c);
    NormalForm rem = *this, quotient;
    const std::size_t cap = 64 * (terms_.size() + 1) * (den.terms_.size() + 1);
    for (std::size_t step = 0; !rem.is_zero(); ++step) {
        if (step > cap)
            fail(ErrorCode::UnsupportedShape, "quotient with non-monomial denominator " + den.to_string() +
                                                  " does not divide " + to_string());
        const auto& [m, c] = *rem.terms_.rbegin();
        const NormalForm q = term(m, c) * lead_inv;
        quotient = quotient + q;
        rem = rem - q * den;
    }
    return quotient;
}

NormalForm NormalForm::diff(std::size_t i) const {
    NormalForm r;
    for (const auto& [m, c] : terms_) {
        if (i < m.powers.size() && m.powers[i] != 0) {
            Monomial d = m;
            d.powers[i] -= 1;
            while (!d.powers.empty() && d.powers.back() == 0) d.powers.pop_back();
            r.add_term(d, c * m.powers[i]);
        }
        if (i < m.exp_coeffs.size() && m.exp_coeffs[i] != 0) r.add_term(m, c * m.exp_coeffs[i]);
    }
    return r;
}

template <class T>
T NormalForm::evaluate(std::span<const T> point) const {
    const std::size_t n = variable_count();
    if (point.size() < n)
        fail(ErrorCode::UnassignedVariable, "t" + std::to_string(point.size() + 1) + " is not assigned");
    T total(0);
    for (const auto& [m, c] : terms_) {
        T v(c);
        for (std::size_t i = 0; i < m.powers.size(); ++i)
            if (m.powers[i] != 0) v *= ipow(point[i], m.powers[i]);
        if (!m.exp_coeffs.empty()) {
            if constexpr (std::is_same_v<T, Rational>) {
                fail(ErrorCode::NotExact, "exp term in exact evaluation");
            } else {
                T arg(0);
                for (std::size_t i = 0; i < m.exp_coeffs.size(); ++i)
                    if (m.exp_coeffs[i] != 0) arg += T(m.exp_coeffs[i]) * point[i];
                v *= boost::multiprecision::exp(arg);
            }
        }
        total += v;
    }
    return total;
}

template Rational NormalForm::evaluate<Rational>(std::span<const Rational>) const;
template Real NormalForm::evaluate<Real>(std::span<const Real>) const;

Expression NormalForm::to_expression() const {
    std::vector<Expression> terms;
    for (const auto& [m, c] : terms_) {
        std::vector<Expression> factors;
        factors.emplace_back(c);
        for (std::size_t i = 0; i < m.powers.size(); ++i)
            if (m.powers[i] != 0) factors.push_back(Expression::pow(var(i), m.powers[i]));
        if (!m.exp_coeffs.empty()) factors.push_back(Expression::exp_linear(m.exp_coeffs));
        terms.push_back(Expression::product(std::move(factors)));
    }
    return Expression::sum(std::move(terms));
}

std::string NormalForm::to_string() const { return to_expression().to_string(); }

}  // namespace frobg
