#pragma once

// Exact expressions over Q[t1..tn, exp(linear forms)] with logarithms.
//
// Variables are 0-based in the API (index 0 is t1 in the text syntax).
// Exponentials are restricted to exp(sum_i b_i t_i) with rational b_i and no
// constant term, which keeps the normal form decidable: a normalized value is a
// finite sum of terms  c * prod_i t_i^{a_i} * exp(sum_i b_i t_i)  with integer
// (possibly negative) a_i, and distinct (a, b) pairs are linearly independent.

#include "frobg/errors.hpp"
#include "frobg/numeric.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace frobg {

class NormalForm;

class Expression {
public:
    enum class Kind { Constant, Variable, Exp, Log, Sum, Product, Power, Quotient };

    Expression();  // zero
    Expression(Rational value);
    Expression(long value);
    Expression(int value) : Expression(static_cast<long>(value)) {}

    static Expression constant(Rational value);
    static Expression variable(std::size_t index);
    /// exp(sum_i coeffs[i] * t_i)
    static Expression exp_linear(std::vector<Rational> coeffs);
    static Expression log(const Expression& arg);
    static Expression pow(const Expression& base, long exponent);
    static Expression sum(std::vector<Expression> terms);
    static Expression product(std::vector<Expression> factors);
    static Expression quotient(const Expression& num, const Expression& den);

    Kind kind() const;
    const Rational& value() const;                     // Constant
    std::size_t index() const;                         // Variable
    const std::vector<Rational>& linear_form() const;  // Exp, trailing zeros trimmed
    const std::vector<Expression>& children() const;   // Log(1), Sum, Product, Power(1), Quotient(2)
    long exponent() const;                             // Power

    /// One past the largest variable index referenced.
    std::size_t variable_count() const;
    bool has_exp() const;
    bool has_log() const;
    bool is_zero() const;
    bool is_constant() const;

    std::string to_string() const;

    /// Structural equality (not functional equality; normalize first for that).
    bool operator==(const Expression& other) const;

    friend Expression operator+(const Expression& a, const Expression& b);
    friend Expression operator-(const Expression& a, const Expression& b);
    friend Expression operator*(const Expression& a, const Expression& b);
    friend Expression operator/(const Expression& a, const Expression& b);
    friend Expression operator-(const Expression& a);

private:
    struct Node;
    explicit Expression(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

Expression var(std::size_t index);

Expression diff(const Expression& f, std::size_t index);

/// Exact when f is exp/log-free and the point is exact, otherwise floating.
Scalar evaluate(const Expression& f, const EvaluationPoint& point);

/// Typed evaluation. For T = Rational, exp and log nodes throw NotExact.
template <class T>
T evaluate_as(const Expression& f, std::span<const T> point);

extern template Rational evaluate_as<Rational>(const Expression&, std::span<const Rational>);
extern template Real evaluate_as<Real>(const Expression&, std::span<const Real>);

/// Canonical form as an Expression; normalize(normalize(x)) == normalize(x).
Expression normalize(const Expression& f);

/// Canonical form of an exp-polynomial (or an exact quotient of such).
/// Throws UnsupportedShape for log nodes or non-divisible quotients.
NormalForm to_normal_form(const Expression& f);

/// Parses the model-file syntax: t1..tn, + - * / ^, exp(...), log(...), p/q literals.
Expression parse_expression(std::string_view text);

struct Monomial {
    std::vector<long> powers;          // exponent of t_i, trailing zeros trimmed
    std::vector<Rational> exp_coeffs;  // linear form inside exp, trailing zeros trimmed

    bool operator<(const Monomial& o) const;
    bool operator==(const Monomial& o) const = default;
    bool is_unit() const { return powers.empty() && exp_coeffs.empty(); }
    long total_degree() const;
};

Monomial operator*(const Monomial& a, const Monomial& b);

class NormalForm {
public:
    NormalForm() = default;
    NormalForm(Rational c);
    static NormalForm variable(std::size_t index);
    static NormalForm term(Monomial m, Rational c);

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // coefficient of the unit monomial
    bool has_exp() const;
    std::size_t variable_count() const;
    /// True when every term is a polynomial monomial of total degree <= degree.
    bool is_polynomial_of_degree_at_most(long degree) const;

    NormalForm diff(std::size_t index) const;
    NormalForm pow(long exponent) const;  // negative only for a single term

    template <class T>
    T evaluate(std::span<const T> point) const;

    Expression to_expression() const;
    std::string to_string() const;

    friend NormalForm operator+(const NormalForm& a, const NormalForm& b);
    friend NormalForm operator-(const NormalForm& a, const NormalForm& b);
    friend NormalForm operator*(const NormalForm& a, const NormalForm& b);
    friend NormalForm operator*(const Rational& s, const NormalForm& a);
    friend NormalForm operator-(const NormalForm& a);
    bool operator==(const NormalForm& o) const = default;

    /// Exact division; throws UnsupportedShape when den does not divide this.
    NormalForm divide(const NormalForm& den) const;

private:
    void add_term(const Monomial& m, const Rational& c);
    std::map<Monomial, Rational> terms_;
};

extern template Rational NormalForm::evaluate<Rational>(std::span<const Rational>) const;
extern template Real NormalForm::evaluate<Real>(std::span<const Real>) const;

}  // namespace frobg
