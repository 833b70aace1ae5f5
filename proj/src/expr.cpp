#include "frobg/expr.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <sstream>

namespace frobg {

struct Expression::Node {
    Kind kind = Kind::Constant;
    Rational value;
    std::size_t index = 0;
    std::vector<Rational> linear;
    std::vector<Expression> children;
    long exponent = 0;

    std::size_t nvars = 0;
    bool has_exp = false;
    bool has_log = false;
};

namespace {

std::vector<Rational> trim(std::vector<Rational> v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

}  // namespace

Expression::Expression() : Expression(Rational(0)) {}

Expression::Expression(long value) : Expression(Rational(value)) {}

Expression::Expression(Rational value) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Constant;
    node->value = std::move(value);
    node_ = std::move(node);
}

Expression::Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expression Expression::constant(Rational value) { return Expression(std::move(value)); }

Expression Expression::variable(std::size_t index) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Variable;
    node->index = index;
    node->nvars = index + 1;
    return Expression(std::shared_ptr<const Node>(std::move(node)));
}

Expression var(std::size_t index) { return Expression::variable(index); }

Expression Expression::exp_linear(std::vector<Rational> coeffs) {
    coeffs = trim(std::move(coeffs));
    if (coeffs.empty()) return Expression(1);
    auto node = std::make_shared<Node>();
    node->kind = Kind::Exp;
    node->nvars = coeffs.size();
    node->linear = std::move(coeffs);
    node->has_exp = true;
    return Expression(std::shared_ptr<const Node>(std::move(node)));
}

Expression Expression::log(const Expression& arg) {
    if (arg.kind() == Kind::Constant && arg.value() == 1) return Expression(0);
    if (arg.kind() == Kind::Constant && arg.value() <= 0)
        fail(ErrorCode::LogOfNonPositive, "log of constant " + frobg::to_string(arg.value()));
    auto node = std::make_shared<Node>();
    node->kind = Kind::Log;
    node->children = {arg};
    node->nvars = arg.variable_count();
    node->has_exp = arg.has_exp();
    node->has_log = true;
    return Expression(std::shared_ptr<const Node>(std::move(node)));
}

Expression Expression::pow(const Expression& base, long exponent) {
    if (exponent == 0) return Expression(1);
    if (exponent == 1) return base;
    if (base.kind() == Kind::Constant) {
        const Rational& b = base.value();
        if (b == 0) {
            if (exponent < 0) fail(ErrorCode::DivisionByZero, "0 raised to a negative power");
            return Expression(0);
        }
        Rational r = 1;
        for (long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) r *= b;
        return Expression(exponent < 0 ? Rational(1 / r) : r);
    }
    if (base.kind() == Kind::Power) return pow(base.children()[0], base.exponent() * exponent);
    if (base.kind() == Kind::Exp) {
        std::vector<Rational> c = base.linear_form();
        for (auto& x : c) x *= exponent;
        return exp_linear(std::move(c));
    }
    auto node = std::make_shared<Node>();
    node->kind = Kind::Power;
    node->children = {base};
    node->exponent = exponent;
    node->nvars = base.variable_count();
    node->has_exp = base.has_exp();
    node->has_log = base.has_log();
    return Expression(std::shared_ptr<const Node>(std::move(node)));
}

Expression Expression::sum(std::vector<Expression> terms) {
    std::vector<Expression> flat;
    Rational constant = 0;
    for (auto& t : terms) {
        if (t.kind() == Kind::Sum) {
            for (const auto& c : t.children()) {
                if (c.kind() == Kind::Constant)
                    constant += c.value();
                else
                    flat.push_back(c);
            }
        } else if (t.kind() == Kind::Constant) {
            constant += t.value();
        } else {
            flat.push_back(std::move(t));
        }
    }
    if (constant != 0) flat.push_back(Expression(constant));
    if (flat.empty()) return Expression(0);
    if (flat.size() == 1) return flat.front();
    auto node = std::make_shared<Node>();
    node->kind = Kind::Sum;
    for (const auto& c : flat) {
        node->nvars = std::max(node->nvars, c.variable_count());
        node->has_exp = node->has_exp || c.has_exp();
        node->has_log = node->has_log || c.has_log();
    }
    node->children = std::move(flat);
    return Expression(std::shared_ptr<const Node>(std::move(node)));
}

Expression Expression::product(std::vector<Expression> factors) {
    std::vector<Expression> flat;
    Rational constant = 1;
    std::vector<Rational> exp_sum;
    bool any_exp = false;
    auto absorb = [&](const Expression& f) {
        if (f.kind() == Kind::Constant) {
            constant *= f.value();
        } else if (f.kind() == Kind::Exp) {
            any_exp = true;
            const auto& lf = f.linear_form();
            if (exp_sum.size() < lf.size()) exp_sum.resize(lf.size(), Rational(0));
            for (std::size_t i = 0; i < lf.size(); ++i) exp_sum[i] += lf[i];
        } else {
            flat.push_back(f);
        }
    };
    for (const auto& f : factors) {
        if (f.kind() == Kind::Product)
            for (const auto& c : f.children()) absorb(c);
        else
            absorb(f);
    }
    if (constant == 0) return Expression(0);
    if (any_exp) {
        Expression e = exp_linear(exp_sum);
        if (e.kind() != Kind::Constant) flat.push_back(e);
    }
    if (constant != 1) flat.insert(flat.begin(), Expression(constant));
    if (flat.empty()) return Expression(1);
    if (flat.size() == 1) return flat.front();
    auto node = std::make_shared<Node>();
    node->kind = Kind::Product;
    for (const auto& c : flat) {
        node->nvars = std::max(node->nvars, c.variable_count());
        node->has_exp = node->has_exp || c.has_exp();
        node->has_log = node->has_log || c.has_log();
    }
    node->children = std::move(flat);
    return Expression(std::shared_ptr<const Node>(std::move(node)));
}

Expression Expression::quotient(const Expression& num, const Expression& den) {
    if (den.kind() == Kind::Constant) {
        if (den.value() == 0) fail(ErrorCode::DivisionByZero, "division by the constant 0");
        return product({Expression(Rational(1 / den.value())), num});
    }
    if (num.is_zero()) return Expression(0);
    auto node = std::make_shared<Node>();
    node->kind = Kind::Quotient;
    node->children = {num, den};
    node->nvars = std::max(num.variable_count(), den.variable_count());
    node->has_exp = num.has_exp() || den.has_exp();
    node->has_log = num.has_log() || den.has_log();
    return Expression(std::shared_ptr<const Node>(std::move(node)));
}

Expression::Kind Expression::kind() const { return node_->kind; }
const Rational& Expression::value() const { return node_->value; }
std::size_t Expression::index() const { return node_->index; }
const std::vector<Rational>& Expression::linear_form() const { return node_->linear; }
const std::vector<Expression>& Expression::children() const { return node_->children; }
long Expression::exponent() const { return node_->exponent; }
std::size_t Expression::variable_count() const { return node_->nvars; }
bool Expression::has_exp() const { return node_->has_exp; }
bool Expression::has_log() const { return node_->has_log; }
bool Expression::is_zero() const { return kind() == Kind::Constant && value() == 0; }
bool Expression::is_constant() const { return kind() == Kind::Constant; }

bool Expression::operator==(const Expression& o) const {
    if (node_ == o.node_) return true;
    if (kind() != o.kind()) return false;
    switch (kind()) {
    case Kind::Constant: return value() == o.value();
    case Kind::Variable: return index() == o.index();
    case Kind::Exp: return linear_form() == o.linear_form();
    case Kind::Power:
        if (exponent() != o.exponent()) return false;
        break;
    default: break;
    }
    const auto& a = children();
    const auto& b = o.children();
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

Expression operator+(const Expression& a, const Expression& b) { return Expression::sum({a, b}); }
Expression operator-(const Expression& a, const Expression& b) { return Expression::sum({a, -b}); }
Expression operator*(const Expression& a, const Expression& b) { return Expression::product({a, b}); }
Expression operator/(const Expression& a, const Expression& b) { return Expression::quotient(a, b); }
Expression operator-(const Expression& a) { return Expression::product({Expression(-1), a}); }

// ---------------------------------------------------------------- printing

namespace {

constexpr int kPrecSum = 1;
constexpr int kPrecProduct = 2;
constexpr int kPrecUnary = 3;
constexpr int kPrecPower = 4;
constexpr int kPrecAtom = 5;

std::string linear_form_string(const std::vector<Rational>& lf) {
    std::string out;
    for (std::size_t i = 0; i < lf.size(); ++i) {
        if (lf[i] == 0) continue;
        if (!out.empty()) out += " + ";
        std::string var = "t" + std::to_string(i + 1);
        if (lf[i] == 1)
            out += var;
        else if (denominator(lf[i]) == 1)
            out += to_string(lf[i]) + "*" + var;
        else
            out += "(" + to_string(lf[i]) + ")*" + var;
    }
    return out;
}

int precedence(const Expression& e) {
    using K = Expression::Kind;
    switch (e.kind()) {
    case K::Constant:
        if (e.value() < 0) return kPrecUnary;
        if (denominator(e.value()) != 1) return kPrecProduct;
        return kPrecAtom;
    case K::Sum: return kPrecSum;
    case K::Product:
    case K::Quotient: return kPrecProduct;
    case K::Power: return kPrecPower;
    default: return kPrecAtom;
    }
}

void print(const Expression& e, std::ostringstream& os);

void print_child(const Expression& e, int min_prec, std::ostringstream& os) {
    if (precedence(e) < min_prec) {
        os << '(';
        print(e, os);
        os << ')';
    } else {
        print(e, os);
    }
}

void print(const Expression& e, std::ostringstream& os) {
    using K = Expression::Kind;
    switch (e.kind()) {
    case K::Constant: os << to_string(e.value()); break;
    case K::Variable: os << 't' << e.index() + 1; break;
    case K::Exp: os << "exp(" << linear_form_string(e.linear_form()) << ')'; break;
    case K::Log:
        os << "log(";
        print(e.children()[0], os);
        os << ')';
        break;
    case K::Sum:
        for (std::size_t i = 0; i < e.children().size(); ++i) {
            if (i) os << " + ";
            print_child(e.children()[i], kPrecSum, os);
        }
        break;
    case K::Product:
        for (std::size_t i = 0; i < e.children().size(); ++i) {
            if (i) os << '*';
            // a fraction or quotient to the right of '*' must be wrapped to keep a*(b/c) unambiguous
            print_child(e.children()[i], i == 0 ? kPrecProduct : kPrecUnary, os);
        }
        break;
    case K::Quotient:
        print_child(e.children()[0], kPrecProduct, os);
        os << '/';
        print_child(e.children()[1], kPrecPower, os);
        break;
    case K::Power:
        print_child(e.children()[0], kPrecAtom, os);
        if (e.exponent() < 0)
            os << "^(" << e.exponent() << ')';
        else
            os << '^' << e.exponent();
        break;
    }
}

}  // namespace

std::string Expression::to_string() const {
    std::ostringstream os;
    print(*this, os);
    return os.str();
}

// ---------------------------------------------------------- differentiation

Expression diff(const Expression& f, std::size_t i) {
    using K = Expression::Kind;
    if (f.variable_count() <= i) return Expression(0);
    switch (f.kind()) {
    case K::Constant: return Expression(0);
    case K::Variable: return Expression(f.index() == i ? 1 : 0);
    case K::Exp: return Expression(f.linear_form()[i]) * f;
    case K::Log: return diff(f.children()[0], i) / f.children()[0];
    case K::Sum: {
        std::vector<Expression> terms;
        for (const auto& c : f.children()) terms.push_back(diff(c, i));
        return Expression::sum(std::move(terms));
    }
    case K::Product: {
        std::vector<Expression> terms;
        const auto& fs = f.children();
        for (std::size_t k = 0; k < fs.size(); ++k) {
            Expression dk = diff(fs[k], i);
            if (dk.is_zero()) continue;
            std::vector<Expression> factors;
            for (std::size_t j = 0; j < fs.size(); ++j) factors.push_back(j == k ? dk : fs[j]);
            terms.push_back(Expression::product(std::move(factors)));
        }
        return Expression::sum(std::move(terms));
    }
    case K::Power: {
        const Expression& b = f.children()[0];
        Expression db = diff(b, i);
        if (db.is_zero()) return Expression(0);
        return Expression::product({Expression(f.exponent()), Expression::pow(b, f.exponent() - 1), db});
    }
    case K::Quotient: {
        const Expression& a = f.children()[0];
        const Expression& b = f.children()[1];
        Expression da = diff(a, i);
        Expression db = diff(b, i);
        if (db.is_zero()) return da / b;
        return (da * b - a * db) / Expression::pow(b, 2);
    }
    }
    return Expression(0);
}

// --------------------------------------------------------------- evaluation

namespace {

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

template <class T>
T exp_of(const std::vector<Rational>& lf, std::span<const T> point);

template <>
Rational exp_of<Rational>(const std::vector<Rational>&, std::span<const Rational>) {
    fail(ErrorCode::NotExact, "exp node in exact evaluation");
}

template <>
Real exp_of<Real>(const std::vector<Rational>& lf, std::span<const Real> point) {
    Real arg = 0;
    for (std::size_t i = 0; i < lf.size(); ++i) {
        if (lf[i] == 0) continue;
        arg += Real(lf[i]) * point[i];
    }
    return boost::multiprecision::exp(arg);
}

template <class T>
T log_of(const T& x);

template <>
Rational log_of<Rational>(const Rational&) {
    fail(ErrorCode::NotExact, "log node in exact evaluation");
}

template <>
Real log_of<Real>(const Real& x) {
    if (x <= 0) fail(ErrorCode::LogOfNonPositive, "log argument evaluates to " + to_decimal(x));
    return boost::multiprecision::log(x);
}

template <class T>
T eval(const Expression& f, std::span<const T> p) {
    using K = Expression::Kind;
    switch (f.kind()) {
    case K::Constant: return T(f.value());
    case K::Variable: return p[f.index()];
    case K::Exp: return exp_of<T>(f.linear_form(), p);
    case K::Log: return log_of<T>(eval<T>(f.children()[0], p));
    case K::Sum: {
        T s(0);
        for (const auto& c : f.children()) s += eval<T>(c, p);
        return s;
    }
    case K::Product: {
        T s(1);
        for (const auto& c : f.children()) s *= eval<T>(c, p);
        return s;
    }
    case K::Power: return ipow(eval<T>(f.children()[0], p), f.exponent());
    case K::Quotient: {
        T den = eval<T>(f.children()[1], p);
        if (den == T(0)) fail(ErrorCode::DivisionByZero, "denominator " + f.children()[1].to_string() + " vanishes");
        return eval<T>(f.children()[0], p) / den;
    }
    }
    return T(0);
}

}  // namespace

template <class T>
T evaluate_as(const Expression& f, std::span<const T> point) {
    if (point.size() < f.variable_count())
        fail(ErrorCode::UnassignedVariable,
             "t" + std::to_string(point.size() + 1) + " is not assigned (expression uses " +
                 std::to_string(f.variable_count()) + " variables)");
    return eval<T>(f, point);
}

template Rational evaluate_as<Rational>(const Expression&, std::span<const Rational>);
template Real evaluate_as<Real>(const Expression&, std::span<const Real>);

Scalar evaluate(const Expression& f, const EvaluationPoint& point) {
    if (point.is_exact() && !f.has_exp() && !f.has_log()) {
        const auto& q = point.rationals();
        return Scalar(evaluate_as<Rational>(f, std::span<const Rational>(q)));
    }
    const auto r = point.reals();
    return Scalar(evaluate_as<Real>(f, std::span<const Real>(r)));
}

Expression normalize(const Expression& f) { return to_normal_form(f).to_expression(); }

NormalForm to_normal_form(const Expression& f) {
    using K = Expression::Kind;
    switch (f.kind()) {
    case K::Constant: return NormalForm(f.value());
    case K::Variable: return NormalForm::variable(f.index());
    case K::Exp: return NormalForm::term(Monomial{{}, f.linear_form()}, 1);
    case K::Log: fail(ErrorCode::UnsupportedShape, "log nodes have no normal form: " + f.to_string());
    case K::Sum: {
        NormalForm s;
        for (const auto& c : f.children()) s = s + to_normal_form(c);
        return s;
    }
    case K::Product: {
        NormalForm s(1);
        for (const auto& c : f.children()) s = s * to_normal_form(c);
        return s;
    }
    case K::Power: return to_normal_form(f.children()[0]).pow(f.exponent());
    case K::Quotient: return to_normal_form(f.children()[0]).divide(to_normal_form(f.children()[1]));
    }
    return NormalForm();
}

}  // namespace frobg
