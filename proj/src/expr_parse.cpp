#include "frobg/expr.hpp"

#include <algorithm>
#include <cctype>

namespace frobg {

namespace {

// expr    := term (('+' | '-') term)*
// term    := unary (('*' | '/') unary)*
// unary   := '-' unary | power
// power   := primary ('^' int)?        int may be '-'-prefixed or parenthesized
// primary := number | 't' digits | exp '(' expr ')' | log '(' expr ')' | '(' expr ')'
class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expression parse() {
        Expression e = expr();
        skip_space();
        if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorCode::ParseError, what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) error(std::string("expected '") + c + "'");
    }

    bool accept_word(std::string_view w) {
        skip_space();
        if (text_.substr(pos_, w.size()) == w) {
            const std::size_t end = pos_ + w.size();
            if (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) return false;
            pos_ = end;
            return true;
        }
        return false;
    }

    Expression expr() {
        std::vector<Expression> terms{term()};
        for (;;) {
            if (accept('+'))
                terms.push_back(term());
            else if (accept('-'))
                terms.push_back(-term());
            else
                break;
        }
        return Expression::sum(std::move(terms));
    }

    Expression term() {
        Expression e = unary();
        for (;;) {
            if (accept('*'))
                e = e * unary();
            else if (accept('/'))
                e = e / unary();
            else
                break;
        }
        return e;
    }

    Expression unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    long integer_exponent() {
        bool paren = accept('(');
        bool negative = accept('-');
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) error("expected an integer exponent");
        const long v = std::stol(std::string(text_.substr(start, pos_ - start)));
        if (paren) expect(')');
        return negative ? -v : v;
    }

    Expression power() {
        Expression base = primary();
        if (accept('^')) return Expression::pow(base, integer_exponent());
        return base;
    }

    Expression primary() {
        skip_space();
        if (pos_ >= text_.size()) error("unexpected end of input");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
                ++pos_;
            return Expression(parse_rational(text_.substr(start, pos_ - start)));
        }
        if (accept_word("exp")) {
            expect('(');
            Expression arg = expr();
            expect(')');
            return exp_of(arg);
        }
        if (accept_word("log")) {
            expect('(');
            Expression arg = expr();
            expect(')');
            return Expression::log(arg);
        }
        if (c == 't') {
            ++pos_;
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) error("expected a variable index after 't'");
            const long i = std::stol(std::string(text_.substr(start, pos_ - start)));
            if (i < 1) error("variables are numbered from t1");
            return var(static_cast<std::size_t>(i - 1));
        }
        if (accept('(')) {
            Expression e = expr();
            expect(')');
            return e;
        }
        error("unexpected '" + std::string(1, c) + "'");
    }

    Expression exp_of(const Expression& arg) {
        NormalForm nf;
        try {
            nf = to_normal_form(arg);
        } catch (const Error&) {
            error("exp argument must be a linear form in t1..tn");
        }
        std::vector<Rational> coeffs;
        for (const auto& [m, c] : nf.terms()) {
            if (!m.exp_coeffs.empty() || m.total_degree() != 1 || m.powers.back() != 1 ||
                std::count(m.powers.begin(), m.powers.end(), 0L) + 1 != static_cast<long>(m.powers.size()))
                error("exp argument must be a linear form without constant term");
            coeffs.resize(std::max(coeffs.size(), m.powers.size()), Rational(0));
            coeffs[m.powers.size() - 1] = c;
        }
        return Expression::exp_linear(std::move(coeffs));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression parse_expression(std::string_view text) { return Parser(text).parse(); }

}  // namespace frobg
