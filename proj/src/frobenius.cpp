#include "frobg/frobenius.hpp"

#include <algorithm>

namespace frobg {

namespace {

// Sorted index tuples of the given length over {0..n-1}.
std::vector<std::vector<std::size_t>> multisets(std::size_t n, std::size_t length) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == length) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

Rational coefficient(const NormalForm& f, const Monomial& m) {
    auto it = f.terms().find(m);
    return it == f.terms().end() ? Rational(0) : it->second;
}

template <class T>
Real magnitude(const T& x) {
    if constexpr (std::is_same_v<T, Rational>)
        return Real(x < 0 ? Rational(-x) : x);
    else
        return boost::multiprecision::abs(x);
}

template <class T>
Tensor<T> fill(std::size_t n, std::size_t rank, const std::map<std::vector<std::size_t>, T>& values) {
    Tensor<T> t(n, rank);
    std::vector<std::size_t> idx(rank, 0);
    for (std::size_t flat = 0; flat < t.data().size(); ++flat) {
        std::size_t rem = flat;
        for (std::size_t r = rank; r-- > 0;) {
            idx[r] = rem % n;
            rem /= n;
        }
        auto key = idx;
        std::sort(key.begin(), key.end());
        t.data()[flat] = values.at(key);
    }
    return t;
}

template <class T>
Tensor<T> raise_first(const Tensor<T>& c, const Matrix<T>& inv) {
    const std::size_t n = c.dim();
    const std::size_t stride = c.data().size() / n;
    Tensor<T> out(n, c.rank());
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t v = 0; v < n; ++v) {
            const T& w = inv(m, v);
            if (w == T(0)) continue;
            for (std::size_t s = 0; s < stride; ++s) out.data()[m * stride + s] += w * c.data()[v * stride + s];
        }
    return out;
}

}  // namespace

bool EulerField::is_linear() const {
    return std::all_of(shifts.begin(), shifts.end(), [](const Rational& r) { return r == 0; });
}

NormalForm EulerField::component(std::size_t a) const {
    return weights[a] * NormalForm::variable(a) + NormalForm(shifts[a]);
}

NormalForm EulerField::apply(const NormalForm& f) const {
    NormalForm out;
    for (std::size_t a = 0; a < dimension(); ++a) out = out + component(a) * f.diff(a);
    return out;
}

Expression EulerField::apply(const Expression& f) const {
    std::vector<Expression> terms;
    for (std::size_t a = 0; a < dimension(); ++a) {
        const Expression e = Expression(weights[a]) * var(a) + Expression(shifts[a]);
        terms.push_back(e * diff(f, a));
    }
    return Expression::sum(std::move(terms));
}

Prepotential::Prepotential(std::string name, Expression F, std::size_t identity, EulerField euler)
    : name_(std::move(name)), F_(std::move(F)), identity_(identity), euler_(std::move(euler)) {
    const std::size_t n = dimension();
    if (n == 0) fail(ErrorCode::InvalidModel, name_ + ": dimension must be positive");
    if (euler_.shifts.size() != n) fail(ErrorCode::InvalidModel, name_ + ": Euler shifts do not match the dimension");
    if (identity_ >= n) fail(ErrorCode::InvalidModel, name_ + ": identity index out of range");
    if (F_.variable_count() > n) fail(ErrorCode::InvalidModel, name_ + ": F uses more variables than the dimension");

    for (const auto& key : multisets(n, 3)) {
        Expression d = F_;
        for (std::size_t i : key) d = diff(d, i);
        NormalForm nf;
        try {
            nf = to_normal_form(d);
        } catch (const Error& e) {
            fail(ErrorCode::UnsupportedShape,
                 name_ + ": third derivative is outside the exp-polynomial ring (" + e.what() + ")");
        }
        derivs_.emplace(key, std::move(nf));
    }
    for (std::size_t order = 4; order <= 5; ++order)
        for (const auto& key : multisets(n, order)) {
            std::vector<std::size_t> parent(key.begin(), key.end() - 1);
            derivs_.emplace(key, derivs_.at(parent).diff(key.back()));
        }
    has_exp_ = std::any_of(derivs_.begin(), derivs_.end(), [](const auto& kv) { return kv.second.has_exp(); });

    // Quasihomogeneity at the level of third derivatives:
    // E(c_abc) + (e_a + e_b + e_c) c_abc = (3 - d) c_abc.
    std::optional<Rational> lambda;
    for (const auto& key : multisets(n, 3)) {
        const NormalForm& c = derivs_.at(key);
        if (c.is_zero()) continue;
        Rational weight = 0;
        for (std::size_t i : key) weight += euler_.weights[i];
        const NormalForm w = euler_.apply(c) + weight * c;
        const Monomial& lead = c.terms().rbegin()->first;
        const Rational l = coefficient(w, lead) / c.terms().rbegin()->second;
        if (lambda && *lambda != l) return;
        if (!(w == l * c)) return;
        lambda = l;
    }
    if (lambda) d_ = 3 - *lambda;
}

const NormalForm& Prepotential::derivative(std::vector<std::size_t> idx) const {
    std::sort(idx.begin(), idx.end());
    auto it = derivs_.find(idx);
    if (it == derivs_.end()) fail(ErrorCode::UnsupportedShape, "derivative of order outside 3..5 or index out of range");
    return it->second;
}

Matrix<Rational> eta_metric(const Prepotential& P) {
    const std::size_t n = P.dimension();
    Matrix<Rational> eta(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const NormalForm& c = P.c3(P.identity(), a, b);
            if (!c.is_constant())
                fail(ErrorCode::NonConstantMetric, P.name() + ": eta entry (" + std::to_string(a + 1) + "," +
                                                       std::to_string(b + 1) + ") = " + c.to_string());
            eta(a, b) = c.constant_value();
        }
    if (determinant(eta) == 0) fail(ErrorCode::DegenerateMetric, P.name() + ": eta is degenerate");
    return eta;
}

QuasihomResult quasihom_check(const Prepotential& P) {
    if (!P.charge_d())
        fail(ErrorCode::NotQuasihomogeneous, P.name() + ": no charge d grades the third derivatives of F");
    const Rational d = *P.charge_d();
    const Expression raw = P.euler().apply(P.F()) - Expression(Rational(3 - d)) * P.F();
    if (P.F().has_log()) return {d, raw};
    const NormalForm rem = to_normal_form(raw);
    if (!rem.is_polynomial_of_degree_at_most(2))
        fail(ErrorCode::NotQuasihomogeneous, P.name() + ": remainder " + rem.to_string() + " is not quadratic");
    return {d, rem.to_expression()};
}

Charges charges(const Prepotential& P) {
    Charges c;
    c.d = quasihom_check(P).d;
    for (const auto& e : P.euler().weights) {
        c.q.push_back(1 - e);
        c.mu.push_back(c.q.back() - c.d / 2);
    }
    return c;
}

template <class T>
FrobeniusFrame<T> frame(const Prepotential& P, std::span<const T> point) {
    const std::size_t n = P.dimension();
    if (point.size() < n)
        fail(ErrorCode::UnassignedVariable, "t" + std::to_string(point.size() + 1) + " is not assigned");
    FrobeniusFrame<T> fr;
    fr.n = n;
    fr.identity = P.identity();
    fr.point.assign(point.begin(), point.begin() + static_cast<std::ptrdiff_t>(n));

    std::map<std::vector<std::size_t>, T> values;
    for (const auto& [key, nf] : P.derivatives()) values.emplace(key, nf.template evaluate<T>(fr.point));
    fr.c3 = fill(n, 3, values);
    fr.c4 = fill(n, 4, values);
    fr.c5 = fill(n, 5, values);

    fr.eta = Matrix<T>(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) fr.eta(a, b) = fr.c3(fr.identity, a, b);
    fr.eta_inv = inverse(fr.eta);
    fr.cu3 = raise_first(fr.c3, fr.eta_inv);
    fr.cu4 = raise_first(fr.c4, fr.eta_inv);
    fr.cu5 = raise_first(fr.c5, fr.eta_inv);

    fr.E = P.euler().at<T>(std::span<const T>(fr.point));
    fr.U = Matrix<T>(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t e = 0; e < n; ++e) fr.U(a, b) += fr.E[e] * fr.cu3(a, e, b);

    fr.H.assign(n, T(0));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t v = 0; v < n; ++v) fr.H[a] += fr.eta_inv(m, v) * fr.cu3(a, m, v);

    if (P.charge_d()) {
        const Rational& d = *P.charge_d();
        for (const auto& e : P.euler().weights) fr.mu.push_back(T(Rational(1 - e - d / 2)));
    }
    return fr;
}

template FrobeniusFrame<Rational> frame<Rational>(const Prepotential&, std::span<const Rational>);
template FrobeniusFrame<Real> frame<Real>(const Prepotential&, std::span<const Real>);

namespace {

template <class T>
Real wdvv_max(const FrobeniusFrame<T>& fr) {
    const std::size_t n = fr.n;
    Real worst = 0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t d = 0; d < n; ++d) {
                    T r(0);
                    for (std::size_t m = 0; m < n; ++m)
                        r += fr.cu3(m, a, b) * fr.c3(m, c, d) - fr.cu3(m, a, c) * fr.c3(m, b, d);
                    worst = std::max(worst, magnitude(r));
                }
    return worst;
}

}  // namespace

Scalar wdvv_residual(const Prepotential& P, const EvaluationPoint& p) {
    if (p.is_exact() && !P.has_exp()) {
        const auto fr = frame<Rational>(P, p.rationals());
        // Exact arithmetic: the maximum is zero iff every component is zero.
        const Real worst = wdvv_max(fr);
        if (worst == 0) return Scalar(Rational(0));
        Rational exact_worst = 0;
        const std::size_t n = fr.n;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    for (std::size_t d = 0; d < n; ++d) {
                        Rational r = 0;
                        for (std::size_t m = 0; m < n; ++m)
                            r += fr.cu3(m, a, b) * fr.c3(m, c, d) - fr.cu3(m, a, c) * fr.c3(m, b, d);
                        if (r < 0) r = -r;
                        exact_worst = std::max(exact_worst, r);
                    }
        return Scalar(exact_worst);
    }
    const auto pts = p.reals();
    return Scalar(wdvv_max(frame<Real>(P, pts)));
}

bool wdvv_identity(const Prepotential& P) {
    const std::size_t n = P.dimension();
    const Matrix<Rational> inv = inverse(eta_metric(P));
    std::vector<NormalForm> raised(n * n * n);  // c^m_ab at m*n*n + a*n + b
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                NormalForm s;
                for (std::size_t v = 0; v < n; ++v)
                    if (inv(m, v) != 0) s = s + inv(m, v) * P.c3(v, a, b);
                raised[(m * n + a) * n + b] = s;
            }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c)
                for (std::size_t d = 0; d < n; ++d) {
                    NormalForm r;
                    for (std::size_t m = 0; m < n; ++m)
                        r = r + raised[(m * n + a) * n + b] * P.c3(m, c, d) - raised[(m * n + a) * n + c] * P.c3(m, b, d);
                    if (!r.is_zero()) return false;
                }
    return true;
}

std::vector<std::size_t> unit_candidates(const Expression& F, std::size_t n) {
    EulerField zero{std::vector<Rational>(n, Rational(0)), std::vector<Rational>(n, Rational(0))};
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < n; ++k) {
        const Prepotential P("candidate", F, k, zero);
        try {
            eta_metric(P);
            out.push_back(k);
        } catch (const Error&) {
        }
    }
    return out;
}

std::pair<EulerField, Rational> recover_euler_field(const Expression& F, std::size_t n, std::size_t identity) {
    EulerField zero{std::vector<Rational>(n, Rational(0)), std::vector<Rational>(n, Rational(0))};
    const Prepotential P("recover", F, identity, zero);

    // Unknowns: e_0..e_{n-1}, r_0..r_{n-1}, lambda = 3 - d.
    const std::size_t unknowns = 2 * n + 1;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    for (const auto& key : multisets(n, 3)) {
        const NormalForm& c = P.c3(key[0], key[1], key[2]);
        if (c.is_zero()) continue;
        std::vector<NormalForm> cols(unknowns);
        for (std::size_t a = 0; a < n; ++a) {
            const auto mult = static_cast<long>(std::count(key.begin(), key.end(), a));
            cols[a] = NormalForm::variable(a) * c.diff(a) + Rational(mult) * c;
            cols[n + a] = c.diff(a);
        }
        cols[2 * n] = -c;
        std::map<Monomial, std::vector<Rational>> by_monomial;
        for (std::size_t u = 0; u < unknowns; ++u)
            for (const auto& [m, coeff] : cols[u].terms()) {
                auto& row = by_monomial.try_emplace(m, std::vector<Rational>(unknowns, Rational(0))).first->second;
                row[u] += coeff;
            }
        for (auto& [m, row] : by_monomial) {
            rows.push_back(std::move(row));
            rhs.push_back(0);
        }
    }
    std::vector<Rational> unit(unknowns, Rational(0));
    unit[identity] = 1;
    rows.push_back(unit);
    rhs.push_back(1);

    Matrix<Rational> A(rows.size(), unknowns);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < unknowns; ++j) A(i, j) = rows[i][j];
    const auto x = solve(A, rhs);
    if (!x) fail(ErrorCode::NotQuasihomogeneous, "no Euler field grades the third derivatives");
    EulerField E;
    E.weights.assign(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(n));
    E.shifts.assign(x->begin() + static_cast<std::ptrdiff_t>(n), x->begin() + static_cast<std::ptrdiff_t>(2 * n));
    return {E, 3 - (*x)[2 * n]};
}

}  // namespace frobg
