#include "frobg/getzler.hpp"

#include <algorithm>
#include <array>

namespace frobg {

namespace {

template <class T>
Real magnitude(const T& x) {
    if constexpr (std::is_same_v<T, Rational>)
        return Real(x < 0 ? Rational(-x) : x);
    else
        return boost::multiprecision::abs(x);
}

// Exact ratio num/den when it is a constant.
std::optional<Rational> constant_ratio(const NormalForm& num, const NormalForm& den) {
    if (num.is_zero()) return Rational(0);
    const auto& [m, c] = *num.terms().rbegin();
    auto it = den.terms().find(m);
    if (it == den.terms().end()) return std::nullopt;
    const Rational r = c / it->second;
    if (!(num == r * den)) return std::nullopt;
    return r;
}

std::vector<NormalForm> euler_components(const EulerField& E) {
    std::vector<NormalForm> v;
    for (std::size_t a = 0; a < E.dimension(); ++a) v.push_back(E.component(a));
    return v;
}

}  // namespace

Expression GCandidate::to_expression() const {
    std::vector<Expression> terms;
    for (std::size_t a = 0; a < linear.size(); ++a)
        if (linear[a] != 0) terms.push_back(Expression(linear[a]) * var(a));
    for (const auto& l : logs) terms.push_back(Expression(l.coeff) * Expression::log(l.arg));
    return Expression::sum(std::move(terms));
}

std::string GCandidate::to_string() const { return to_expression().to_string(); }

GJet::GJet(const GCandidate& G, std::size_t n) : n_(n), linear_(G.linear), denominator_(Rational(1)) {
    linear_.resize(std::max(n, linear_.size()), Rational(0));
    for (const auto& l : G.logs) {
        if (l.coeff == 0) continue;
        NormalForm k = to_normal_form(l.arg);
        if (k.is_zero()) fail(ErrorCode::LogOfNonPositive, "log argument normalizes to 0");
        has_exp_ = has_exp_ || k.has_exp();
        std::vector<NormalForm> g(n);
        std::vector<std::vector<NormalForm>> h(n, std::vector<NormalForm>(n));
        for (std::size_t a = 0; a < n; ++a) {
            g[a] = k.diff(a);
            for (std::size_t b = 0; b < n; ++b) h[a][b] = g[a].diff(b);
        }
        coeffs_.push_back(l.coeff);
        denominator_ = denominator_ * k;
        kappa_.push_back(std::move(k));
        grad_.push_back(std::move(g));
        hess_.push_back(std::move(h));
    }
}

template <class T>
std::vector<T> GJet::gradient(std::span<const T> p) const {
    std::vector<T> g(n_, T(0));
    for (std::size_t a = 0; a < n_; ++a) g[a] = T(linear_[a]);
    for (std::size_t i = 0; i < kappa_.size(); ++i) {
        const T k = kappa_[i].evaluate<T>(p);
        if (k == T(0)) fail(ErrorCode::DivisionByZero, "log argument vanishes at the point");
        const T c = T(coeffs_[i]) / k;
        for (std::size_t a = 0; a < n_; ++a) g[a] += c * grad_[i][a].evaluate<T>(p);
    }
    return g;
}

template <class T>
Matrix<T> GJet::hessian(std::span<const T> p) const {
    Matrix<T> h(n_, n_);
    for (std::size_t i = 0; i < kappa_.size(); ++i) {
        const T k = kappa_[i].evaluate<T>(p);
        if (k == T(0)) fail(ErrorCode::DivisionByZero, "log argument vanishes at the point");
        std::vector<T> g(n_);
        for (std::size_t a = 0; a < n_; ++a) g[a] = grad_[i][a].evaluate<T>(p) / k;
        const T c(coeffs_[i]);
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b) h(a, b) += c * (hess_[i][a][b].evaluate<T>(p) / k - g[a] * g[b]);
    }
    return h;
}

template std::vector<Rational> GJet::gradient<Rational>(std::span<const Rational>) const;
template std::vector<Real> GJet::gradient<Real>(std::span<const Real>) const;
template Matrix<Rational> GJet::hessian<Rational>(std::span<const Rational>) const;
template Matrix<Real> GJet::hessian<Real>(std::span<const Real>) const;

NormalForm GJet::directional_numerator(const std::vector<NormalForm>& v) const {
    NormalForm out;
    for (std::size_t a = 0; a < n_ && a < v.size(); ++a) {
        if (v[a].is_zero()) continue;
        NormalForm s = linear_[a] * denominator_;
        for (std::size_t i = 0; i < kappa_.size(); ++i) {
            NormalForm others(Rational(1));
            for (std::size_t j = 0; j < kappa_.size(); ++j)
                if (j != i) others = others * kappa_[j];
            s = s + coeffs_[i] * (grad_[i][a] * others);
        }
        out = out + v[a] * s;
    }
    return out;
}

std::vector<EvaluationPoint> sample_points(const Prepotential& P, const GCandidate& G, std::size_t count,
                                           std::uint64_t seed) {
    const GJet jet(G, P.dimension());
    PointSampler rng(seed);
    std::vector<EvaluationPoint> out;
    for (std::size_t attempts = 0; out.size() < count; ++attempts) {
        if (attempts > 100 * (count + 1)) fail(ErrorCode::Usage, "no admissible sample points for " + P.name());
        auto q = rng.next_point(P.dimension());
        try {
            std::vector<Real> r(q.begin(), q.end());
            frame<Real>(P, r);
            jet.hessian<Real>(r);
        } catch (const Error&) {
            continue;
        }
        out.push_back(EvaluationPoint::exact(std::move(q)));
    }
    return out;
}

template <class T>
Tensor<T> delta_tensor(const FrobeniusFrame<T>& fr, const std::vector<T>& grad, const Matrix<T>& hess) {
    const std::size_t n = fr.n;
    const T three(3), four(4), two(2);
    const T sixth(Rational(1, 6)), twentyfourth(Rational(1, 24)), quarter(Rational(1, 4));

    // Contractions that do not depend on all four indices.
    std::vector<T> trace3(n, T(0));  // c^v_{m v}
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t v = 0; v < n; ++v) trace3[m] += fr.cu3(v, m, v);
    Matrix<T> trace4(n, n);  // c^v_{a m v}
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t v = 0; v < n; ++v) trace4(a, m) += fr.cu4(v, a, m, v);
    Tensor<T> c3g(n, 2);  // c^v_{a m} dG_v
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t v = 0; v < n; ++v) c3g(a, m) += fr.cu3(v, a, m) * grad[v];

    Tensor<T> d(n, 4);
    for (std::size_t a1 = 0; a1 < n; ++a1)
        for (std::size_t a2 = 0; a2 < n; ++a2)
            for (std::size_t a3 = 0; a3 < n; ++a3)
                for (std::size_t a4 = 0; a4 < n; ++a4) {
                    T s(0);
                    for (std::size_t m = 0; m < n; ++m) {
                        const T& c12 = fr.cu3(m, a1, a2);
                        const T& c123 = fr.cu4(m, a1, a2, a3);
                        T inner(0);
                        if (c12 != T(0)) {
                            for (std::size_t v = 0; v < n; ++v) {
                                inner += three * fr.cu3(v, a3, a4) * hess(m, v);
                                inner -= four * fr.cu3(v, a3, m) * hess(a4, v);
                                inner -= fr.cu4(v, a3, a4, m) * grad[v];
                            }
                            s += c12 * inner;
                        }
                        s += two * c123 * c3g(a4, m);
                        s += sixth * c123 * trace4(a4, m);
                        s += twentyfourth * fr.cu5(m, a1, a2, a3, a4) * trace3[m];
                        for (std::size_t v = 0; v < n; ++v)
                            s -= quarter * fr.cu4(m, a1, a2, v) * fr.cu4(v, a3, a4, m);
                    }
                    d(a1, a2, a3, a4) = s;
                }
    return d;
}

template Tensor<Rational> delta_tensor<Rational>(const FrobeniusFrame<Rational>&, const std::vector<Rational>&,
                                                 const Matrix<Rational>&);
template Tensor<Real> delta_tensor<Real>(const FrobeniusFrame<Real>&, const std::vector<Real>&, const Matrix<Real>&);

template <class T>
Tensor<T> symmetrize(const Tensor<T>& delta) {
    const std::size_t n = delta.dim();
    Tensor<T> s(n, 4);
    std::array<std::size_t, 4> perm{0, 1, 2, 3};
    std::vector<std::array<std::size_t, 4>> perms;
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    const T scale(Rational(1, 24));
    std::vector<std::size_t> idx(4), p(4);
    for (std::size_t flat = 0; flat < s.data().size(); ++flat) {
        std::size_t rem = flat;
        for (std::size_t r = 4; r-- > 0;) {
            idx[r] = rem % n;
            rem /= n;
        }
        T sum(0);
        for (const auto& q : perms) {
            for (std::size_t r = 0; r < 4; ++r) p[r] = idx[q[r]];
            sum += delta.at(p);
        }
        s.data()[flat] = scale * sum;
    }
    return s;
}

template Tensor<Rational> symmetrize<Rational>(const Tensor<Rational>&);
template Tensor<Real> symmetrize<Real>(const Tensor<Real>&);

namespace {

template <class T>
Real residual_at(const Prepotential& P, const GJet& jet, std::span<const T> p, GetzlerMode mode, PointSampler& zs,
                 std::size_t z_samples) {
    const auto fr = frame<T>(P, p);
    const auto delta = delta_tensor<T>(fr, jet.gradient<T>(p), jet.hessian<T>(p));
    Real worst = 0;
    if (mode == GetzlerMode::Symmetrized) {
        const auto sym = symmetrize(delta);
        for (const T& x : sym.data()) worst = std::max(worst, magnitude(x));
        return worst;
    }
    const std::size_t n = fr.n;
    for (std::size_t s = 0; s < z_samples; ++s) {
        std::vector<T> z;
        for (std::size_t a = 0; a < n; ++a) z.emplace_back(zs.next_rational(-1, 1));
        T sum(0);
        for (std::size_t a1 = 0; a1 < n; ++a1)
            for (std::size_t a2 = 0; a2 < n; ++a2)
                for (std::size_t a3 = 0; a3 < n; ++a3)
                    for (std::size_t a4 = 0; a4 < n; ++a4)
                        sum += z[a1] * z[a2] * z[a3] * z[a4] * delta(a1, a2, a3, a4);
        worst = std::max(worst, magnitude(sum));
    }
    return worst;
}

}  // namespace

Scalar getzler_residual(const Prepotential& P, const GCandidate& G, const std::vector<EvaluationPoint>& points,
                        GetzlerMode mode, std::uint64_t z_seed, std::size_t z_samples) {
    if (points.empty()) fail(ErrorCode::Usage, "getzler_residual needs at least one point");
    const GJet jet(G, P.dimension());
    PointSampler zs(z_seed);
    const bool exact = !P.has_exp() && !jet.has_exp() &&
                       std::all_of(points.begin(), points.end(), [](const auto& p) { return p.is_exact(); });
    Real worst = 0;
    for (const auto& p : points) {
        if (exact)
            worst = std::max(worst, residual_at<Rational>(P, jet, std::span<const Rational>(p.rationals()), mode, zs,
                                                          z_samples));
        else {
            const auto r = p.reals();
            worst = std::max(worst, residual_at<Real>(P, jet, std::span<const Real>(r), mode, zs, z_samples));
        }
    }
    if (exact && worst == 0) return Scalar(Rational(0));
    return Scalar(worst);
}

bool check_bo7(const GCandidate& G, const Prepotential& P) {
    const GJet jet(G, P.dimension());
    std::vector<NormalForm> e(P.dimension());
    e[P.identity()] = NormalForm(Rational(1));
    return jet.directional_numerator(e).is_zero();
}

std::optional<Rational> euler_derivative_constant(const Prepotential& P, const GCandidate& G) {
    const GJet jet(G, P.dimension());
    return constant_ratio(jet.directional_numerator(euler_components(P.euler())), jet.denominator());
}

namespace {

template <class T>
T pair_eta(const Matrix<T>& eta, const std::vector<T>& x, const std::vector<T>& y) {
    T s(0);
    for (std::size_t a = 0; a < x.size(); ++a)
        for (std::size_t b = 0; b < y.size(); ++b) s += x[a] * eta(a, b) * y[b];
    return s;
}

template <class T>
Matrix<T> power(const Matrix<T>& m, int k) {
    Matrix<T> r = Matrix<T>::identity(m.rows());
    for (int i = 0; i < k; ++i) r = r * m;
    return r;
}

template <class T>
std::pair<T, T> bo9_sides(const Prepotential& P, const GJet& jet, int k, std::span<const T> p) {
    const auto fr = frame<T>(P, p);
    const std::size_t n = fr.n;
    if (fr.mu.empty()) fail(ErrorCode::NotQuasihomogeneous, P.name() + ": charges unavailable");
    const T d(*P.charge_d());
    Matrix<T> mu(n, n);
    for (std::size_t a = 0; a < n; ++a) mu(a, a) = fr.mu[a];

    std::vector<Matrix<T>> up;
    for (int j = 0; j <= k; ++j) up.push_back(power(fr.U, j));

    const auto grad = jet.gradient<T>(p);
    const auto v = up[k - 1].apply(fr.E);
    T lhs(0);
    for (std::size_t a = 0; a < n; ++a) lhs += v[a] * grad[a];

    Matrix<T> s1(n, n);
    for (int j = 0; j <= k - 1; ++j) s1 = s1 + up[j] * mu * up[k - 1 - j];
    const Matrix<T> m1 = mu * s1;
    T tr(0);
    for (std::size_t a = 0; a < n; ++a) tr += m1(a, a);

    Matrix<T> s2(n, n);
    for (int j = 0; j <= k - 2; ++j) s2 = s2 + up[j] * mu * up[k - 2 - j];
    auto w = s2.apply(fr.E);
    const auto tail = up[k - 2].apply(fr.E);
    for (std::size_t a = 0; a < n; ++a) w[a] -= d / T(2) * tail[a];

    const T rhs = -T(Rational(1, 4)) * tr - T(Rational(1, 24)) * pair_eta(fr.eta, w, fr.H);
    return {lhs, rhs};
}

Scalar to_scalar(const Rational& x) { return Scalar(x); }
Scalar to_scalar(const Real& x) { return Scalar(x); }

}  // namespace

IdentityCheck check_bo8(const Prepotential& P, const GCandidate& G, const EvaluationPoint& p, const Real& tol) {
    const GJet jet(G, P.dimension());
    const Rational rhs = gamma_theorem1(P);
    IdentityCheck out;
    out.rhs = Scalar(rhs);
    if (p.is_exact() && !jet.has_exp()) {
        const auto& q = p.rationals();
        const auto g = jet.gradient<Rational>(q);
        const auto e = P.euler().at<Rational>(q);
        Rational lhs = 0;
        for (std::size_t a = 0; a < g.size(); ++a) lhs += e[a] * g[a];
        out.lhs = Scalar(lhs);
        out.match = lhs == rhs;
    } else {
        const auto r = p.reals();
        const auto g = jet.gradient<Real>(r);
        const auto e = P.euler().at<Real>(r);
        Real lhs = 0;
        for (std::size_t a = 0; a < g.size(); ++a) lhs += e[a] * g[a];
        out.lhs = Scalar(lhs);
        out.match = boost::multiprecision::abs(lhs - Real(rhs)) <= tol;
    }
    return out;
}

IdentityCheck check_bo9(const Prepotential& P, const GCandidate& G, int k, const EvaluationPoint& p,
                        const Real& tol) {
    if (k < 2) fail(ErrorCode::Usage, "bo9 needs k >= 2");
    const GJet jet(G, P.dimension());
    IdentityCheck out;
    if (p.is_exact() && !jet.has_exp() && !P.has_exp()) {
        const auto [lhs, rhs] = bo9_sides<Rational>(P, jet, k, std::span<const Rational>(p.rationals()));
        out.lhs = to_scalar(lhs);
        out.rhs = to_scalar(rhs);
        out.match = lhs == rhs;
    } else {
        const auto r = p.reals();
        const auto [lhs, rhs] = bo9_sides<Real>(P, jet, k, std::span<const Real>(r));
        out.lhs = to_scalar(lhs);
        out.rhs = to_scalar(rhs);
        const Real scale = std::max(Real(1), boost::multiprecision::abs(rhs));
        out.match = boost::multiprecision::abs(lhs - rhs) <= tol * scale;
    }
    return out;
}

Rational gamma_theorem1(std::size_t n, const Rational& d, const std::vector<Rational>& q) {
    Rational sum = 0;
    for (const auto& qa : q) {
        const Rational mu = qa - d / 2;
        sum += mu * mu;
    }
    return -sum / 4 + Rational(static_cast<long>(n)) * d / 48;
}

Rational gamma_theorem1(const Prepotential& P) {
    const Charges c = charges(P);
    return gamma_theorem1(P.dimension(), c.d, c.q);
}

namespace {

Rational coxeter_coefficient(long N) {
    if (N < 3) fail(ErrorCode::InvalidModel, "caustic type N must be at least 3");
    return -Rational((N - 2) * (N - 3), 24 * N);
}

}  // namespace

GCandidate build_g_coxeter(const std::vector<CausticDatum>& data) {
    GCandidate G;
    for (const auto& c : data) {
        const Rational coeff = coxeter_coefficient(c.N);
        if (coeff != 0) G.logs.push_back({coeff, c.kappa});
    }
    return G;
}

GCandidate build_g_eaw(const std::vector<CausticDatum>& data, long n_log, std::size_t n) {
    if (n_log < 1) fail(ErrorCode::InvalidModel, "N_log must be at least 1");
    GCandidate G = build_g_coxeter(data);
    G.linear.assign(n, Rational(0));
    G.linear[n - 1] = -Rational(n_log, 24);
    return G;
}

Rational euler_weight(const Expression& kappa, const EulerField& E) {
    const NormalForm k = to_normal_form(kappa);
    const auto w = constant_ratio(E.apply(k), k);
    if (!w) fail(ErrorCode::NotQuasihomogeneous, "kappa = " + kappa.to_string() + " is not an Euler eigenfunction");
    return *w;
}

Rational gamma_from_caustics(const std::vector<CausticWeight>& data, long n_log, const Rational& r_n) {
    Rational g = -Rational(n_log) * r_n / 24;
    for (const auto& c : data) g += coxeter_coefficient(c.N) * c.weight;
    return g;
}

Rational gamma_from_caustics(const std::vector<CausticDatum>& data, long n_log, const EulerField& E) {
    std::vector<CausticWeight> w;
    for (const auto& c : data) w.push_back({c.N, euler_weight(c.kappa, E)});
    return gamma_from_caustics(w, n_log, n_log == 0 ? Rational(0) : E.shifts.back());
}

}  // namespace frobg
