#include "frobg/symmetry.hpp"

#include <algorithm>
#include <numeric>

namespace frobg {

namespace {

Real rabs(const Real& x) { return boost::multiprecision::abs(x); }

Real evaluate_real(const Expression& e, const std::vector<Real>& p) {
    return evaluate_as<Real>(e, std::span<const Real>(p));
}

Matrix<Real> jacobian_at(const std::vector<std::vector<Expression>>& jac, const std::vector<Real>& p) {
    const std::size_t n = jac.size();
    Matrix<Real> m(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) m(a, b) = evaluate_real(jac[a][b], p);
    return m;
}

Matrix<Real> checked_inverse(const Matrix<Real>& m) {
    if (rabs(determinant(m)) < Real("1e-10")) fail(ErrorCode::SingularTransform, "Legendre map is singular");
    return inverse(m);
}

std::vector<Real> image(const std::vector<Expression>& map, const std::vector<Real>& p) {
    std::vector<Real> q;
    for (const auto& e : map) q.push_back(evaluate_real(e, p));
    return q;
}

// Leibniz expansion; n stays small.
Expression symbolic_determinant(const std::vector<std::vector<Expression>>& m) {
    const std::size_t n = m.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Expression> terms;
    do {
        long inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        std::vector<Expression> factors{Expression(inversions % 2 == 0 ? 1 : -1)};
        for (std::size_t i = 0; i < n; ++i) factors.push_back(m[i][perm[i]]);
        terms.push_back(Expression::product(std::move(factors)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return normalize(Expression::sum(std::move(terms)));
}

}  // namespace

std::vector<Expression> legendre_map(const Prepotential& P, std::size_t kappa) {
    const std::size_t n = P.dimension();
    if (kappa >= n) fail(ErrorCode::Usage, "Legendre index out of range");
    const Matrix<Rational> eta_inv = inverse(eta_metric(P));
    const Expression dk = diff(P.F(), kappa);
    std::vector<Expression> lower;
    for (std::size_t b = 0; b < n; ++b) lower.push_back(diff(dk, b));
    std::vector<Expression> out;
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<Expression> terms;
        for (std::size_t b = 0; b < n; ++b)
            if (eta_inv(a, b) != 0) terms.push_back(Expression(eta_inv(a, b)) * lower[b]);
        out.push_back(normalize(Expression::sum(std::move(terms))));
    }
    return out;
}

std::vector<std::vector<Expression>> legendre_jacobian(const Prepotential& P, std::size_t kappa) {
    const auto map = legendre_map(P, kappa);
    std::vector<std::vector<Expression>> jac(map.size());
    for (std::size_t a = 0; a < map.size(); ++a)
        for (std::size_t b = 0; b < map.size(); ++b) jac[a].push_back(normalize(diff(map[a], b)));
    return jac;
}

LegendreCheck legendre_check(const Prepotential& P, const Prepotential& Phat, std::size_t kappa,
                             const std::vector<std::vector<Real>>& points) {
    const std::size_t n = P.dimension();
    if (Phat.dimension() != n) fail(ErrorCode::InvalidModel, "dimensions differ");
    const auto map = legendre_map(P, kappa);
    const auto jac = legendre_jacobian(P, kappa);
    std::vector<std::vector<Expression>> second(n), second_hat(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            second[a].push_back(diff(diff(P.F(), a), b));
            second_hat[a].push_back(diff(diff(Phat.F(), a), b));
        }
    LegendreCheck out;
    out.residual = 0;
    out.offset_spread = 0;
    for (const auto& p : points) {
        const Matrix<Real> inv = checked_inverse(jacobian_at(jac, p));  // inv(b, c) = d t_b / d t^_c
        const auto q = image(map, p);
        const auto fr = frame<Real>(P, std::span<const Real>(p));
        const auto frh = frame<Real>(Phat, std::span<const Real>(q));
        // c^_{abc} = sum_d (d t_d / d t^_c) d_d (d_a d_b F)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) {
                    Real transported = 0;
                    for (std::size_t d = 0; d < n; ++d) transported += inv(d, c) * fr.c3(d, a, b);
                    out.residual = std::max(out.residual, rabs(frh.c3(a, b, c) - transported));
                }
        Matrix<Real> off(n, n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                off(a, b) = evaluate_real(second_hat[a][b], q) - evaluate_real(second[a][b], p);
        if (out.points == 0)
            out.offset = off;
        else
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    out.offset_spread = std::max(out.offset_spread, rabs(off(a, b) - out.offset(a, b)));
        ++out.points;
    }
    return out;
}

GCandidate transform_g_legendre(const GCandidate& G, const Prepotential& P, std::size_t kappa) {
    const Expression det = symbolic_determinant(legendre_jacobian(P, kappa));
    if (det.is_zero()) fail(ErrorCode::SingularTransform, "Jacobian determinant vanishes identically");
    GCandidate out = G;
    out.linear.resize(P.dimension(), Rational(0));
    if (det.is_constant()) return out;  // only shifts G by a constant
    // log exp(l . t) contributes linearly.
    if (det.kind() == Expression::Kind::Exp) {
        const auto& lf = det.linear_form();
        for (std::size_t a = 0; a < lf.size(); ++a) out.linear[a] -= lf[a] / 24;
        return out;
    }
    out.logs.push_back({Rational(-1, 24), det});
    return out;
}

Real legendre_g_residual(const GCandidate& pulled_back, const Prepotential& P, std::size_t kappa,
                         const GCandidate& Ghat, const std::vector<std::vector<Real>>& points) {
    const std::size_t n = P.dimension();
    const auto map = legendre_map(P, kappa);
    const auto jac = legendre_jacobian(P, kappa);
    const GJet jet(pulled_back, n), jet_hat(Ghat, n);
    Real worst = 0;
    for (const auto& p : points) {
        const Matrix<Real> J = jacobian_at(jac, p);
        checked_inverse(J);
        const auto q = image(map, p);
        const auto g = jet.gradient<Real>(std::span<const Real>(p));
        const auto gh = jet_hat.gradient<Real>(std::span<const Real>(q));
        for (std::size_t b = 0; b < n; ++b) {
            Real pulled = 0;
            for (std::size_t a = 0; a < n; ++a) pulled += J(a, b) * gh[a];
            worst = std::max(worst, rabs(g[b] - pulled));
        }
    }
    return worst;
}

Rational transform_gamma_legendre(const Rational& gamma, std::size_t n, const Rational& q_kappa) {
    return gamma - Rational(static_cast<long>(n)) * q_kappa / 24;
}

InversionResult transform_g_inversion(const GCandidate& G, std::size_t n, const Rational& d) {
    if (d == 1) fail(ErrorCode::PreconditionViolated, "inversion requires d != 1");
    if (n == 0) fail(ErrorCode::PreconditionViolated, "empty dimension");
    const Rational c = Rational(static_cast<long>(n), 24) - Rational(1, 2);
    InversionResult out{G, c * (1 - d), "tau^_I = tau_I / sqrt(t_n)"};
    if (c != 0) out.G.logs.push_back({c, var(n - 1)});
    return out;
}

InversionResult transform_g_inversion(const GCandidate& G, const Prepotential& P) {
    if (!P.euler().is_linear()) fail(ErrorCode::PreconditionViolated, "inversion requires a linear Euler field");
    const auto& d = P.charge_d();
    if (!d) fail(ErrorCode::PreconditionViolated, "charge d is unknown");
    return transform_g_inversion(G, P.dimension(), *d);
}

}  // namespace frobg
