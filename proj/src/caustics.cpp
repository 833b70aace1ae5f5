#include "frobg/caustics.hpp"

#include "frobg/polyroots.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

namespace frobg {

namespace {

Real rabs(const Real& x) { return boost::multiprecision::abs(x); }

Real step_size() {
    return boost::multiprecision::pow(Real(10), -Real(static_cast<long>(precision() / 3)));
}

std::vector<Real> shifted(std::span<const Real> p, std::span<const Real> v, const Real& h) {
    std::vector<Real> q(p.begin(), p.end());
    for (std::size_t a = 0; a < q.size(); ++a) q[a] += h * v[a];
    return q;
}

// (a o b)^x = c^x_{yz} a^y b^z
std::vector<Complex> multiply(const FrobeniusFrame<Real>& fr, const std::vector<Complex>& a, const std::vector<Complex>& b) {
    std::vector<Complex> out(fr.n, Complex(0));
    for (std::size_t x = 0; x < fr.n; ++x)
        for (std::size_t y = 0; y < fr.n; ++y)
            for (std::size_t z = 0; z < fr.n; ++z)
                if (fr.cu3(x, y, z) != 0) out[x] += fr.cu3(x, y, z) * a[y] * b[z];
    return out;
}

std::vector<Complex> column(const Matrix<Complex>& m, std::size_t j) {
    std::vector<Complex> c(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) c[i] = m(i, j);
    return c;
}

Real min_gap(const std::vector<Complex>& u) {
    Real g = -1;
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j) {
            const Real d = abs(u[i] - u[j]);
            if (g < 0 || d < g) g = d;
        }
    return g < 0 ? Real(0) : g;
}

// Reorders next so that next[i] continues prev[i].
std::vector<Complex> continue_spectrum(const std::vector<Complex>& prev, std::vector<Complex> next) {
    std::vector<Complex> out(prev.size());
    std::vector<bool> used(next.size(), false);
    for (std::size_t i = 0; i < prev.size(); ++i) {
        std::size_t best = next.size();
        Real best_d = 0;
        for (std::size_t j = 0; j < next.size(); ++j) {
            if (used[j]) continue;
            const Real d = abs(prev[i] - next[j]);
            if (best == next.size() || d < best_d) {
                best = j;
                best_d = d;
            }
        }
        used[best] = true;
        out[i] = next[best];
    }
    return out;
}

ResidueEstimate extrapolate(std::vector<Real> eps, std::vector<Real> raw) {
    for (const auto& r : raw)
        if (!boost::multiprecision::isfinite(r)) fail(ErrorCode::NotLogarithmic, "form is not finite on the probe ray");
    const Real a0 = rabs(raw[0]), a1 = rabs(raw[1]), a2 = rabs(raw[2]);
    if (a2 > 1 && a2 > Real(3) / 2 * a1 && a1 > Real(3) / 2 * a0)
        fail(ErrorCode::NotLogarithmic, "residue estimates diverge towards the caustic");
    const Real b0 = 2 * raw[1] - raw[0];
    const Real b1 = 2 * raw[2] - raw[1];
    const Real c = (4 * b1 - b0) / 3;
    return {c, rabs(c - b1), std::move(eps), std::move(raw)};
}

// Three Richardson levels from eps; eps is halved until the extrapolation
// settles, so probes start inside the region where the pole dominates.
ResidueEstimate adaptive_probe(const std::function<Real(const Real&)>& sample, const Real& eps0) {
    std::optional<ResidueEstimate> best;
    Real eps = eps0;
    for (int attempt = 0; attempt < 40; ++attempt, eps /= 2) {
        std::vector<Real> e, raw;
        try {
            for (int level = 0; level < 3; ++level) {
                e.push_back(eps / Real(1L << level));
                raw.push_back(sample(e.back()));
            }
        } catch (const Error& err) {
            if (err.code() == ErrorCode::NotLogarithmic) throw;
            if (best) break;
            continue;
        }
        ResidueEstimate est = extrapolate(std::move(e), std::move(raw));
        if (!best || est.error < best->error) best = est;
        if (best->error < Real("1e-8") * std::max(Real(1), rabs(best->value))) break;
    }
    if (!best) fail(ErrorCode::NotLogarithmic, "form could not be evaluated on the probe ray");
    return *best;
}

}  // namespace

template <class T>
std::vector<T> poly_lambda(const Prepotential& P, std::span<const T> p) {
    const FrobeniusFrame<T> fr = frame<T>(P, p);
    const Matrix<T> g = intersection_form(fr);
    const std::size_t n = fr.n;
    // Interpolate the degree-n polynomial through lambda = 0..n.
    Matrix<T> vander(n + 1, n + 1);
    std::vector<T> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const T lambda = T(static_cast<long>(i));
        T power(1);
        for (std::size_t j = 0; j <= n; ++j) {
            vander(i, j) = power;
            power *= lambda;
        }
        values[i] = determinant(g - lambda * fr.eta_inv);
    }
    auto c = solve(vander, values);
    if (!c) fail(ErrorCode::DegenerateMetric, "interpolation failed");
    return *c;
}

template <class T>
T polynomial_discriminant(const std::vector<T>& coeffs) {
    std::vector<T> a = coeffs;
    while (a.size() > 1 && a.back() == T(0)) a.pop_back();
    const std::size_t n = a.size() - 1;
    if (n < 1) return T(0);
    if (n == 1) return T(1);
    std::vector<T> b;  // derivative
    for (std::size_t i = 1; i <= n; ++i) b.push_back(a[i] * T(static_cast<long>(i)));
    // Sylvester matrix of a (degree n) and b (degree n - 1), highest degree first.
    const std::size_t m = n - 1, size = n + m;
    Matrix<T> s(size, size);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t i = 0; i <= n; ++i) s(r, r + i) = a[n - i];
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i <= m; ++i) s(m + r, r + i) = b[m - i];
    const T res = determinant(s);
    const T sign = (n * (n - 1) / 2) % 2 == 0 ? T(1) : T(-1);
    return sign * res / a[n];
}

template <class T>
T discriminant(const Prepotential& P, std::span<const T> p) {
    return polynomial_discriminant(poly_lambda<T>(P, p));
}

template std::vector<Rational> poly_lambda<Rational>(const Prepotential&, std::span<const Rational>);
template std::vector<Real> poly_lambda<Real>(const Prepotential&, std::span<const Real>);
template Rational discriminant<Rational>(const Prepotential&, std::span<const Rational>);
template Real discriminant<Real>(const Prepotential&, std::span<const Real>);
template Rational polynomial_discriminant<Rational>(const std::vector<Rational>&);
template Real polynomial_discriminant<Real>(const std::vector<Real>&);

std::vector<Complex> canonical_coordinates(const Prepotential& P, std::span<const Real> p) {
    return eigenvalues(frame<Real>(P, p).U.cast<Complex>());
}

CanonicalFrame canonical_frame(const Prepotential& P, std::span<const Real> p) {
    const FrobeniusFrame<Real> fr = frame<Real>(P, p);
    const EigenSystem es = eigensystem(fr.U.cast<Complex>());
    CanonicalFrame cf;
    cf.point.assign(p.begin(), p.end());
    cf.u = es.values;
    cf.gap = min_gap(cf.u);
    if (cf.gap < Real("1e-8")) fail(ErrorCode::NotSemisimple, "canonical coordinates collide (gap " + to_decimal(cf.gap) + ")");
    const std::size_t n = fr.n;
    cf.idempotents = Matrix<Complex>(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = column(es.vectors, i);
        const auto w = multiply(fr, v, v);
        std::size_t k = 0;
        for (std::size_t a = 1; a < n; ++a)
            if (abs(v[a]) > abs(v[k])) k = a;
        const Complex s = w[k] / v[k];
        if (abs(s) == 0) fail(ErrorCode::NotSemisimple, "nilpotent eigenvector");
        for (std::size_t a = 0; a < n; ++a) cf.idempotents(a, i) = v[a] / s;
    }
    cf.J = determinant(cf.idempotents);
    return cf;
}

Real idempotent_residual(const Prepotential& P, const CanonicalFrame& cf) {
    const FrobeniusFrame<Real> fr = frame<Real>(P, std::span<const Real>(cf.point));
    const std::size_t n = fr.n;
    Real worst = 0;
    std::vector<Complex> sum(n, Complex(0));
    for (std::size_t i = 0; i < n; ++i) {
        const auto pi = column(cf.idempotents, i);
        const auto sq = multiply(fr, pi, pi);
        for (std::size_t a = 0; a < n; ++a) {
            worst = std::max(worst, abs(sq[a] - pi[a]));
            sum[a] += pi[a];
        }
    }
    for (std::size_t a = 0; a < n; ++a) worst = std::max(worst, abs(sum[a] - Complex(a == fr.identity ? 1 : 0)));
    return worst;
}

Real spectral_consistency(const Prepotential& P, std::span<const Real> p) {
    const auto u = canonical_coordinates(P, p);
    std::vector<Complex> coeffs;
    for (const auto& c : poly_lambda<Real>(P, p)) coeffs.emplace_back(c);
    const auto roots = polynomial_roots(coeffs, 3);
    if (roots.size() != u.size()) return Real(1);
    Real worst = 0;
    for (std::size_t i = 0; i < u.size(); ++i) worst = std::max(worst, abs(u[i] - roots[i]));
    return worst;
}

CollisionFit fit_collision(const SpectrumPath& spectrum, std::size_t samples, const Real& s_min, const Real& s_max) {
    if (samples < 3) fail(ErrorCode::Usage, "need at least three samples");
    std::vector<Real> log_s;
    std::vector<std::vector<Complex>> track;
    const Real lo = log(s_min), hi = log(s_max);
    for (std::size_t k = 0; k < samples; ++k) {
        const Real ls = hi + (lo - hi) * Real(static_cast<long>(k)) / Real(static_cast<long>(samples - 1));
        auto u = spectrum(exp(ls));
        if (!track.empty()) u = continue_spectrum(track.back(), std::move(u));
        log_s.push_back(ls);
        track.push_back(std::move(u));
    }
    const auto& last = track.back();
    if (last.size() < 2) fail(ErrorCode::NoCollision, "fewer than two canonical coordinates");
    CollisionFit fit;
    Real best = -1;
    for (std::size_t i = 0; i < last.size(); ++i)
        for (std::size_t j = i + 1; j < last.size(); ++j) {
            const Real d = abs(last[i] - last[j]);
            if (best < 0 || d < best) {
                best = d;
                fit.first = i;
                fit.second = j;
            }
        }
    std::vector<Real> log_gap;
    for (const auto& u : track) {
        const Real d = abs(u[fit.first] - u[fit.second]);
        if (d == 0) fail(ErrorCode::NoCollision, "canonical coordinates coincide along the path");
        log_gap.push_back(log(d));
    }
    const Real count = Real(static_cast<long>(samples));
    Real mx = 0, my = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        mx += log_s[k];
        my += log_gap[k];
    }
    mx /= count;
    my /= count;
    Real sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        sxx += (log_s[k] - mx) * (log_s[k] - mx);
        sxy += (log_s[k] - mx) * (log_gap[k] - my);
    }
    fit.slope = sxy / sxx;
    fit.exponent = 2 * fit.slope;
    Real ss = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        const Real r = log_gap[k] - (my + fit.slope * (log_s[k] - mx));
        ss += r * r;
    }
    fit.rms = sqrt(ss / count);
    fit.gap_start = exp(log_gap.front());
    fit.gap_end = exp(log_gap.back());
    fit.samples = samples;
    if (fit.slope < Real(1) / 10)
        fail(ErrorCode::NoCollision, "gap does not shrink along the path (slope " + to_decimal(fit.slope, 4) + ")");
    return fit;
}

CollisionFit collision_exponent(const Prepotential& P, const FlatPath& path, std::size_t samples) {
    return fit_collision(
        [&](const Real& s) {
            const auto t = path(s);
            return canonical_coordinates(P, std::span<const Real>(t));
        },
        samples);
}

Real tau2d_form(const Prepotential& P, std::span<const Real> p, std::span<const Real> v) {
    if (P.dimension() != 2) fail(ErrorCode::Not2D, "tau form is implemented for two-dimensional models");
    const Matrix<Rational> eta = eta_metric(P);
    const std::size_t k = P.identity();
    // eta_i = d eta / d u_i = sum_a pi_i^a eta_{ka}
    auto egoroff_derivs = [&](std::span<const Real> q) {
        const CanonicalFrame cf = canonical_frame(P, q);
        std::array<Complex, 2> d{Complex(0), Complex(0)};
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t a = 0; a < 2; ++a) d[i] += cf.idempotents(a, i) * Real(eta(k, a));
        return std::pair{cf, d};
    };
    const auto [cf, d] = egoroff_derivs(p);
    const Real h = step_size();
    // d eta_2 / d t_a by central differences, contracted with pi_1.
    Complex eta12(0);
    for (std::size_t a = 0; a < 2; ++a) {
        std::array<Real, 2> e{0, 0};
        e[a] = 1;
        const auto plus = shifted(p, e, h), minus = shifted(p, e, -h);
        const Complex deriv = (egoroff_derivs(plus).second[1] - egoroff_derivs(minus).second[1]) / (2 * h);
        eta12 += cf.idempotents(a, 0) * deriv;
    }
    // du_i(v) from the inverse of the idempotent matrix.
    const Matrix<Complex> inv = inverse(cf.idempotents);
    std::vector<Complex> vc(v.begin(), v.end());
    const auto du = inv.apply(vc);
    const Complex diff = cf.u[0] - cf.u[1];
    const Complex value = diff * eta12 * eta12 / (d[0] * d[1]) * (du[0] - du[1]) / Real(8);
    return value.real();
}

Real dlogJ_form(const Prepotential& P, std::span<const Real> p, std::span<const Real> v) {
    const Real h = step_size();
    const auto plus = shifted(p, v, h), minus = shifted(p, v, -h);
    const Complex j0 = canonical_frame(P, p).J;
    const Complex jp = canonical_frame(P, std::span<const Real>(plus)).J;
    const Complex jm = canonical_frame(P, std::span<const Real>(minus)).J;
    return ((jp - jm) / (2 * h * j0)).real();
}

Real dG_form(const GJet& G, std::span<const Real> p, std::span<const Real> v) {
    const auto g = G.gradient<Real>(p);
    Real s = 0;
    for (std::size_t a = 0; a < g.size(); ++a) s += g[a] * v[a];
    return s;
}

ResidueEstimate residue_probe(const OneForm& form, const Expression& kappa, const std::vector<Real>& base,
                              const std::vector<Real>& direction, const Real& eps0) {
    std::vector<Expression> grad;
    for (std::size_t a = 0; a < direction.size(); ++a) grad.push_back(direction[a] != 0 ? diff(kappa, a) : Expression());
    return adaptive_probe(
        [&](const Real& e) {
            const auto q = shifted(base, direction, e);
            const std::span<const Real> qs(q);
            Real dkv = 0;
            for (std::size_t a = 0; a < direction.size(); ++a)
                if (direction[a] != 0) dkv += direction[a] * evaluate_as<Real>(grad[a], qs);
            if (dkv == 0) fail(ErrorCode::NotLogarithmic, "probe direction is tangent to the caustic");
            return evaluate_as<Real>(kappa, qs) * form(q, direction) / dkv;
        },
        eps0);
}

ResidueEstimate residue_probe_log(const OneForm& form, std::size_t coord, const std::vector<Real>& base,
                                  const Real& eps0) {
    std::vector<Real> dir(base.size(), Real(0));
    dir[coord] = 1;
    return adaptive_probe(
        [&](const Real& e) {
            auto q = base;
            q[coord] = log(e);
            return form(q, dir);
        },
        eps0);
}

}  // namespace frobg
