#include "frobg/lgmodels.hpp"

#include "frobg/polyroots.hpp"

namespace frobg {

Superpotential::Superpotential(int k, int m, std::vector<Complex> a) : k_(k), m_(m), a_(std::move(a)) {
    if (k < 1 || m < 1) fail(ErrorCode::InvalidModel, "superpotential needs k >= 1 and m >= 1");
    if (a_.size() != static_cast<std::size_t>(k + m))
        fail(ErrorCode::InvalidModel, "expected " + std::to_string(k + m) + " coefficients");
    if (a_.back() == Complex(0)) fail(ErrorCode::DegenerateLeadingCoefficient, "a_{k+m} must be nonzero");
}

Complex Superpotential::value(const Complex& x) const {
    // x^{-m} * (x^{k+m} + a_1 x^{k+m-1} + ... + a_{k+m})
    Complex acc(1);
    for (const auto& c : a_) acc = acc * x + c;
    return acc / pow(x, m_);
}

Complex Superpotential::derivative(const Complex& x) const {
    return horner(critical_polynomial(), x) / pow(x, m_ + 1);
}

std::vector<Complex> Superpotential::critical_polynomial() const {
    const int deg = k_ + m_;
    std::vector<Complex> c(deg + 1, Complex(0));
    c[deg] = Complex(Real(k_));
    for (int j = 1; j <= deg; ++j) c[deg - j] = Real(k_ - j) * a_[j - 1];
    return c;
}

std::vector<Complex> critical_points(const Superpotential& S) { return polynomial_roots(S.critical_polynomial(), 3); }

std::vector<Complex> critical_values(const Superpotential& S) {
    std::vector<Complex> u;
    for (const auto& x : critical_points(S)) u.push_back(S.value(x));
    sort_spectrum(u);
    return u;
}

Complex lg_caustic_indicator(const Superpotential& S) {
    const auto u = critical_values(S);
    Complex prod(1);
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j) prod *= (u[i] - u[j]) * (u[i] - u[j]);
    return prod;
}

CollisionFit lg_collision_exponent(const SuperpotentialPath& path, std::size_t samples) {
    return fit_collision([&](const Real& s) { return critical_values(path(s)); }, samples);
}

namespace {

Complex random_complex(PointSampler& rng) {
    return Complex(Real(rng.next_rational()), Real(rng.next_rational()));
}

}  // namespace

SuperpotentialPath transversal_path(int k, int m, std::uint64_t seed) {
    if (k < 1 || m < 1) fail(ErrorCode::InvalidModel, "superpotential needs k >= 1 and m >= 1");
    const int deg = k + m;
    // a_k does not enter x^{m+1} F'; the others enter linearly.
    std::vector<int> active;
    for (int j = 1; j <= deg; ++j)
        if (j != k) active.push_back(j);
    if (active.size() < 2)
        fail(ErrorCode::NoCollision, "(k, m) = (1, 1) has no caustic in the interior a_2 != 0");

    PointSampler rng(seed, Rational(1), 64);
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<Complex> a(deg);
        for (auto& c : a) c = random_complex(rng);
        Complex x0 = random_complex(rng);
        if (abs(x0) < Real(1) / 4) continue;
        const int j1 = active[rng.next_raw() % active.size()];
        int j2 = j1;
        while (j2 == j1) j2 = active[rng.next_raw() % active.size()];

        // P(x0) = 0 and P'(x0) = 0, linear in (a_j1, a_j2).
        auto row = [&](int j) {
            const int d = deg - j;  // degree of the monomial carrying a_j
            const Complex w = Real(k - j);
            return std::pair{w * pow(x0, d), d > 0 ? w * Real(d) * pow(x0, d - 1) : Complex(0)};
        };
        std::vector<Complex> poly(deg + 1, Complex(0));
        poly[deg] = Complex(Real(k));
        for (int j = 1; j <= deg; ++j)
            if (j != j1 && j != j2) poly[deg - j] = Real(k - j) * a[j - 1];
        std::vector<Complex> dpoly;
        for (int i = 1; i <= deg; ++i) dpoly.push_back(poly[i] * Real(i));
        const auto [p1, d1] = row(j1);
        const auto [p2, d2] = row(j2);
        Matrix<Complex> M(2, 2);
        M(0, 0) = p1;
        M(0, 1) = p2;
        M(1, 0) = d1;
        M(1, 1) = d2;
        if (abs(determinant(M)) < Real("1e-6")) continue;
        const auto sol = solve(M, std::vector<Complex>{-horner(poly, x0), -horner(dpoly, x0)});
        if (!sol) continue;
        a[j1 - 1] = (*sol)[0];
        a[j2 - 1] = (*sol)[1];
        if (abs(a.back()) < Real(1) / 8) continue;

        std::vector<Complex> delta(deg);
        for (auto& c : delta) c = random_complex(rng);
        // The double point must be simple-double (not triple) and other points distinct.
        const Superpotential s0(k, m, a);
        const auto clusters = cluster_roots(critical_points(s0), Real("1e-7"));
        if (clusters.size() != static_cast<std::size_t>(deg - 1)) continue;
        return [k, m, a, delta](const Real& s) {
            std::vector<Complex> b = a;
            for (std::size_t i = 0; i < b.size(); ++i) b[i] += s * delta[i];
            return Superpotential(k, m, b);
        };
    }
    fail(ErrorCode::NoCollision, "could not construct a transversal path");
}

SuperpotentialPath boundary_path(int k, int m, std::uint64_t seed) {
    PointSampler rng(seed, Rational(1), 64);
    std::vector<Complex> a(k + m);
    for (auto& c : a) c = random_complex(rng);
    return [k, m, a](const Real& s) {
        auto b = a;
        b.back() = Complex(s);
        return Superpotential(k, m, b);
    };
}

}  // namespace frobg
