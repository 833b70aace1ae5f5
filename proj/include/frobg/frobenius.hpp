#pragma once

// Frobenius-manifold tensors derived from a prepotential F.
//
// Indices are 0-based. Third to fifth derivatives of F are precomputed as
// normal forms when a Prepotential is built; everything pointwise is assembled
// into a FrobeniusFrame over Rational (exact) or Real.

#include "frobg/expr.hpp"
#include "frobg/matrix.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace frobg {

/// E = sum_a (weights[a] t_a + shifts[a]) d/dt_a
struct EulerField {
    std::vector<Rational> weights;
    std::vector<Rational> shifts;

    std::size_t dimension() const { return weights.size(); }
    bool is_linear() const;
    NormalForm component(std::size_t a) const;
    NormalForm apply(const NormalForm& f) const;
    Expression apply(const Expression& f) const;

    template <class T>
    std::vector<T> at(std::span<const T> point) const {
        std::vector<T> v(dimension(), T(0));
        for (std::size_t a = 0; a < v.size(); ++a) v[a] = T(weights[a]) * point[a] + T(shifts[a]);
        return v;
    }
};

class Prepotential {
public:
    /// Throws UnsupportedShape when a third derivative leaves the exp-polynomial ring.
    Prepotential(std::string name, Expression F, std::size_t identity, EulerField euler);

    const std::string& name() const { return name_; }
    std::size_t dimension() const { return euler_.dimension(); }
    const Expression& F() const { return F_; }
    std::size_t identity() const { return identity_; }
    const EulerField& euler() const { return euler_; }

    /// Partial derivative of F of order 3, 4 or 5; the index order is irrelevant.
    const NormalForm& derivative(std::vector<std::size_t> idx) const;
    const NormalForm& c3(std::size_t a, std::size_t b, std::size_t c) const { return derivative({a, b, c}); }

    const std::map<std::vector<std::size_t>, NormalForm>& derivatives() const { return derivs_; }

    /// True when some derivative of order 3..5 contains an exponential.
    bool has_exp() const { return has_exp_; }

    /// Charge d from the grading of the third derivatives; empty when F is not quasihomogeneous.
    const std::optional<Rational>& charge_d() const { return d_; }

private:
    std::string name_;
    Expression F_;
    std::size_t identity_;
    EulerField euler_;
    std::map<std::vector<std::size_t>, NormalForm> derivs_;
    bool has_exp_ = false;
    std::optional<Rational> d_;
};

/// eta_ab = d_k d_a d_b F. Throws NonConstantMetric / DegenerateMetric.
Matrix<Rational> eta_metric(const Prepotential& P);

struct QuasihomResult {
    Rational d;
    Expression remainder;  // L_E F - (3 - d) F, normalized when F is log-free
};

/// Finds d with L_E F - (3-d) F of degree <= 2. Throws NotQuasihomogeneous.
QuasihomResult quasihom_check(const Prepotential& P);

struct Charges {
    std::vector<Rational> q;
    std::vector<Rational> mu;
    Rational d;
};

Charges charges(const Prepotential& P);

template <class T>
struct FrobeniusFrame {
    std::size_t n = 0;
    std::size_t identity = 0;
    std::vector<T> point;
    Matrix<T> eta, eta_inv;
    Tensor<T> c3, c4, c5;     // all lower indices
    Tensor<T> cu3, cu4, cu5;  // first index raised with eta_inv
    Matrix<T> U;              // U(a, b) = U^a_b
    std::vector<T> E;
    std::vector<T> mu;  // empty when F is not quasihomogeneous
    std::vector<T> H;
};

/// eta is evaluated pointwise, so non-flat fixtures still produce a frame.
template <class T>
FrobeniusFrame<T> frame(const Prepotential& P, std::span<const T> point);

extern template FrobeniusFrame<Rational> frame<Rational>(const Prepotential&, std::span<const Rational>);
extern template FrobeniusFrame<Real> frame<Real>(const Prepotential&, std::span<const Real>);

/// Max |sum_m c^m_ab c_mcd - c^m_ac c_mbd|; exact when possible.
Scalar wdvv_residual(const Prepotential& P, const EvaluationPoint& p);

/// Symbolic check that the WDVV tensor vanishes identically (needs constant eta).
bool wdvv_identity(const Prepotential& P);

/// g^ij = sum_e E^e eta^{im} eta^{jn} c_mne
template <class T>
Matrix<T> intersection_form(const FrobeniusFrame<T>& fr) {
    const std::size_t n = fr.n;
    Matrix<T> g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t m = 0; m < n; ++m)
                for (std::size_t v = 0; v < n; ++v) {
                    const T w = fr.eta_inv(i, m) * fr.eta_inv(j, v);
                    if (w == T(0)) continue;
                    for (std::size_t e = 0; e < n; ++e) g(i, j) += w * fr.E[e] * fr.c3(m, v, e);
                }
    return g;
}

/// g^ij = sum_n eta^{in} U^j_n
template <class T>
Matrix<T> intersection_form_via_u(const FrobeniusFrame<T>& fr) {
    return fr.eta_inv * fr.U.transpose();
}

/// Coordinates whose d_k d_a d_b F is constant and nondegenerate.
std::vector<std::size_t> unit_candidates(const Expression& F, std::size_t n);

/// Solves L_E c_abc = (3 - d - e_a - e_b - e_c) c_abc for (e, r, d) with e_identity = 1.
/// Free parameters are set to zero. Throws NotQuasihomogeneous when inconsistent.
std::pair<EulerField, Rational> recover_euler_field(const Expression& F, std::size_t n, std::size_t identity);

}  // namespace frobg
