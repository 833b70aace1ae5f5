#pragma once

// Legendre-type symmetries S_kappa and the inversion, with their action on G
// and on the scaling anomaly.

#include "frobg/getzler.hpp"

#include <vector>

namespace frobg {

/// Hatted coordinates t^_a = eta^{ab} d_kappa d_b F as functions of t.
std::vector<Expression> legendre_map(const Prepotential& P, std::size_t kappa);

/// d t^_a / d t_b as expressions.
std::vector<std::vector<Expression>> legendre_jacobian(const Prepotential& P, std::size_t kappa);

struct LegendreCheck {
    Real residual;        // max |c^_abc(t^(p)) - (J^{-1})-transported c_abc(p)| over points
    Real offset_spread;   // max variation of d^2 F^ - d^2 F between points
    Matrix<Real> offset;  // d^2 F^(t^(p0)) - d^2 F(p0)
    std::size_t points = 0;
};

/// Compares the hatted prepotential against F at the images of the given points.
/// Second derivatives agree up to a constant matrix (F^ is defined modulo
/// quadratics); third derivatives are compared exactly through the inverse
/// Jacobian of t -> t^. Throws SingularTransform when |det| < 1e-10.
LegendreCheck legendre_check(const Prepotential& P, const Prepotential& Phat, std::size_t kappa,
                             const std::vector<std::vector<Real>>& points);

/// G - (1/24) log det(d t^ / d t), as a function of t.
GCandidate transform_g_legendre(const GCandidate& G, const Prepotential& P, std::size_t kappa);

/// Max over points of |grad_t (pulled-back G) - J^T grad_{t^} G^(t^(p))|.
Real legendre_g_residual(const GCandidate& pulled_back, const Prepotential& P, std::size_t kappa,
                         const GCandidate& Ghat, const std::vector<std::vector<Real>>& points);

Rational transform_gamma_legendre(const Rational& gamma, std::size_t n, const Rational& q_kappa);

struct InversionResult {
    GCandidate G;           // G + (n/24 - 1/2) log t_n
    Rational gamma_shift;   // (n/24 - 1/2)(1 - d)
    std::string tau_rule;
};

/// Throws PreconditionViolated when d = 1.
InversionResult transform_g_inversion(const GCandidate& G, std::size_t n, const Rational& d);

/// Also requires a purely linear Euler field.
InversionResult transform_g_inversion(const GCandidate& G, const Prepotential& P);

}  // namespace frobg
