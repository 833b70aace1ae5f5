#pragma once

// Canonical coordinates, caustics and the residue / collision-exponent probes
// around them.

#include "frobg/getzler.hpp"

#include <functional>
#include <vector>

namespace frobg {

struct CanonicalFrame {
    std::vector<Real> point;
    std::vector<Complex> u;         // sorted with spectral_less
    Matrix<Complex> idempotents;    // column i = d t / d u_i
    Complex J;                      // det of idempotents
    bool semisimple = true;
    Real gap;                       // min |u_i - u_j|
};

/// Coefficients (increasing degree) of det(g - lambda eta^{-1}).
template <class T>
std::vector<T> poly_lambda(const Prepotential& P, std::span<const T> p);

/// Discriminant of poly_lambda; zero on the caustic.
template <class T>
T discriminant(const Prepotential& P, std::span<const T> p);

extern template std::vector<Rational> poly_lambda<Rational>(const Prepotential&, std::span<const Rational>);
extern template std::vector<Real> poly_lambda<Real>(const Prepotential&, std::span<const Real>);
extern template Rational discriminant<Rational>(const Prepotential&, std::span<const Rational>);
extern template Real discriminant<Real>(const Prepotential&, std::span<const Real>);

/// Discriminant of a polynomial given by increasing-degree coefficients.
template <class T>
T polynomial_discriminant(const std::vector<T>& coeffs);

/// Eigenvalues of U at p, sorted.
std::vector<Complex> canonical_coordinates(const Prepotential& P, std::span<const Real> p);

/// Throws NotSemisimple when two canonical coordinates are closer than 1e-8.
CanonicalFrame canonical_frame(const Prepotential& P, std::span<const Real> p);

/// Max of |pi_i o pi_i - pi_i| and |sum_i pi_i - e|.
Real idempotent_residual(const Prepotential& P, const CanonicalFrame& cf);

/// Max distance between eigenvalues of U and roots of poly_lambda.
Real spectral_consistency(const Prepotential& P, std::span<const Real> p);

struct CollisionFit {
    Real exponent;  // 2 * slope
    Real slope;
    Real rms;       // residual of the log-log line fit
    Real gap_start;
    Real gap_end;
    std::size_t first = 0;
    std::size_t second = 0;
    std::size_t samples = 0;
};

using SpectrumPath = std::function<std::vector<Complex>(const Real& s)>;

/// Tracks the spectrum from s_max down to s_min (log-spaced, nearest-neighbour
/// continuation), picks the pair with the smallest final gap and fits
/// log gap against log s. Throws NoCollision when the gap does not shrink.
CollisionFit fit_collision(const SpectrumPath& spectrum, std::size_t samples = 21, const Real& s_min = Real("1e-4"),
                           const Real& s_max = Real("1e-2"));

using FlatPath = std::function<std::vector<Real>(const Real& s)>;

CollisionFit collision_exponent(const Prepotential& P, const FlatPath& path, std::size_t samples = 21);

/// Coefficient of d log tau_I on the vector v at p (two-dimensional models).
/// The Egoroff potential is eta_{kr} t^r; its canonical derivatives come from
/// central differences. Throws Not2D, NotSemisimple.
Real tau2d_form(const Prepotential& P, std::span<const Real> p, std::span<const Real> v);

/// d log J (v) at p by central differences.
Real dlogJ_form(const Prepotential& P, std::span<const Real> p, std::span<const Real> v);

/// dG (v) at p.
Real dG_form(const GJet& G, std::span<const Real> p, std::span<const Real> v);

/// omega_p(v)
using OneForm = std::function<Real(const std::vector<Real>& p, const std::vector<Real>& v)>;

struct ResidueEstimate {
    Real value;
    Real error;
    std::vector<Real> eps;
    std::vector<Real> raw;  // eps-level estimates before extrapolation
};

/// Residue of omega along kappa = 0 from the ray base + eps * direction:
/// kappa * omega(direction) / dkappa(direction) at eps, eps/2, eps/4,
/// Richardson-extrapolated; eps starts at eps0 and is halved until the
/// extrapolation settles. Throws NotLogarithmic when the estimates blow up.
ResidueEstimate residue_probe(const OneForm& form, const Expression& kappa, const std::vector<Real>& base,
                              const std::vector<Real>& direction, const Real& eps0 = Real(1) / 8);

/// Residue along the logarithmic caustic y = exp(t_coord) = 0, probed at y = eps.
ResidueEstimate residue_probe_log(const OneForm& form, std::size_t coord, const std::vector<Real>& base,
                                  const Real& eps0 = Real(1) / 8);

}  // namespace frobg
