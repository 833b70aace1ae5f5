#pragma once

// Getzler's genus-one equation, the Euler-power identities for dG, and the
// scaling anomaly, for G-functions of log-linear shape.

#include "frobg/frobenius.hpp"

#include <optional>
#include <string>
#include <vector>

namespace frobg {

struct LogTerm {
    Rational coeff;
    Expression arg;
};

/// G = sum_a linear[a] t_a + sum_i coeff_i log(arg_i)
struct GCandidate {
    std::vector<Rational> linear;
    std::vector<LogTerm> logs;

    Expression to_expression() const;
    std::string to_string() const;
};

struct CausticDatum {
    Expression kappa;
    long N = 3;
};

/// First and second derivatives of a GCandidate, precomputed symbolically.
class GJet {
public:
    GJet(const GCandidate& G, std::size_t n);

    template <class T>
    std::vector<T> gradient(std::span<const T> p) const;
    template <class T>
    Matrix<T> hessian(std::span<const T> p) const;

    /// True when some log argument contains an exponential.
    bool has_exp() const { return has_exp_; }

    /// d_v G written as numerator / prod(kappa_i), for a vector field v with NormalForm components.
    NormalForm directional_numerator(const std::vector<NormalForm>& v) const;
    const NormalForm& denominator() const { return denominator_; }

private:
    std::size_t n_;
    std::vector<Rational> linear_;
    std::vector<Rational> coeffs_;
    std::vector<NormalForm> kappa_;
    std::vector<std::vector<NormalForm>> grad_;                // grad_[i][a]
    std::vector<std::vector<std::vector<NormalForm>>> hess_;  // hess_[i][a][b]
    NormalForm denominator_;
    bool has_exp_ = false;
};

/// Seeded rational points in the box |t_a| <= 2 where the frame and the jet of G are defined.
std::vector<EvaluationPoint> sample_points(const Prepotential& P, const GCandidate& G, std::size_t count,
                                           std::uint64_t seed);

/// The seven-term tensor Delta_{a1 a2 a3 a4}.
template <class T>
Tensor<T> delta_tensor(const FrobeniusFrame<T>& fr, const std::vector<T>& grad, const Matrix<T>& hess);

/// Average of Delta over the 24 permutations of its indices.
template <class T>
Tensor<T> symmetrize(const Tensor<T>& delta);

enum class GetzlerMode { Symmetrized, Contracted };

/// Max over points of the symmetrized Delta (or of sum z z z z Delta over random z).
/// Exact when every point is rational and no exponential is involved.
Scalar getzler_residual(const Prepotential& P, const GCandidate& G, const std::vector<EvaluationPoint>& points,
                        GetzlerMode mode = GetzlerMode::Symmetrized, std::uint64_t z_seed = 0,
                        std::size_t z_samples = 50);

/// d G / d t_identity vanishes identically.
bool check_bo7(const GCandidate& G, const Prepotential& P);

struct IdentityCheck {
    Scalar lhs;
    Scalar rhs;
    bool match = false;
};

/// E(G) at p against n d / 48 - tr(mu^2) / 4.
IdentityCheck check_bo8(const Prepotential& P, const GCandidate& G, const EvaluationPoint& p, const Real& tol);

/// E(G) as an exact constant, when it is one.
std::optional<Rational> euler_derivative_constant(const Prepotential& P, const GCandidate& G);

/// d G along U^{k-1} E against the two-term formula with the eta-pairing.
IdentityCheck check_bo9(const Prepotential& P, const GCandidate& G, int k, const EvaluationPoint& p,
                        const Real& tol);

Rational gamma_theorem1(const Prepotential& P);
Rational gamma_theorem1(std::size_t n, const Rational& d, const std::vector<Rational>& q);

/// -(1/24) sum_i (N_i - 2)(N_i - 3)/N_i log kappa_i
GCandidate build_g_coxeter(const std::vector<CausticDatum>& data);

/// -(N_log/24) t_n + the Coxeter-style log sum
GCandidate build_g_eaw(const std::vector<CausticDatum>& data, long n_log, std::size_t n);

/// -(1/24) sum_i (N_i - 2)(N_i - 3)/N_i w_i - (N_log/24) r_n, where E(kappa_i) = w_i kappa_i.
/// Throws NotQuasihomogeneous when some kappa is not an E-eigenfunction.
Rational gamma_from_caustics(const std::vector<CausticDatum>& data, long n_log, const EulerField& E);

struct CausticWeight {
    long N;
    Rational weight;
};

Rational gamma_from_caustics(const std::vector<CausticWeight>& data, long n_log, const Rational& r_n);

/// w with E(kappa) = w kappa. Throws NotQuasihomogeneous.
Rational euler_weight(const Expression& kappa, const EulerField& E);

}  // namespace frobg
