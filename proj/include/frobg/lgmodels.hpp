#pragma once

// Trigonometric-polynomial superpotentials F_a(x) = x^k + a_1 x^{k-1} + ... + a_{k+m} x^{-m}
// on the punctured plane, their critical values, and collision exponents along
// parameter paths.

#include "frobg/caustics.hpp"

#include <cstdint>
#include <vector>

namespace frobg {

class Superpotential {
public:
    /// a[j-1] = a_j for j = 1..k+m. Throws InvalidModel on bad sizes and
    /// DegenerateLeadingCoefficient when a_{k+m} = 0.
    Superpotential(int k, int m, std::vector<Complex> a);

    int k() const { return k_; }
    int m() const { return m_; }
    const std::vector<Complex>& coefficients() const { return a_; }

    Complex value(const Complex& x) const;
    Complex derivative(const Complex& x) const;

    /// x^{m+1} F'(x), increasing degree, degree k + m.
    std::vector<Complex> critical_polynomial() const;

private:
    int k_;
    int m_;
    std::vector<Complex> a_;
};

/// Roots of x^{m+1} F'(x) with multiplicity.
std::vector<Complex> critical_points(const Superpotential& S);

/// F at the critical points, sorted.
std::vector<Complex> critical_values(const Superpotential& S);

/// prod_{i<j} (u_i - u_j)^2
Complex lg_caustic_indicator(const Superpotential& S);

using SuperpotentialPath = std::function<Superpotential(const Real& s)>;

CollisionFit lg_collision_exponent(const SuperpotentialPath& path, std::size_t samples = 21);

/// a(s) = a* + s delta where F_{a*} has a double critical point and delta is random.
/// Throws NoCollision for (k, m) = (1, 1), whose only caustic is the excluded
/// boundary a_2 = 0.
SuperpotentialPath transversal_path(int k, int m, std::uint64_t seed);

/// Random a with a_{k+m} = s, approaching the excluded boundary.
SuperpotentialPath boundary_path(int k, int m, std::uint64_t seed);

}  // namespace frobg
