#pragma once

// Dense eigenvalue and polynomial-root routines over complex multiprecision
// numbers, backed by Eigen.

#include "frobg/matrix.hpp"

#include <vector>

namespace frobg {

/// Orders by real part, then imaginary part; real parts closer than 1e-30
/// (relative) count as equal so conjugate pairs sort stably.
bool spectral_less(const Complex& a, const Complex& b);
void sort_spectrum(std::vector<Complex>& v);

/// Roots of sum_i coeffs[i] x^i with multiplicity, from the companion matrix,
/// refined by Newton steps and sorted with spectral_less.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs, int polish_steps = 3);

struct RootCluster {
    Complex value;
    int multiplicity = 1;
};

/// Groups roots closer than tol into clusters (mean value, count).
std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots, const Real& tol);

struct EigenSystem {
    std::vector<Complex> values;
    Matrix<Complex> vectors;  // column i belongs to values[i]
};

/// Eigenvalues and right eigenvectors, sorted with spectral_less.
EigenSystem eigensystem(const Matrix<Complex>& m);
std::vector<Complex> eigenvalues(const Matrix<Complex>& m);

Complex horner(const std::vector<Complex>& coeffs, const Complex& x);

}  // namespace frobg
