#include "frobg/polyroots.hpp"

#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>

namespace frobg {

namespace {

using EigenMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

EigenMatrix to_eigen(const Matrix<Complex>& m) {
    EigenMatrix e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    return e;
}

}  // namespace

bool spectral_less(const Complex& a, const Complex& b) {
    const Real scale = std::max({Real(1), boost::multiprecision::abs(a.real()), boost::multiprecision::abs(b.real())});
    const Real dr = a.real() - b.real();
    if (boost::multiprecision::abs(dr) > Real("1e-30") * scale) return dr < 0;
    return a.imag() < b.imag();
}

void sort_spectrum(std::vector<Complex>& v) { std::sort(v.begin(), v.end(), spectral_less); }

Complex horner(const std::vector<Complex>& coeffs, const Complex& x) {
    Complex acc(0);
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs_in, int polish_steps) {
    std::vector<Complex> c = coeffs_in;
    while (!c.empty() && c.back() == Complex(0)) c.pop_back();
    if (c.size() < 2) return {};
    const std::size_t n = c.size() - 1;
    Matrix<Complex> comp(n, n);
    for (std::size_t i = 1; i < n; ++i) comp(i, i - 1) = Complex(1);
    for (std::size_t i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
    std::vector<Complex> roots = eigenvalues(comp);

    std::vector<Complex> dc;
    for (std::size_t i = 1; i < c.size(); ++i) dc.push_back(c[i] * Real(static_cast<long>(i)));
    for (auto& x : roots)
        for (int s = 0; s < polish_steps; ++s) {
            const Complex d = horner(dc, x);
            if (abs(d) == 0) break;
            const Complex step = horner(c, x) / d;
            // Near a multiple root Newton stalls; only accept contracting steps.
            const Complex next = x - step;
            if (abs(horner(c, next)) >= abs(horner(c, x))) break;
            x = next;
        }
    sort_spectrum(roots);
    return roots;
}

std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots, const Real& tol) {
    std::vector<RootCluster> out;
    std::vector<int> count;
    std::vector<Complex> sum;
    for (const auto& r : roots) {
        bool placed = false;
        for (std::size_t i = 0; i < sum.size(); ++i)
            if (abs(sum[i] / Real(count[i]) - r) < tol) {
                sum[i] += r;
                ++count[i];
                placed = true;
                break;
            }
        if (!placed) {
            sum.push_back(r);
            count.push_back(1);
        }
    }
    for (std::size_t i = 0; i < sum.size(); ++i) out.push_back({sum[i] / Real(count[i]), count[i]});
    return out;
}

EigenSystem eigensystem(const Matrix<Complex>& m) {
    Eigen::ComplexEigenSolver<EigenMatrix> solver(to_eigen(m), true);
    if (solver.info() != Eigen::Success) fail(ErrorCode::NotSemisimple, "eigenvalue iteration did not converge");
    const std::size_t n = m.rows();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<Complex> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return spectral_less(vals[a], vals[b]); });
    EigenSystem out;
    out.vectors = Matrix<Complex>(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values.push_back(vals[order[j]]);
        for (std::size_t i = 0; i < n; ++i)
            out.vectors(i, j) = solver.eigenvectors()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(order[j]));
    }
    return out;
}

std::vector<Complex> eigenvalues(const Matrix<Complex>& m) {
    Eigen::ComplexEigenSolver<EigenMatrix> solver(to_eigen(m), false);
    if (solver.info() != Eigen::Success) fail(ErrorCode::NotSemisimple, "eigenvalue iteration did not converge");
    std::vector<Complex> vals;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) vals.push_back(solver.eigenvalues()(i));
    sort_spectrum(vals);
    return vals;
}

}  // namespace frobg
