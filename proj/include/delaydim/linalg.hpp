// linalg.hpp - matrix aliases, rank decisions and the Hermitian/vectorization
// coordinate maps shared by the other modules.
#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>

namespace delaydim {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Default relative threshold for all rank decisions (fraction of the largest singular value).
inline constexpr double kDefaultRankTol = 1e-9;

template <typename Derived>
RVector singular_values(const Eigen::MatrixBase<Derived>& m) {
    if (m.size() == 0) return RVector();
    Eigen::JacobiSVD<typename Derived::PlainObject> svd(m);
    return svd.singularValues();
}

/// Number of singular values strictly above `rel_tol * max(s_1, floor)`.
///
/// `floor` lets callers pin a natural scale so that an all-roundoff matrix
/// (s_1 ~ 1e-17) is not declared full rank.
inline std::size_t rank_from_singular_values(const RVector& s, double rel_tol, double floor = 0.0) {
    if (s.size() == 0) return 0;
    const double scale = std::max(s(0), floor);
    if (scale <= 0.0) return 0;
    const double cut = rel_tol * scale;
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++r;
    return r;
}

template <typename Derived>
std::size_t numerical_rank(const Eigen::MatrixBase<Derived>& m, double rel_tol = kDefaultRankTol,
                           double floor = 0.0) {
    return rank_from_singular_values(singular_values(m), rel_tol, floor);
}

template <typename Derived>
double operator_norm(const Eigen::MatrixBase<Derived>& m) {
    if (m.size() == 0) return 0.0;
    return singular_values(m)(0);
}

inline double spectral_radius(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    return Eigen::ComplexEigenSolver<CMatrix>(m, false).eigenvalues().cwiseAbs().maxCoeff();
}

inline double hermiticity_residual(const CMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Row-major vectorization: the matrix unit |i><j| maps to basis vector i*d + j.
// With this ordering the superoperator rho -> K rho K^dagger is K (x) conj(K).
inline CVector vectorize(const CMatrix& m) {
    const Eigen::Index d = m.rows();
    CVector v(d * m.cols());
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
    return v;
}

inline CMatrix unvectorize(const CVector& v, Eigen::Index d) {
    CMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = v(i * d + j);
    return m;
}

// Real coordinates of a Hermitian matrix in an orthonormal basis (under the
// Hilbert-Schmidt product) of the real d^2-dimensional space of Hermitian
// matrices: diagonal units first, then (E_ij + E_ji)/sqrt2 and i(E_ij - E_ji)/sqrt2
// for i < j. tr[H X] equals the dot product of the coordinate vectors.
inline RVector hermitian_coordinates(const CMatrix& h) {
    const Eigen::Index d = h.rows();
    RVector x(d * d);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < d; ++i) x(k++) = h(i, i).real();
    const double s2 = std::sqrt(2.0);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = i + 1; j < d; ++j) {
            x(k++) = s2 * h(i, j).real();
            x(k++) = s2 * h(i, j).imag();
        }
    return x;
}

inline CMatrix hermitian_from_coordinates(const RVector& x, Eigen::Index d) {
    CMatrix h = CMatrix::Zero(d, d);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < d; ++i) h(i, i) = x(k++);
    const double inv = 1.0 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = i + 1; j < d; ++j) {
            const Complex z(x(k) * inv, x(k + 1) * inv);
            k += 2;
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    return h;
}

}  // namespace delaydim
