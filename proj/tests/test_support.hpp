// Shared helpers for the unit tests: independent reference computations that
// avoid the library code paths they are used to check.
#pragma once

#include <delaydim/delaydim.hpp>

#include <cmath>
#include <complex>
#include <vector>

namespace testing_support {

using delaydim::CMatrix;
using delaydim::Complex;
using delaydim::CVector;
using delaydim::RMatrix;

/// Sum_k K rho K^dagger with explicit loops.
inline CMatrix kraus_sum(const std::vector<CMatrix>& kraus, const CMatrix& rho) {
    const Eigen::Index d = rho.rows();
    CMatrix out = CMatrix::Zero(d, d);
    for (const auto& k : kraus)
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) {
                Complex acc = 0.0;
                for (Eigen::Index p = 0; p < d; ++p)
                    for (Eigen::Index q = 0; q < d; ++q) acc += k(i, p) * rho(p, q) * std::conj(k(j, q));
                out(i, j) += acc;
            }
    return out;
}

/// Row-reduction rank with partial pivoting and an absolute pivot threshold.
inline std::size_t gauss_rank(RMatrix a, double pivot_tol) {
    std::size_t rank = 0;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
        Eigen::Index best = row;
        for (Eigen::Index i = row; i < a.rows(); ++i)
            if (std::abs(a(i, col)) > std::abs(a(best, col))) best = i;
        if (std::abs(a(best, col)) <= pivot_tol) continue;
        a.row(row).swap(a.row(best));
        for (Eigen::Index i = row + 1; i < a.rows(); ++i) a.row(i) -= (a(i, col) / a(row, col)) * a.row(row);
        ++row;
        ++rank;
    }
    return rank;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

inline CMatrix pauli_x() {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = m(1, 0) = 1.0;
    return m;
}

inline CMatrix plus_state() { return CMatrix::Constant(2, 2, 0.5); }

inline delaydim::RealSequence damped_cosine(double gamma, double omega, std::size_t len) {
    std::vector<double> v(len);
    for (std::size_t t = 0; t < len; ++t)
        v[t] = std::exp(-gamma * static_cast<double>(t)) * std::cos(omega * static_cast<double>(t));
    return delaydim::RealSequence(std::move(v));
}

}  // namespace testing_support
