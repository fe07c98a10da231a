// realization.hpp - rank of the delay embedding under noise, dimension bounds,
// and minimal linear realizations a(t) = <l| m^t |r> with m a contraction.
#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "sequences.hpp"

namespace delaydim {

struct RankReport {
    std::size_t n = 0;
    std::vector<double> singular_values;  ///< non-increasing, length n
    double epsilon = 0.0;
    std::size_t dim_v_lower = 0;           ///< min{k : s_{k+1} <= epsilon}, s_{n+1} := 0
    std::size_t dim_v_exact_if_clean = 0;  ///< count of s_k > rel_tol * s_1

    /// The rank estimate to use downstream: the noise-aware lower bound when a
    /// noise level was given, the relative-threshold rank for clean data.
    std::size_t dim_v() const noexcept { return epsilon > 0.0 ? dim_v_lower : dim_v_exact_if_clean; }
};

inline RankReport effective_rank(const HankelPair& hankel, double epsilon,
                                 double rel_tol = kDefaultRankTol) {
    if (!(epsilon >= 0.0)) throw Error(ErrorCode::InvalidParameter, "epsilon must be >= 0");
    const RVector s = singular_values(hankel.v);
    RankReport rep;
    rep.n = hankel.n;
    rep.epsilon = epsilon;
    rep.singular_values.assign(s.data(), s.data() + s.size());
    std::size_t k = 0;
    while (k < rep.n && rep.singular_values[k] > epsilon) ++k;
    rep.dim_v_lower = k;
    rep.dim_v_exact_if_clean = rank_from_singular_values(s, rel_tol);
    return rep;
}

/// Noise threshold for an n x n Hankel matrix built from samples carrying
/// i.i.d. noise of deviation sigma.
///
/// The Hankel noise matrix embeds in a circulant of size L = 2n - 1 whose norm
/// is the largest modulus of L Gaussian Fourier coefficients, typically
/// sigma * sqrt(L ln L). This returns sigma * sqrt(2 L max(1, ln L)). It is a
/// heuristic high-probability bound, not a certificate.
inline double noise_epsilon(double sigma, std::size_t n) {
    if (!(sigma >= 0.0)) throw Error(ErrorCode::InvalidParameter, "sigma must be >= 0");
    const double len = 2.0 * static_cast<double>(n) - 1.0;
    return sigma * std::sqrt(2.0 * len * std::max(1.0, std::log(len)));
}

struct DimensionBounds {
    std::size_t dim_v = 0;
    std::size_t d_min = 1;                        ///< ceil(sqrt(dim_v)), at least 1
    std::optional<std::size_t> dim_c_max_given_d; ///< d^2 + 1 - dim_v
    std::optional<std::size_t> d_e_min_given_ds;  ///< max(0, d_min - d_s)
};

inline std::size_t ceil_sqrt(std::size_t x) {
    auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(x)));
    while (r * r < x) ++r;
    while (r > 0 && (r - 1) * (r - 1) >= x) --r;
    return r;
}

/// Consequences of dim C + dim V <= d^2 + 1 with dim C >= 1.
inline DimensionBounds dimension_bounds(const RankReport& report,
                                        std::optional<std::size_t> known_d = std::nullopt,
                                        std::optional<std::size_t> known_ds = std::nullopt) {
    DimensionBounds b;
    b.dim_v = report.dim_v();
    b.d_min = std::max<std::size_t>(1, ceil_sqrt(b.dim_v));
    if (known_d) {
        const std::size_t d = *known_d;
        if (d * d < b.dim_v)
            throw Error(ErrorCode::InconsistentDimension,
                        "dimension " + std::to_string(d) + " cannot produce dim V = " +
                            std::to_string(b.dim_v) + " (needs d^2 >= dim V)");
        b.dim_c_max_given_d = d * d + 1 - b.dim_v;
    }
    if (known_ds) b.d_e_min_given_ds = b.d_min > *known_ds ? b.d_min - *known_ds : 0;
    return b;
}

/// a(t) = l^dagger m^t rvec.
struct LinearRealization {
    std::size_t r = 0;
    CMatrix m;
    CVector l;
    CVector rvec;
    double contraction_norm = 0.0;

    Complex value(std::size_t t) const {
        CVector x = rvec;
        for (std::size_t k = 0; k < t; ++k) x = m * x;
        return l.dot(x);
    }

    std::vector<Complex> sample(std::size_t count) const {
        std::vector<Complex> out;
        out.reserve(count);
        CVector x = rvec;
        for (std::size_t t = 0; t < count; ++t) {
            out.push_back(l.dot(x));
            x = m * x;
        }
        return out;
    }

    std::vector<double> real_sample(std::size_t count) const {
        std::vector<double> out;
        out.reserve(count);
        for (const Complex& z : sample(count)) out.push_back(z.real());
        return out;
    }
};

/// Builds a realization from explicit parts, validating shapes and filling r and the norm.
inline LinearRealization make_realization(CMatrix m, CVector l, CVector rvec) {
    if (m.rows() < 1 || m.rows() != m.cols() || l.size() != m.rows() || rvec.size() != m.rows())
        throw Error(ErrorCode::DimensionMismatch, "realization needs square m and vectors of matching size");
    LinearRealization out{static_cast<std::size_t>(m.rows()), std::move(m), std::move(l), std::move(rvec), 0.0};
    out.contraction_norm = operator_norm(out.m);
    return out;
}

/// Minimal realization from the Hankel pair (V, V') of the first 2n samples.
///
/// With V = U S W^T truncated at the numerical rank r, V_L = U_r S_r^{1/2},
/// V_R = S_r^{1/2} W_r^T and m = V_L^+ V' V_R^+. rvec is the first column of
/// V_R and l the first row of V_L. Requires r < n so that the window has seen
/// every independent delayed vector.
inline LinearRealization linear_realization(const RealSequence& seq, std::size_t n,
                                            double rank_tol = kDefaultRankTol) {
    const HankelPair h = build_hankel(seq, n);
    Eigen::JacobiSVD<RMatrix> svd(h.v, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector& s = svd.singularValues();
    const std::size_t r = rank_from_singular_values(s, rank_tol);
    if (r == 0) throw Error(ErrorCode::InvalidParameter, "sequence is identically zero");
    if (r >= n)
        throw Error(ErrorCode::RankDeficiencyNotReached,
                    "Hankel matrix of size " + std::to_string(n) +
                        " has full numerical rank; increase n or supply more samples");
    const auto rr = static_cast<Eigen::Index>(r);
    const RVector sqrt_s = s.head(rr).cwiseSqrt();
    const RVector inv_sqrt_s = sqrt_s.cwiseInverse();
    const RMatrix u = svd.matrixU().leftCols(rr);
    const RMatrix w = svd.matrixV().leftCols(rr);
    const RMatrix m = inv_sqrt_s.asDiagonal() * (u.transpose() * h.v_shift * w) * inv_sqrt_s.asDiagonal();
    const RVector rvec = sqrt_s.asDiagonal() * w.row(0).transpose();  // V_R e_1
    const RVector l = (u.row(0).transpose().array() * sqrt_s.array()).matrix();  // (e_1^T V_L)^T
    return make_realization(m.cast<Complex>(), l.cast<Complex>(), rvec.cast<Complex>());
}

namespace detail {

// Swaps diagonal entries k and k+1 of the upper-triangular t, updating q so
// that q t q^dagger is unchanged.
inline void swap_schur_entries(CMatrix& t, CMatrix& q, Eigen::Index k) {
    const Complex a = t(k, k), c = t(k + 1, k + 1), b = t(k, k + 1);
    const Complex x0 = b, x1 = c - a;
    const double nrm = std::hypot(std::abs(x0), std::abs(x1));
    if (nrm == 0.0) return;
    Eigen::Matrix2cd g;
    g << x0 / nrm, -std::conj(x1) / nrm, x1 / nrm, std::conj(x0) / nrm;
    t.middleRows(k, 2) = (g.adjoint() * t.middleRows(k, 2)).eval();
    t.middleCols(k, 2) = (t.middleCols(k, 2) * g).eval();
    q.middleCols(k, 2) = (q.middleCols(k, 2) * g).eval();
    t(k + 1, k) = 0.0;
}

// Solves a x - x b = c for x (a, b square with disjoint spectra).
inline CMatrix solve_sylvester(const CMatrix& a, const CMatrix& b, const CMatrix& c) {
    const Eigen::Index p = a.rows(), q = b.rows();
    CMatrix op = CMatrix::Zero(p * q, p * q);
    for (Eigen::Index j = 0; j < q; ++j) {
        op.block(j * p, j * p, p, p) += a;
        for (Eigen::Index i = 0; i < q; ++i) op.block(i * p, j * p, p, p) -= b(j, i) * CMatrix::Identity(p, p);
    }
    const CVector rhs = Eigen::Map<const CVector>(c.data(), p * q);
    const CVector sol = op.partialPivLu().solve(rhs);
    return Eigen::Map<const CMatrix>(sol.data(), p, q);
}

}  // namespace detail

inline constexpr double kContractionTol = 1e-10;

/// Similarity transform making m a contraction: (S m S^-1, S^-dagger l, S r).
///
/// Complex Schur form, reordered so that eigenvalues with |lambda| >= 1 - margin_tol
/// come first; the two clusters are decoupled by a Sylvester solve. The
/// unit-circle cluster must be diagonalizable (a Jordan block there means an
/// unbounded sequence) and is replaced by its eigenvalues, those slightly outside
/// the circle (estimation error up to margin_tol) moved onto it. The interior block
/// is scaled by diag(delta, delta^2, ...) with delta halved from 1 until its
/// norm is at most 1.
inline LinearRealization enforce_contraction(const LinearRealization& real, double margin_tol = 1e-6) {
    const double radius = spectral_radius(real.m);
    if (radius > 1.0 + margin_tol)
        throw Error(ErrorCode::NotAContraction,
                    "spectral radius " + short_number(radius) + " exceeds 1; the sequence is unbounded");
    if (operator_norm(real.m) <= 1.0 + kContractionTol) {
        LinearRealization same = real;
        same.contraction_norm = operator_norm(real.m);
        return same;
    }

    const Eigen::Index r = real.m.rows();
    Eigen::ComplexSchur<CMatrix> schur(real.m);
    CMatrix t = schur.matrixT().triangularView<Eigen::Upper>();
    CMatrix q = schur.matrixU();
    auto on_circle = [&](Eigen::Index i) { return std::abs(t(i, i)) >= 1.0 - margin_tol; };

    // Bubble the unit-circle eigenvalues to the top-left.
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < r; ++i) {
        if (!on_circle(i)) continue;
        for (Eigen::Index j = i; j > k; --j) detail::swap_schur_entries(t, q, j - 1);
        ++k;
    }
    const Eigen::Index rest = r - k;

    // Decouple: with Y = [[1, X], [0, 1]], Y^-1 t Y is block diagonal when t11 X - X t22 = -t12.
    CMatrix y = CMatrix::Identity(r, r);
    if (k > 0 && rest > 0) {
        const CMatrix x = detail::solve_sylvester(t.topLeftCorner(k, k), t.bottomRightCorner(rest, rest),
                                                  -t.topRightCorner(k, rest));
        y.topRightCorner(k, rest) = x;
    }

    CMatrix block = CMatrix::Identity(r, r);
    CMatrix m_new = CMatrix::Zero(r, r);
    if (k > 0) {
        const CMatrix t11 = t.topLeftCorner(k, k);
        Eigen::ComplexEigenSolver<CMatrix> es(t11);
        const CMatrix& vecs = es.eigenvectors();
        const RVector sv = singular_values(vecs);
        const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
        if (!(cond <= 1e8))
            throw Error(ErrorCode::UnitCircleJordanBlock,
                        "eigenvalues on the unit circle are defective (eigenvector condition " +
                            short_number(cond) + "); the sequence would grow without bound");
        block.topLeftCorner(k, k) = vecs;
        CVector lambda = es.eigenvalues();
        for (Eigen::Index i = 0; i < k; ++i)
            if (std::abs(lambda(i)) > 1.0) lambda(i) /= std::abs(lambda(i));
        m_new.topLeftCorner(k, k) = lambda.asDiagonal();
    }
    if (rest > 0) {
        const CMatrix t22 = t.bottomRightCorner(rest, rest);
        double delta = 1.0;
        while (true) {
            RVector grade(rest);
            for (Eigen::Index i = 0; i < rest; ++i) grade(i) = std::pow(delta, static_cast<double>(i + 1));
            const CMatrix scaled = grade.cwiseInverse().asDiagonal() * t22 * grade.asDiagonal();
            if (operator_norm(scaled) <= 1.0) {
                block.bottomRightCorner(rest, rest) = grade.cast<Complex>().asDiagonal();
                m_new.bottomRightCorner(rest, rest) = scaled;
                break;
            }
            delta *= 0.5;
            if (delta < 1e-8)
                throw Error(ErrorCode::UnitCircleJordanBlock,
                            "no graded scaling makes the interior block contractive");
        }
    }

    // m_new = P^-1 m P with P = q y block.
    const CMatrix p = q * y * block;
    Eigen::PartialPivLU<CMatrix> lu(p);
    CVector r_new = lu.solve(real.rvec);
    CVector l_new = p.adjoint() * real.l;
    const double nl = l_new.norm(), nr = r_new.norm();
    if (nl > 0.0 && nr > 0.0) {
        const double c = std::sqrt(nl / nr);
        l_new /= c;
        r_new *= c;
    }
    return make_realization(std::move(m_new), std::move(l_new), std::move(r_new));
}

}  // namespace delaydim
