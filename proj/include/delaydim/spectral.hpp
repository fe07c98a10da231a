// spectral.hpp - z-transform evaluation, poles, and the roots-of-unity hull
// test giving a lower bound on the number of classical states.
#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "realization.hpp"
#include "sequences.hpp"

namespace delaydim {

struct ZTransformValue {
    Complex value;
    double error_bound = 0.0;  ///< truncation bound plus a floating-point summation allowance
};

/// Series mode: L(z) = (1/z) sum_t a(t) z^-t over the available samples, |z| > 1.
///
/// Truncation bound max|a| |z|^-T / (|z| - 1) assumes the unseen tail stays
/// within the observed range.
inline ZTransformValue ztransform_eval(const RealSequence& seq, Complex z) {
    const double rho = std::abs(z);
    if (!(rho > 1.0 + 1e-6))
        throw Error(ErrorCode::OutsideConvergence,
                    "series converges only for |z| > 1, got |z| = " + short_number(rho));
    Complex sum = 0.0;
    Complex w = 1.0 / z;  // z^-(t+1)
    double abs_sum = 0.0;
    for (std::size_t t = 0; t < seq.size(); ++t) {
        sum += seq[t] * w;
        abs_sum += std::abs(seq[t]) * std::abs(w);
        w /= z;
    }
    const double tail = seq.max_abs() * std::pow(rho, -static_cast<double>(seq.size())) / (rho - 1.0);
    const double roundoff = 4.0 * static_cast<double>(seq.size()) *
                            std::numeric_limits<double>::epsilon() * abs_sum;
    return {sum, tail + roundoff};
}

/// Resolvent mode: <l| (z - m)^-1 |r>, the analytic continuation inside the disc.
inline Complex ztransform_eval(const LinearRealization& real, Complex z) {
    const CVector eig = Eigen::ComplexEigenSolver<CMatrix>(real.m, false).eigenvalues();
    for (Eigen::Index i = 0; i < eig.size(); ++i)
        if (std::abs(z - eig(i)) < 1e-10)
            throw Error(ErrorCode::NearPole, "z is within 1e-10 of the pole " + short_number(eig(i).real()) +
                                                 (eig(i).imag() < 0 ? "" : "+") + short_number(eig(i).imag()) + "i");
    const Eigen::Index r = real.m.rows();
    const CMatrix shifted = z * CMatrix::Identity(r, r) - real.m;
    const CVector x = shifted.partialPivLu().solve(real.rvec);
    return real.l.dot(x);
}

/// Eigenvalues of m, by descending modulus then ascending phase.
inline std::vector<Complex> poles(const LinearRealization& real) {
    const CVector eig = Eigen::ComplexEigenSolver<CMatrix>(real.m, false).eigenvalues();
    std::vector<Complex> out(eig.data(), eig.data() + eig.size());
    // Moduli are compared on a 1e-10 grid so that conjugate pairs sort by phase.
    auto key = [](const Complex& z) { return std::llround(std::abs(z) * 1e10); };
    std::sort(out.begin(), out.end(), [&](const Complex& a, const Complex& b) {
        const auto ka = key(a), kb = key(b);
        if (ka != kb) return ka > kb;
        return std::arg(a) < std::arg(b);
    });
    return out;
}

/// True if every pole has a partner conj(pole) within tol (matched one to one).
inline bool conjugate_closed(const std::vector<Complex>& ps, double tol) {
    std::vector<bool> used(ps.size(), false);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (used[i]) continue;
        if (std::abs(ps[i].imag()) <= tol) {
            used[i] = true;
            continue;
        }
        bool found = false;
        for (std::size_t j = 0; j < ps.size() && !found; ++j) {
            if (j == i || used[j]) continue;
            if (std::abs(ps[j] - std::conj(ps[i])) <= tol) {
                used[i] = used[j] = true;
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}

/// Convex hull of the roots of unity of order 1..n, vertices counterclockwise from 1.
struct UnityHull {
    int order = 1;
    std::vector<Complex> vertices;

    /// Membership in the hull dilated outward by tol; boundary counts as inside.
    bool contains(Complex p, double tol) const {
        if (vertices.size() == 1) return std::abs(p - vertices[0]) <= tol;
        if (vertices.size() == 2) {
            const Complex a = vertices[0], b = vertices[1];
            const Complex ab = b - a;
            double s = ((p - a) * std::conj(ab)).real() / std::norm(ab);
            s = std::clamp(s, 0.0, 1.0);
            return std::abs(p - (a + s * ab)) <= tol;
        }
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            const Complex a = vertices[i];
            const Complex b = vertices[(i + 1) % vertices.size()];
            const Complex e = b - a, w = p - a;
            const double signed_dist = (e.real() * w.imag() - e.imag() * w.real()) / std::abs(e);
            if (signed_dist < -tol) return false;
        }
        return true;
    }
};

namespace detail {

inline double cross(Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

// Andrew's monotone chain; collinear points are dropped. Output is counterclockwise.
inline std::vector<Complex> convex_hull(std::vector<Complex> pts) {
    std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    if (pts.size() < 3) return pts;
    std::vector<Complex> hull(2 * pts.size());
    std::size_t k = 0;
    constexpr double eps = 1e-12;
    for (const Complex& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= eps) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
        while (k >= lo && cross(hull[k - 2], hull[k - 1], pts[i]) <= eps) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace detail

inline UnityHull unity_hull(int order) {
    if (order < 1) throw Error(ErrorCode::InvalidParameter, "hull order must be at least 1");
    // Distinct roots of unity are the reduced fractions k/m with m <= order.
    std::vector<std::pair<int, int>> fractions;
    for (int m = 1; m <= order; ++m)
        for (int k = 0; k < m; ++k)
            if (std::gcd(k, m) == 1) fractions.emplace_back(k, m);
    std::vector<Complex> pts;
    for (auto [k, m] : fractions) {
        // Lower half-plane points are exact conjugates of the upper ones, and
        // the axis points are snapped, so the vertex set is conjugation symmetric.
        const int kk = 2 * k > m ? m - k : k;
        Complex z = std::polar(1.0, 2.0 * std::numbers::pi * kk / m);
        if (kk != k) z = std::conj(z);
        if (2 * k == m) z = Complex(-1.0, 0.0);
        if (4 * k == m) z = Complex(0.0, 1.0);
        if (4 * k == 3 * m) z = Complex(0.0, -1.0);
        if (k == 0) z = Complex(1.0, 0.0);
        pts.push_back(z);
    }
    UnityHull hull{order, {}};
    if (pts.size() <= 2) {
        hull.vertices = pts;
        return hull;
    }
    std::vector<Complex> verts = detail::convex_hull(pts);
    // Rotate so the list starts at 1 and runs counterclockwise by angle.
    auto angle_of = [](Complex z) {
        double a = std::arg(z);
        return a < -1e-15 ? a + 2.0 * std::numbers::pi : std::max(a, 0.0);
    };
    std::sort(verts.begin(), verts.end(), [&](Complex a, Complex b) { return angle_of(a) < angle_of(b); });
    hull.vertices = std::move(verts);
    return hull;
}

inline constexpr int kDefaultOrderMax = 64;

/// Smallest n <= order_max whose hull (dilated by tol) contains every pole;
/// nullopt means "unbounded". A lower bound on the classical state count.
inline std::optional<int> min_classical_dimension(const std::vector<Complex>& ps,
                                                  int order_max = kDefaultOrderMax, double tol = 1e-9) {
    for (const Complex& p : ps)
        if (std::abs(p) > 1.0 + tol)
            throw Error(ErrorCode::PoleOutsideDisc,
                        "pole of modulus " + short_number(std::abs(p)) + " lies outside the unit disc");
    for (int n = 1; n <= order_max; ++n) {
        const UnityHull hull = unity_hull(n);
        if (std::all_of(ps.begin(), ps.end(), [&](Complex p) { return hull.contains(p, tol); })) return n;
    }
    return std::nullopt;
}

struct SpectralReport {
    std::vector<Complex> poles;
    std::optional<int> min_classical_dimension;  ///< nullopt: unbounded up to hull_order_tested_max
    int hull_order_tested_max = kDefaultOrderMax;
    double tolerance = 1e-9;
};

inline SpectralReport spectral_report(const LinearRealization& real, int order_max = kDefaultOrderMax,
                                      double tol = 1e-9) {
    SpectralReport rep;
    rep.poles = poles(real);
    rep.min_classical_dimension = min_classical_dimension(rep.poles, order_max, tol);
    rep.hull_order_tested_max = order_max;
    rep.tolerance = tol;
    return rep;
}

}  // namespace delaydim
