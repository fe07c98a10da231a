// quantum.hpp - finite-dimensional states, observables and Kraus channels;
// ground-truth sequences <A(t)> = tr[A T^t(rho)], conserved quantities and
// ergodicity predicates.
#pragma once

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "rng.hpp"
#include "sequences.hpp"

namespace delaydim {

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kTracePreservingTol = 1e-10;

namespace detail {

inline void require_square(const CMatrix& m, std::string_view what) {
    if (m.rows() == 0 || m.rows() != m.cols())
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must be a non-empty square matrix");
}

inline void require_hermitian(const CMatrix& m, std::string_view what) {
    const double res = hermiticity_residual(m);
    if (!(res <= kHermitianTol)) invariant_violation(what, "Hermitian", res, kHermitianTol);
}

}  // namespace detail

class DensityMatrix {
public:
    explicit DensityMatrix(CMatrix mat) : mat_(std::move(mat)) {
        detail::require_square(mat_, "density matrix");
        detail::require_hermitian(mat_, "density matrix");
        const double tr_res = std::abs(mat_.trace() - Complex(1.0, 0.0));
        if (!(tr_res <= kTraceTol)) invariant_violation("density matrix", "unit trace", tr_res, kTraceTol);
        const double min_eig = Eigen::SelfAdjointEigenSolver<CMatrix>(mat_, Eigen::EigenvaluesOnly)
                                   .eigenvalues()
                                   .minCoeff();
        if (!(min_eig >= -kPsdTol))
            invariant_violation("density matrix", "positive semidefinite", -min_eig, kPsdTol);
    }

    Eigen::Index dim() const noexcept { return mat_.rows(); }
    const CMatrix& matrix() const noexcept { return mat_; }

private:
    CMatrix mat_;
};

class Observable {
public:
    explicit Observable(CMatrix mat) : mat_(std::move(mat)) {
        detail::require_square(mat_, "observable");
        detail::require_hermitian(mat_, "observable");
    }

    Eigen::Index dim() const noexcept { return mat_.rows(); }
    const CMatrix& matrix() const noexcept { return mat_; }

private:
    CMatrix mat_;
};

/// Completely positive trace-preserving map T(rho) = sum_k K_k rho K_k^dagger.
class KrausChannel {
public:
    explicit KrausChannel(std::vector<CMatrix> kraus) : kraus_(std::move(kraus)) {
        if (kraus_.empty()) throw Error(ErrorCode::InvalidParameter, "channel needs at least one Kraus operator");
        detail::require_square(kraus_.front(), "Kraus operator");
        const Eigen::Index d = kraus_.front().rows();
        CMatrix sum = CMatrix::Zero(d, d);
        for (const auto& k : kraus_) {
            if (k.rows() != d || k.cols() != d)
                throw Error(ErrorCode::DimensionMismatch, "Kraus operators must all be d x d");
            sum.noalias() += k.adjoint() * k;
        }
        const double res = (sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
        if (!(res <= kTracePreservingTol))
            invariant_violation("channel", "trace preservation (sum K^dagger K = 1)", res,
                                kTracePreservingTol);
    }

    static KrausChannel identity(Eigen::Index d) { return KrausChannel({CMatrix::Identity(d, d)}); }

    Eigen::Index dim() const noexcept { return kraus_.front().rows(); }
    const std::vector<CMatrix>& kraus() const noexcept { return kraus_; }

    /// Schroedinger picture.
    CMatrix apply(const CMatrix& rho) const {
        CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
        for (const auto& k : kraus_) out.noalias() += k * rho * k.adjoint();
        return out;
    }

    /// Heisenberg picture T^*(A) = sum_k K_k^dagger A K_k, so that tr[A T(rho)] = tr[T^*(A) rho].
    CMatrix apply_adjoint(const CMatrix& a) const {
        CMatrix out = CMatrix::Zero(a.rows(), a.cols());
        for (const auto& k : kraus_) out.noalias() += k.adjoint() * a * k;
        return out;
    }

private:
    std::vector<CMatrix> kraus_;
};

inline void require_same_dim(Eigen::Index a, Eigen::Index b, std::string_view what) {
    if (a != b)
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": dimensions " +
                                                      std::to_string(a) + " and " + std::to_string(b));
}

/// tr[A rho] for Hermitian A and rho; the imaginary part is roundoff and dropped.
inline double expectation(const CMatrix& a, const CMatrix& rho) {
    return (a.transpose().cwiseProduct(rho)).sum().real();
}

/// (<A(0)>, ..., <A(steps-1)>), applying the channel once per step.
inline RealSequence evolve_expectations(const KrausChannel& channel, const DensityMatrix& rho,
                                        const Observable& a, std::size_t steps) {
    require_same_dim(channel.dim(), rho.dim(), "channel/state");
    require_same_dim(channel.dim(), a.dim(), "channel/observable");
    if (steps == 0) throw Error(ErrorCode::InvalidParameter, "steps must be positive");
    std::vector<double> out;
    out.reserve(steps);
    CMatrix state = rho.matrix();
    for (std::size_t t = 0; t < steps; ++t) {
        out.push_back(expectation(a.matrix(), state));
        if (t + 1 < steps) state = channel.apply(state);
    }
    return RealSequence(std::move(out));
}

/// sum_k K_k (x) conj(K_k); acts on the row-major vectorization (see `vectorize`).
inline CMatrix transfer_matrix(const KrausChannel& channel) {
    const Eigen::Index d = channel.dim();
    CMatrix t = CMatrix::Zero(d * d, d * d);
    for (const auto& k : channel.kraus()) {
        const CMatrix kc = k.conjugate();
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) t.block(i * d, j * d, d, d) += k(i, j) * kc;
    }
    return t;
}

struct ConservedSpace {
    Eigen::Index d = 0;
    std::vector<CMatrix> basis;  ///< Hermitian, orthonormal under the Hilbert-Schmidt product
    std::size_t dim_c() const noexcept { return basis.size(); }
};

/// Hermitian H with tr[H T^t(rho)] independent of t, computed as the
/// orthogonal complement of span{T^t(rho) - rho : 1 <= t <= d^2} in the real
/// space of Hermitian matrices. Rank cut at tol * max(s_1, ||rho||_HS).
inline ConservedSpace conserved_space(const KrausChannel& channel, const DensityMatrix& rho,
                                      double tol = kDefaultRankTol) {
    require_same_dim(channel.dim(), rho.dim(), "channel/state");
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidParameter, "tolerance must be positive");
    const Eigen::Index d = channel.dim();
    const Eigen::Index dd = d * d;
    RMatrix diffs(dd, dd);
    CMatrix state = rho.matrix();
    for (Eigen::Index t = 0; t < dd; ++t) {
        state = channel.apply(state);
        diffs.row(t) = hermitian_coordinates(state - rho.matrix()).transpose();
    }
    Eigen::JacobiSVD<RMatrix> svd(diffs, Eigen::ComputeFullV);
    const std::size_t r = rank_from_singular_values(svd.singularValues(), tol, rho.matrix().norm());
    ConservedSpace out{d, {}};
    for (Eigen::Index c = static_cast<Eigen::Index>(r); c < dd; ++c)
        out.basis.push_back(hermitian_from_coordinates(svd.matrixV().col(c), d));
    return out;
}

struct ErgodicityReport {
    bool ergodic_wrt_observable = false;
    bool ergodic_wrt_state = false;
};

inline ErgodicityReport ergodicity_report(const KrausChannel& channel, const DensityMatrix& rho,
                                          const Observable& a, double tol = kDefaultRankTol) {
    require_same_dim(channel.dim(), rho.dim(), "channel/state");
    require_same_dim(channel.dim(), a.dim(), "channel/observable");
    const Eigen::Index d = channel.dim();
    const Eigen::Index dd = d * d;
    CMatrix forward(dd, dd), backward(dd, dd);
    CMatrix s = rho.matrix(), h = a.matrix();
    for (Eigen::Index t = 0; t < dd; ++t) {
        forward.col(t) = vectorize(s);
        backward.col(t) = vectorize(h);
        s = channel.apply(s);
        h = channel.apply_adjoint(h);
    }
    const auto full = static_cast<std::size_t>(dd);
    return {numerical_rank(backward, tol) == full, numerical_rank(forward, tol) == full};
}

/// Qubit channel multiplying the off-diagonal element rho_01 by exp(-gamma - i omega):
/// phase damping followed by the rotation diag(1, e^{i omega}). With rho = |+><+|
/// and A = sigma_x it produces the damped oscillation exp(-gamma t) cos(omega t).
inline KrausChannel dephasing_rotation_channel(double gamma, double omega) {
    if (!(gamma >= 0.0)) throw Error(ErrorCode::InvalidParameter, "gamma must be >= 0");
    const double q = std::exp(-gamma);
    CMatrix u = CMatrix::Zero(2, 2);
    u(0, 0) = 1.0;
    u(1, 1) = std::polar(1.0, omega);
    CMatrix z = CMatrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return KrausChannel({std::sqrt((1.0 + q) / 2.0) * u, std::sqrt((1.0 - q) / 2.0) * (u * z)});
}

// ---------------------------------------------------------------------------
// Random instances. Every draw is a pure function of its arguments.

namespace detail {

// Q factor of a QR decomposition with the diagonal of R made positive, which
// makes Q Haar distributed for complex Gaussian input.
inline CMatrix haar_q(const CMatrix& g) {
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(g.rows(), g.cols());
    const CMatrix& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
        const Complex diag = r(j, j);
        const double mag = std::abs(diag);
        if (mag > 0.0) q.col(j) *= diag / mag;
    }
    return q;
}

inline void require_positive_dim(Eigen::Index d) {
    if (d < 1) throw Error(ErrorCode::InvalidParameter, "dimension must be at least 1");
}

}  // namespace detail

inline CMatrix random_unitary(Eigen::Index d, std::uint64_t seed) {
    detail::require_positive_dim(d);
    Engine engine(derive_seed(seed, {0x756e6974u}));
    return detail::haar_q(complex_gaussian(d, d, engine));
}

inline KrausChannel random_unitary_channel(Eigen::Index d, std::uint64_t seed) {
    return KrausChannel({random_unitary(d, seed)});
}

/// Kraus blocks of a Haar random isometry C^d -> C^(d * kraus_count).
inline KrausChannel random_channel(Eigen::Index d, Eigen::Index kraus_count, std::uint64_t seed) {
    detail::require_positive_dim(d);
    if (kraus_count < 1) throw Error(ErrorCode::InvalidParameter, "kraus_count must be at least 1");
    Engine engine(derive_seed(seed, {0x6368616eu}));
    const CMatrix v = detail::haar_q(complex_gaussian(d * kraus_count, d, engine));
    std::vector<CMatrix> kraus;
    for (Eigen::Index k = 0; k < kraus_count; ++k) kraus.emplace_back(v.block(k * d, 0, d, d));
    return KrausChannel(std::move(kraus));
}

inline DensityMatrix random_state(Eigen::Index d, std::uint64_t seed) {
    detail::require_positive_dim(d);
    Engine engine(derive_seed(seed, {0x73746174u}));
    const CMatrix g = complex_gaussian(d, d, engine);
    CMatrix rho = g * g.adjoint();
    rho = (rho + rho.adjoint()).eval() * 0.5;
    rho /= rho.trace().real();
    return DensityMatrix(std::move(rho));
}

inline Observable random_observable(Eigen::Index d, std::uint64_t seed) {
    detail::require_positive_dim(d);
    Engine engine(derive_seed(seed, {0x6f627376u}));
    const CMatrix g = complex_gaussian(d, d, engine);
    return Observable((g + g.adjoint()) * 0.5);
}

enum class InstanceKind { unitary, channel, state, observable };

using RandomInstance = std::variant<KrausChannel, DensityMatrix, Observable>;

/// Enum-dispatched front end; `unitary` yields a single-Kraus channel.
inline RandomInstance random_instance(InstanceKind kind, Eigen::Index d, Eigen::Index kraus_count,
                                      std::uint64_t seed) {
    if (kraus_count < 1) throw Error(ErrorCode::InvalidParameter, "kraus_count must be at least 1");
    switch (kind) {
        case InstanceKind::unitary: return random_unitary_channel(d, seed);
        case InstanceKind::channel: return random_channel(d, kraus_count, seed);
        case InstanceKind::state: return random_state(d, seed);
        case InstanceKind::observable: return random_observable(d, seed);
    }
    throw Error(ErrorCode::InvalidParameter, "unknown instance kind");
}

}  // namespace delaydim
