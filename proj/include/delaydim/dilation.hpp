// dilation.hpp - explicit quantum channel, state and observable of dimension
// r + 2 reproducing a real sequence given by a contractive realization.
#pragma once

#include <Eigen/Eigenvalues>

#include <span>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "quantum.hpp"
#include "realization.hpp"

namespace delaydim {

struct QuantumRealization {
    Eigen::Index dim = 0;
    KrausChannel channel;
    DensityMatrix rho;
    Observable a;
};

inline constexpr double kCompletionClip = 1e-12;

/// Block layout (outer index 0 first):
///   e0 | inner e0' | C^r
/// C = 1 (+) m acts on the inner part, K = 0 (+) C, psi = (1, rvec),
/// B = (e0' (0, l)^dagger + h.c.)/2, A = (0 (+) B) |psi|^2, rho = (0 (+) psi psi^dagger)/|psi|^2.
/// The lost weight tr[(1 - K^dagger K) rho] is returned to e0, which is absorbing
/// and invisible to A.
inline QuantumRealization quantum_realization(const LinearRealization& real) {
    const Eigen::Index r = real.m.rows();
    if (r < 1 || real.l.size() != r || real.rvec.size() != r)
        throw Error(ErrorCode::DimensionMismatch, "malformed realization");
    CMatrix m = real.m;
    const double nrm = operator_norm(m);
    if (nrm > 1.0 + kContractionTol)
        throw Error(ErrorCode::NotAContraction,
                    "realization matrix has norm " + short_number(nrm) + " > 1; run enforce_contraction first");
    if (nrm > 1.0) m /= nrm;

    {
        const auto probe = real.sample(static_cast<std::size_t>(2 * r + 2));
        double scale = 0.0, worst_imag = 0.0;
        for (const Complex& z : probe) {
            scale = std::max(scale, std::abs(z));
            worst_imag = std::max(worst_imag, std::abs(z.imag()));
        }
        if (worst_imag > 1e-8 * scale)
            throw Error(ErrorCode::NonRealSequence, "realized sequence has imaginary part " +
                                                        short_number(worst_imag));
    }

    const Eigen::Index dim = r + 2;
    const double psi_norm2 = 1.0 + real.rvec.squaredNorm();

    CMatrix k = CMatrix::Zero(dim, dim);
    k(1, 1) = 1.0;
    k.bottomRightCorner(r, r) = m;

    CVector psi = CVector::Zero(dim);  // embedded as 0 (+) psi
    psi(1) = 1.0;
    psi.tail(r) = real.rvec;
    CMatrix rho = psi * psi.adjoint() / psi_norm2;

    CMatrix b = CMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < r; ++i) {
        // |e0'><0 (+) l| has entries conj(l_i) in row e0'.
        b(1, 2 + i) += 0.5 * std::conj(real.l(i));
        b(2 + i, 1) += 0.5 * real.l(i);
    }
    CMatrix a = b * psi_norm2;

    CMatrix gap = CMatrix::Identity(dim, dim) - k.adjoint() * k;
    gap = ((gap + gap.adjoint()) * 0.5).eval();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(gap);
    std::vector<CMatrix> kraus{k};
    for (Eigen::Index j = 0; j < dim; ++j) {
        double mu = es.eigenvalues()(j);
        if (mu < -kCompletionClip)
            throw Error(ErrorCode::NotAContraction,
                        "1 - K^dagger K has eigenvalue " + short_number(mu));
        if (mu <= 0.0) continue;
        CMatrix op = CMatrix::Zero(dim, dim);
        op.row(0) = std::sqrt(mu) * es.eigenvectors().col(j).adjoint();
        kraus.push_back(std::move(op));
    }
    return QuantumRealization{dim, KrausChannel(std::move(kraus)), DensityMatrix(std::move(rho)),
                              Observable(std::move(a))};
}

struct CptpReport {
    double trace_preserving_residual = 0.0;
    double choi_min_eigenvalue = 0.0;
    bool pass = false;
};

/// Checks an arbitrary Kraus list (it need not be a valid KrausChannel).
inline CptpReport verify_cptp(std::span<const CMatrix> kraus) {
    if (kraus.empty()) throw Error(ErrorCode::InvalidParameter, "empty Kraus list");
    const Eigen::Index d = kraus.front().rows();
    CMatrix sum = CMatrix::Zero(d, d);
    for (const auto& k : kraus) {
        if (k.rows() != d || k.cols() != d)
            throw Error(ErrorCode::DimensionMismatch, "Kraus operators must all be d x d");
        sum.noalias() += k.adjoint() * k;
    }
    CptpReport rep;
    rep.trace_preserving_residual = (sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();

    // Choi matrix sum_ij |i><j| (x) T(|i><j|).
    CMatrix choi = CMatrix::Zero(d * d, d * d);
    for (const auto& k : kraus)
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) choi.block(i * d, j * d, d, d) += k.col(i) * k.col(j).adjoint();
    choi = ((choi + choi.adjoint()) * 0.5).eval();
    rep.choi_min_eigenvalue =
        Eigen::SelfAdjointEigenSolver<CMatrix>(choi, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    rep.pass = rep.trace_preserving_residual <= kTracePreservingTol && rep.choi_min_eigenvalue >= -1e-10;
    return rep;
}

inline CptpReport verify_cptp(const KrausChannel& channel) { return verify_cptp(channel.kraus()); }

}  // namespace delaydim
