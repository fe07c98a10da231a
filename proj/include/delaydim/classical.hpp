// classical.hpp - classical stochastic-chain models a(t) = <a|S^t|p>.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "rng.hpp"
#include "sequences.hpp"

namespace delaydim {

inline constexpr double kStochasticTol = 1e-12;

/// Column-stochastic S (p evolves as p -> S p), initial distribution p and
/// measurement values a_out assigned to the dc states.
class StochasticModel {
public:
    StochasticModel(RMatrix s, RVector p, RVector a_out)
        : s_(std::move(s)), p_(std::move(p)), a_(std::move(a_out)) {
        const Eigen::Index dc = s_.rows();
        if (dc < 1 || s_.cols() != dc)
            throw Error(ErrorCode::DimensionMismatch, "stochastic matrix must be square and non-empty");
        if (p_.size() != dc || a_.size() != dc)
            throw Error(ErrorCode::DimensionMismatch, "p and a must have length dc");
        if (!s_.allFinite() || !p_.allFinite() || !a_.allFinite())
            throw Error(ErrorCode::InvariantViolation, "stochastic model contains non-finite values");
        const double min_s = s_.minCoeff();
        if (min_s < 0.0) invariant_violation("stochastic matrix", "entries >= 0", -min_s, 0.0);
        const double col_res = (s_.colwise().sum().array() - 1.0).abs().maxCoeff();
        if (!(col_res <= kStochasticTol))
            invariant_violation("stochastic matrix", "columns sum to 1", col_res, kStochasticTol);
        const double min_p = p_.minCoeff();
        if (min_p < 0.0) invariant_violation("probability vector", "entries >= 0", -min_p, 0.0);
        const double p_res = std::abs(p_.sum() - 1.0);
        if (!(p_res <= kStochasticTol))
            invariant_violation("probability vector", "sums to 1", p_res, kStochasticTol);
    }

    Eigen::Index dc() const noexcept { return s_.rows(); }
    const RMatrix& s() const noexcept { return s_; }
    const RVector& p() const noexcept { return p_; }
    const RVector& a_out() const noexcept { return a_; }

private:
    RMatrix s_;
    RVector p_;
    RVector a_;
};

inline RealSequence evolve_classical(const StochasticModel& model, std::size_t steps) {
    if (steps == 0) throw Error(ErrorCode::InvalidParameter, "steps must be positive");
    std::vector<double> out;
    out.reserve(steps);
    RVector p = model.p();
    for (std::size_t t = 0; t < steps; ++t) {
        out.push_back(model.a_out().dot(p));
        if (t + 1 < steps) p = model.s() * p;
    }
    return RealSequence(std::move(out));
}

/// Columns of S and p from a flat Dirichlet (normalized exponentials); a_out standard normal.
inline StochasticModel random_stochastic(Eigen::Index dc, std::uint64_t seed) {
    if (dc < 1) throw Error(ErrorCode::InvalidParameter, "dc must be at least 1");
    Engine engine(derive_seed(seed, {0x73746f63u}));
    std::exponential_distribution<double> expo(1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto dirichlet = [&] {
        RVector v(dc);
        for (Eigen::Index i = 0; i < dc; ++i) v(i) = expo(engine);
        return RVector(v / v.sum());
    };
    RMatrix s(dc, dc);
    for (Eigen::Index j = 0; j < dc; ++j) s.col(j) = dirichlet();
    RVector p = dirichlet();
    RVector a(dc);
    for (Eigen::Index i = 0; i < dc; ++i) a(i) = normal(engine);
    return StochasticModel(std::move(s), std::move(p), std::move(a));
}

}  // namespace delaydim
