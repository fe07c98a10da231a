// sequences.hpp - observed time series and their delay (Hankel) embeddings.
#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"

namespace delaydim {

/// Finite real series a(0), ..., a(T_max) of expectation values.
class RealSequence {
public:
    explicit RealSequence(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty())
            throw Error(ErrorCode::InvalidParameter, "sequence must contain at least one value");
        for (std::size_t t = 0; t < values_.size(); ++t)
            if (!std::isfinite(values_[t]))
                throw Error(ErrorCode::InvariantViolation,
                            "sequence value at t=" + std::to_string(t) + " is not finite");
    }

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t t) const { return values_[t]; }
    std::span<const double> values() const noexcept { return values_; }
    const std::vector<double>& vector() const noexcept { return values_; }

    double max_abs() const noexcept {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        return m;
    }

    friend bool operator==(const RealSequence&, const RealSequence&) = default;

private:
    std::vector<double> values_;
};

/// Several observables sampled on the same time grid; row alpha holds a_alpha(t).
class MultiSequence {
public:
    explicit MultiSequence(RMatrix values) : values_(std::move(values)) {
        if (values_.rows() == 0 || values_.cols() == 0)
            throw Error(ErrorCode::InvalidParameter, "multi-sequence must be non-empty");
        if (!values_.allFinite())
            throw Error(ErrorCode::InvariantViolation, "multi-sequence contains non-finite values");
    }

    /// Builds from per-observable series; all must have the same length.
    static MultiSequence from_rows(const std::vector<RealSequence>& rows) {
        if (rows.empty()) throw Error(ErrorCode::InvalidParameter, "no observables given");
        const std::size_t len = rows.front().size();
        RMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(len));
        for (std::size_t a = 0; a < rows.size(); ++a) {
            if (rows[a].size() != len)
                throw Error(ErrorCode::InvariantViolation,
                            "observable " + std::to_string(a) + " has length " +
                                std::to_string(rows[a].size()) + ", expected " + std::to_string(len));
            for (std::size_t t = 0; t < len; ++t)
                m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(t)) = rows[a][t];
        }
        return MultiSequence(std::move(m));
    }

    std::size_t observable_count() const noexcept { return static_cast<std::size_t>(values_.rows()); }
    std::size_t size() const noexcept { return static_cast<std::size_t>(values_.cols()); }
    double operator()(std::size_t alpha, std::size_t t) const {
        return values_(static_cast<Eigen::Index>(alpha), static_cast<Eigen::Index>(t));
    }
    const RMatrix& matrix() const noexcept { return values_; }

    RealSequence row(std::size_t alpha) const {
        const RVector r = values_.row(static_cast<Eigen::Index>(alpha));
        return RealSequence(std::vector<double>(r.data(), r.data() + r.size()));
    }

private:
    RMatrix values_;
};

/// v(k,l) = a(k+l) and v_shift(k,l) = a(k+l+1), 0-based.
struct HankelPair {
    std::size_t n = 0;
    RMatrix v;
    RMatrix v_shift;
};

/// Largest admissible Hankel size for a series of this length.
inline std::size_t default_hankel_size(std::size_t length) { return length / 2; }

inline void require_hankel_size(std::size_t length, std::size_t n) {
    if (n == 0) throw Error(ErrorCode::InvalidParameter, "Hankel size must be positive");
    if (length < 2 * n)
        throw Error(ErrorCode::SequenceTooShort,
                    "Hankel size " + std::to_string(n) + " needs " + std::to_string(2 * n) +
                        " samples, sequence has " + std::to_string(length));
}

inline HankelPair build_hankel(const RealSequence& seq, std::size_t n) {
    require_hankel_size(seq.size(), n);
    const auto nn = static_cast<Eigen::Index>(n);
    HankelPair h{n, RMatrix(nn, nn), RMatrix(nn, nn)};
    for (Eigen::Index k = 0; k < nn; ++k)
        for (Eigen::Index l = 0; l < nn; ++l) {
            h.v(k, l) = seq[static_cast<std::size_t>(k + l)];
            h.v_shift(k, l) = seq[static_cast<std::size_t>(k + l + 1)];
        }
    return h;
}

/// Stacks the "delayed matrices" of several observables. Rows are blocked by
/// observable: row alpha*n + k, column l holds a_alpha(k + l). With a single
/// observable this is exactly `build_hankel(...).v`.
inline RMatrix build_block_hankel(const MultiSequence& mseq, std::size_t n) {
    require_hankel_size(mseq.size(), n);
    const auto nn = static_cast<Eigen::Index>(n);
    const auto m = static_cast<Eigen::Index>(mseq.observable_count());
    RMatrix out(m * nn, nn);
    for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index k = 0; k < nn; ++k)
            for (Eigen::Index l = 0; l < nn; ++l)
                out(a * nn + k, l) = mseq.matrix()(a, k + l);
    return out;
}

}  // namespace delaydim
