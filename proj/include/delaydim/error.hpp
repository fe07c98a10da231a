#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace delaydim {

enum class ErrorCode {
    // validation failures: bad input data or parameters
    SequenceTooShort,
    DimensionMismatch,
    InvalidParameter,
    InvariantViolation,
    ParseError,
    InconsistentDimension,
    NonRealSequence,
    OutsideConvergence,
    // numerical failures: the data is fine but the requested construction is not attainable
    RankDeficiencyNotReached,
    UnitCircleJordanBlock,
    NotAContraction,
    NearPole,
    PoleOutsideDisc,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::SequenceTooShort: return "SequenceTooShort";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InvalidParameter: return "InvalidParameter";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InconsistentDimension: return "InconsistentDimension";
        case ErrorCode::NonRealSequence: return "NonRealSequence";
        case ErrorCode::OutsideConvergence: return "OutsideConvergence";
        case ErrorCode::RankDeficiencyNotReached: return "RankDeficiencyNotReached";
        case ErrorCode::UnitCircleJordanBlock: return "UnitCircleJordanBlock";
        case ErrorCode::NotAContraction: return "NotAContraction";
        case ErrorCode::NearPole: return "NearPole";
        case ErrorCode::PoleOutsideDisc: return "PoleOutsideDisc";
    }
    return "Unknown";
}

constexpr bool is_numerical(ErrorCode code) {
    switch (code) {
        case ErrorCode::RankDeficiencyNotReached:
        case ErrorCode::UnitCircleJordanBlock:
        case ErrorCode::NotAContraction:
        case ErrorCode::NearPole:
        case ErrorCode::PoleOutsideDisc:
            return true;
        default:
            return false;
    }
}

/// Single exception type for the library; `code()` distinguishes the failure.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    bool numerical() const noexcept { return is_numerical(code_); }

private:
    ErrorCode code_;
};

inline std::string short_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

/// Raises InvariantViolation naming the invariant and the measured residual.
[[noreturn]] inline void invariant_violation(std::string_view what, std::string_view invariant,
                                             double residual, double tolerance) {
    throw Error(ErrorCode::InvariantViolation,
                std::string(what) + " violates '" + std::string(invariant) +
                    "' (residual " + short_number(residual) + ", tolerance " +
                    short_number(tolerance) + ")");
}

}  // namespace delaydim
