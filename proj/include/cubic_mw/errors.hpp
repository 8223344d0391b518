#ifndef CUBIC_MW_ERRORS_HPP
#define CUBIC_MW_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace cubic_mw {

enum class ErrorCode {
    InvalidField,
    ZeroVector,
    DimensionMismatch,
    CoincidentPoints,
    CoincidentLines,
    EqualPoints,
    LineOnSurface,
    LineOnCurve,
    SingularPoint,
    NotOnCurve,
    InvalidCoefficients,
    BoundTooLarge,
    ParseError,
    NotOnSurface,
    UnsortedInput,
    DegeneratePosition,
    BasePoint,
    BasePointResult,
    AmbiguousKernel,
    EmptyKernel,
    NotOnSection,
    DegenerateSample,
    DegenerateSeeds,
    IoError,
};

constexpr std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidField: return "InvalidField";
        case ErrorCode::ZeroVector: return "ZeroVector";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::CoincidentPoints: return "CoincidentPoints";
        case ErrorCode::CoincidentLines: return "CoincidentLines";
        case ErrorCode::EqualPoints: return "EqualPoints";
        case ErrorCode::LineOnSurface: return "LineOnSurface";
        case ErrorCode::LineOnCurve: return "LineOnCurve";
        case ErrorCode::SingularPoint: return "SingularPoint";
        case ErrorCode::NotOnCurve: return "NotOnCurve";
        case ErrorCode::InvalidCoefficients: return "InvalidCoefficients";
        case ErrorCode::BoundTooLarge: return "BoundTooLarge";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::NotOnSurface: return "NotOnSurface";
        case ErrorCode::UnsortedInput: return "UnsortedInput";
        case ErrorCode::DegeneratePosition: return "DegeneratePosition";
        case ErrorCode::BasePoint: return "BasePoint";
        case ErrorCode::BasePointResult: return "BasePointResult";
        case ErrorCode::AmbiguousKernel: return "AmbiguousKernel";
        case ErrorCode::EmptyKernel: return "EmptyKernel";
        case ErrorCode::NotOnSection: return "NotOnSection";
        case ErrorCode::DegenerateSample: return "DegenerateSample";
        case ErrorCode::DegenerateSeeds: return "DegenerateSeeds";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

/// Domain error raised by every module. The code identifies the failed
/// precondition; the message carries the offending data.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

}  // namespace cubic_mw

#endif
