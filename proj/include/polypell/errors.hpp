#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polypell {

enum class ErrorCode {
    DivisionByZero,
    DivisionByZeroPoly,
    ZeroPolynomial,
    OddDegree,
    DegreeTooSmall,
    LeadingCoefficientNotASquare,
    NotSquarefree,
    DegreeTooLarge,
    ZeroFunction,
    UnsupportedSupport,
    InternalVerificationFailure,
    BudgetExceeded,
    NotASolution,
    TrivialSolution,
    NotARelation,
    ParityViolation,
    NonSplitTarget,
    NestedExtension,
    ParseError,
    InvalidArgument,
};

std::string_view error_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace polypell
