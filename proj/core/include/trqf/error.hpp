#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trqf {

enum class ErrorCode {
    InvalidArgument,
    NotTotallyReal,
    NotARing,
    BadBasis,
    BadDiscriminant,
    DivisionByZero,
    NoSuchUnit,
    MissingData,
    BoxTooLarge,
    Singular,
    UnexpectedSingularCase,
    UnclassifiedCase,
    UnsupportedK,
    MismatchAgainstFormula,
    PoolExhausted,
    ParseError,
    ValidationError,
    IdentityMismatch,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// the CLI and the scan drivers can record it without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace trqf
