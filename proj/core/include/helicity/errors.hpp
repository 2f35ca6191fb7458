#pragma once

#include <stdexcept>
#include <string>

namespace helicity {

// Names of domain errors as they appear on the CLI diagnostic stream and in
// test expectations. Keep these stable; they are part of the tool's contract.
enum class ErrorCode {
    InvalidResolution,
    ManifoldMismatch,
    DegreeOverflow,
    SyntaxError,
    UnknownIdentifier,
    NotZonal,
    NotExact,
    NotBasic,
    ChartDegeneracy,
    ResidualTooLarge,
    NotCompactlySupported,
    NotNullHomologous,
    ResonantDivisor,
    PrecisionExhausted,
    InsufficientPairs,
    NotFlat,
    IoError,
};

const char* error_name(ErrorCode code);

class DomainError : public std::runtime_error {
public:
    DomainError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    const char* name() const noexcept { return error_name(code_); }

private:
    ErrorCode code_;
};

// Expression-text error carrying the byte offset of the first bad character.
class ParseError : public DomainError {
public:
    ParseError(ErrorCode code, std::size_t offset, const std::string& what)
        : DomainError(code, what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace helicity
