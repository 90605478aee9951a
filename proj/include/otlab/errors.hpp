#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace otlab {

// Every failure mode the toolkit reports. Names double as the identifiers
// printed by the CLI, so keep them stable.
enum class ErrorKind {
    EmptyInput,
    NonMonic,
    DegreeTooSmall,
    NotSquarefree,
    RootResidualTooLarge,
    SZero,
    TZero,
    IndexOutOfRange,
    SkipPrime,
    NoUsablePrimes,
    NotAUnit,
    NotTotallyPositive,
    LogMatrixSingular,
    ResidualTooLarge,
    AmbiguousNumeric,
    EnumerationTooLarge,
    ShapeMismatch,
    NotAComplex,
    RankUnstable,
    ResidualCheckFailed,
    NoWitness,
    IdentityFailed,
    MismatchReport,
    BoundTooLarge,
    ParseError,
};

constexpr std::string_view to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::NonMonic: return "NonMonic";
    case ErrorKind::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorKind::NotSquarefree: return "NotSquarefree";
    case ErrorKind::RootResidualTooLarge: return "RootResidualTooLarge";
    case ErrorKind::SZero: return "SZero";
    case ErrorKind::TZero: return "TZero";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::SkipPrime: return "SkipPrime";
    case ErrorKind::NoUsablePrimes: return "NoUsablePrimes";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NotTotallyPositive: return "NotTotallyPositive";
    case ErrorKind::LogMatrixSingular: return "LogMatrixSingular";
    case ErrorKind::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorKind::AmbiguousNumeric: return "AmbiguousNumeric";
    case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::RankUnstable: return "RankUnstable";
    case ErrorKind::ResidualCheckFailed: return "ResidualCheckFailed";
    case ErrorKind::NoWitness: return "NoWitness";
    case ErrorKind::IdentityFailed: return "IdentityFailed";
    case ErrorKind::MismatchReport: return "MismatchReport";
    case ErrorKind::BoundTooLarge: return "BoundTooLarge";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) {
    throw Error(kind, detail);
}

} // namespace otlab
