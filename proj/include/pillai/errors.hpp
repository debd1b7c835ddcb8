#pragma once

#include <stdexcept>
#include <string>

namespace pillai {

// Precondition failures surfaced by library operations. Each kind matches one
// documented error condition of the operation that raises it.
enum class ErrorKind {
    ZeroDenominator,
    BothZero,
    ZeroInput,
    ZeroToNegativePower,
    DivisionByZero,
    ZeroElement,
    NotExpressible,
    AllConstant,
    NoSharedSupportCase,
    DependentInputs,
    ConstantInput,
    NotDominant,
    NonPolynomialInput,
    DuplicateRoot,
    ZeroTerm,
    ConstantBase,
    ZeroF,
    DivisionByZeroInExpression,
    InvalidArgument,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::ZeroDenominator: return "ZeroDenominator";
        case ErrorKind::BothZero: return "BothZero";
        case ErrorKind::ZeroInput: return "ZeroInput";
        case ErrorKind::ZeroToNegativePower: return "ZeroToNegativePower";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::ZeroElement: return "ZeroElement";
        case ErrorKind::NotExpressible: return "NotExpressible";
        case ErrorKind::AllConstant: return "AllConstant";
        case ErrorKind::NoSharedSupportCase: return "NoSharedSupportCase";
        case ErrorKind::DependentInputs: return "DependentInputs";
        case ErrorKind::ConstantInput: return "ConstantInput";
        case ErrorKind::NotDominant: return "NotDominant";
        case ErrorKind::NonPolynomialInput: return "NonPolynomialInput";
        case ErrorKind::DuplicateRoot: return "DuplicateRoot";
        case ErrorKind::ZeroTerm: return "ZeroTerm";
        case ErrorKind::ConstantBase: return "ConstantBase";
        case ErrorKind::ZeroF: return "ZeroF";
        case ErrorKind::DivisionByZeroInExpression: return "DivisionByZeroInExpression";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    DomainError(ErrorKind kind, const std::string& msg)
        : Error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& msg)
        : Error(msg + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace pillai
