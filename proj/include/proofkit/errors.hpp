#pragma once

#include <stdexcept>
#include <string>

#include "proofkit/term.hpp"

namespace proofkit {

enum class ErrorKind {
    ParseError,
    NotInSystem,
    UnboundVariable,
    TypeMismatch,
    ForallProvisoViolated,
    NonAtomicInstantiation,
    HoleTypeMismatch,
    DuplicateBinding,
    NotARedex,
    ShapeMismatch,
    AtomicInstantiation,
    NotFine,
    StaleRedex,
    StepLimitExceeded,
    NotTypable,
    NotIPCFormula,
    NotIPCTerm,
    RuleNotApplicable,
    InvariantViolation,
    InvalidPath,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, Position position = {})
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
          kind_(kind),
          position_(std::move(position)) {}

    ErrorKind kind() const { return kind_; }
    const Position& position() const { return position_; }

private:
    ErrorKind kind_;
    Position position_;
};

}  // namespace proofkit
