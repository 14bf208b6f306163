#include "proofkit/errors.hpp"

namespace proofkit {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotInSystem: return "NotInSystem";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::ForallProvisoViolated: return "ForallProvisoViolated";
    case ErrorKind::NonAtomicInstantiation: return "NonAtomicInstantiation";
    case ErrorKind::HoleTypeMismatch: return "HoleTypeMismatch";
    case ErrorKind::DuplicateBinding: return "DuplicateBinding";
    case ErrorKind::NotARedex: return "NotARedex";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::AtomicInstantiation: return "AtomicInstantiation";
    case ErrorKind::NotFine: return "NotFine";
    case ErrorKind::StaleRedex: return "StaleRedex";
    case ErrorKind::StepLimitExceeded: return "StepLimitExceeded";
    case ErrorKind::NotTypable: return "NotTypable";
    case ErrorKind::NotIPCFormula: return "NotIPCFormula";
    case ErrorKind::NotIPCTerm: return "NotIPCTerm";
    case ErrorKind::RuleNotApplicable: return "RuleNotApplicable";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::InvalidPath: return "InvalidPath";
    }
    return "Error";
}

}  // namespace proofkit
