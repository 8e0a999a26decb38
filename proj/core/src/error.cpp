#include "isosing/error.hpp"

namespace isosing {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::CriticalExponentUnsupported: return "CriticalExponentUnsupported";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::InvalidRadius: return "InvalidRadius";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::NumericalFault: return "NumericalFault";
    case ErrorKind::FiniteTimeBlowup: return "FiniteTimeBlowup";
    case ErrorKind::StiffnessFault: return "StiffnessFault";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::BranchCollapse: return "BranchCollapse";
    case ErrorKind::UnreliableTail: return "UnreliableTail";
    case ErrorKind::InvalidWindow: return "InvalidWindow";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& msg, std::optional<double> detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind), detail_(detail) {}

}  // namespace isosing
