#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace isosing {

enum class ErrorKind {
  CriticalExponentUnsupported,
  InvalidParameter,
  InvalidRadius,
  PreconditionViolation,
  NumericalFault,
  FiniteTimeBlowup,
  StiffnessFault,
  NoConvergence,
  BranchCollapse,
  UnreliableTail,
  InvalidWindow,
  InvalidInput,
};

const char* to_string(ErrorKind k);

// Every failure in the library is reported through this type. `detail` carries
// a number that helps the caller: last valid t for blow-up, the partial
// integral for an unreliable tail, the boundary value reached by continuation.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg, std::optional<double> detail = std::nullopt);
  ErrorKind kind() const { return kind_; }
  std::optional<double> detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::optional<double> detail_;
};

}  // namespace isosing
