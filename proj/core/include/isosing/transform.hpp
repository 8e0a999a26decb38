#pragma once

#include <string>
#include <vector>

#include "isosing/params.hpp"

namespace isosing {

enum class BranchKind { ShiftGamma, ShiftTwoOverB, ShiftQOverB, NoShift, LambdaCritical };

// Change of unknown in the log variable t = ln r: u(r) = w(t) - S(t).
//   ShiftGamma(g):  S = g t
//   ShiftTwoOverB:  S = (2/b) t
//   ShiftQOverB:    S = (q/b) t
//   NoShift:        S = 0
//   LambdaCritical: S = (2/b) t + (2/b) ln(1 - t)
struct Branch {
  BranchKind kind = BranchKind::NoShift;
  double gamma = 0.0;

  static Branch shift_gamma(double g) { return {BranchKind::ShiftGamma, g}; }
  static Branch shift_two_over_b() { return {BranchKind::ShiftTwoOverB, 0.0}; }
  static Branch shift_q_over_b() { return {BranchKind::ShiftQOverB, 0.0}; }
  static Branch no_shift() { return {BranchKind::NoShift, 0.0}; }
  static Branch lambda_critical() { return {BranchKind::LambdaCritical, 0.0}; }

  // Coefficient of -ln r in the singular part, i.e. the limit of -S'(t).
  double slope(const ProblemParams& p) const;
  double S(const ProblemParams& p, double t) const;
  double S_t(const ProblemParams& p, double t) const;
  double S_tt(const ProblemParams& p, double t) const;
  // 2t - b S(t), the exponent carried by the absorption term.
  double absorption_exponent(const ProblemParams& p, double t) const;

  // Throws PreconditionViolation when the branch does not fit the parameters.
  void check(const ProblemParams& p) const;
};

std::string to_string(const Branch& br);
Branch parse_branch(const std::string& s);

struct LogProfile {
  std::vector<double> t;
  std::vector<double> w;
  std::vector<double> w_t;
};

struct PhysProfile {
  std::vector<double> r;
  std::vector<double> u;
  std::vector<double> u_r;
};

LogProfile transform_log(const ProblemParams& p, const Branch& br, const PhysProfile& in);
PhysProfile inverse_transform_log(const ProblemParams& p, const Branch& br, const LogProfile& in);

}  // namespace isosing
