#include "isosing/transform.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "isosing/error.hpp"

namespace isosing {

double Branch::slope(const ProblemParams& p) const {
  switch (kind) {
    case BranchKind::ShiftGamma: return gamma;
    case BranchKind::ShiftTwoOverB:
    case BranchKind::LambdaCritical: return 2.0 / p.b;
    case BranchKind::ShiftQOverB: return p.q / p.b;
    case BranchKind::NoShift: return 0.0;
  }
  return 0.0;
}

double Branch::S(const ProblemParams& p, double t) const {
  double s = slope(p) * t;
  if (kind == BranchKind::LambdaCritical) s += 2.0 / p.b * std::log1p(-t);
  return s;
}

double Branch::S_t(const ProblemParams& p, double t) const {
  double s = slope(p);
  if (kind == BranchKind::LambdaCritical) s -= 2.0 / p.b / (1.0 - t);
  return s;
}

double Branch::S_tt(const ProblemParams& p, double t) const {
  if (kind != BranchKind::LambdaCritical) return 0.0;
  double s = 1.0 - t;
  return -2.0 / p.b / (s * s);
}

double Branch::absorption_exponent(const ProblemParams& p, double t) const {
  if (kind == BranchKind::LambdaCritical) return -2.0 * std::log1p(-t);
  return (2.0 - p.b * slope(p)) * t;
}

void Branch::check(const ProblemParams& p) const {
  switch (kind) {
    case BranchKind::ShiftGamma:
      if (!std::isfinite(gamma) || gamma < 0.0)
        throw Error(ErrorKind::PreconditionViolation, "ShiftGamma needs gamma >= 0");
      break;
    case BranchKind::ShiftQOverB:
      if (!(p.q > 2.0)) throw Error(ErrorKind::PreconditionViolation, "ShiftQOverB needs q > 2");
      break;
    case BranchKind::LambdaCritical:
      if (p.gamma && std::fabs(*p.gamma - 2.0 / p.b) > 1e-12)
        throw Error(ErrorKind::PreconditionViolation, "LambdaCritical needs gamma = 2/b");
      break;
    default: break;
  }
}

std::string to_string(const Branch& br) {
  switch (br.kind) {
    case BranchKind::ShiftGamma: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "ShiftGamma(%.17g)", br.gamma);
      return buf;
    }
    case BranchKind::ShiftTwoOverB: return "ShiftTwoOverB";
    case BranchKind::ShiftQOverB: return "ShiftQOverB";
    case BranchKind::NoShift: return "NoShift";
    case BranchKind::LambdaCritical: return "LambdaCritical";
  }
  return "NoShift";
}

Branch parse_branch(const std::string& s) {
  if (s == "ShiftTwoOverB") return Branch::shift_two_over_b();
  if (s == "ShiftQOverB") return Branch::shift_q_over_b();
  if (s == "NoShift") return Branch::no_shift();
  if (s == "LambdaCritical") return Branch::lambda_critical();
  const std::string pre = "ShiftGamma(";
  if (s.rfind(pre, 0) == 0 && s.back() == ')') {
    std::string num = s.substr(pre.size(), s.size() - pre.size() - 1);
    char* end = nullptr;
    double g = std::strtod(num.c_str(), &end);
    if (end && *end == '\0' && !num.empty()) return Branch::shift_gamma(g);
  }
  throw Error(ErrorKind::InvalidInput, "unknown branch tag '" + s + "'");
}

LogProfile transform_log(const ProblemParams& p, const Branch& br, const PhysProfile& in) {
  br.check(p);
  std::size_t n = in.r.size();
  if (in.u.size() != n || in.u_r.size() != n)
    throw Error(ErrorKind::InvalidInput, "profile columns differ in length");
  LogProfile out;
  out.t.resize(n);
  out.w.resize(n);
  out.w_t.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(in.r[i] > 0.0)) throw Error(ErrorKind::InvalidRadius, "radii must be positive");
    double t = std::log(in.r[i]);
    out.t[i] = t;
    out.w[i] = in.u[i] + br.S(p, t);
    out.w_t[i] = in.r[i] * in.u_r[i] + br.S_t(p, t);
  }
  return out;
}

PhysProfile inverse_transform_log(const ProblemParams& p, const Branch& br, const LogProfile& in) {
  br.check(p);
  std::size_t n = in.t.size();
  if (in.w.size() != n || in.w_t.size() != n)
    throw Error(ErrorKind::InvalidInput, "profile columns differ in length");
  PhysProfile out;
  out.r.resize(n);
  out.u.resize(n);
  out.u_r.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double t = in.t[i];
    double r = std::exp(t);
    out.r[i] = r;
    out.u[i] = in.w[i] - br.S(p, t);
    out.u_r[i] = (in.w_t[i] - br.S_t(p, t)) / r;
  }
  return out;
}

}  // namespace isosing
