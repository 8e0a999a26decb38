#pragma once

#include <cmath>
#include <vector>

#include "isosing/error.hpp"
#include "isosing/model.hpp"
#include "isosing/transform.hpp"

namespace isosing::detail {

// Inner closure at T0, shared by the radial and the 2-D solver.
//
// Generic branches: ghost-point Robin condition w_t(T0) = g(w0), from
// integrating the equation with coefficients frozen at T0,
//   g = a e^{(2-b s)T0} e^{b w0}/(2-b s) - m s^q e^{(2-q)T0}/(2-q),  s = slope.
// LambdaCritical: the decaying mode about ell is C/(1-t), so
//   g = (w0 - ell)/(1 - T0) - m (2/b)^q e^{(2-q)T0}/(2-q).
// q/b branch: both terms of g share e^{(2-q)T0}; they are merged through
// expm1 so g vanishes exactly at w_inf, and the relation is solved for w0
// (see `inverted`).
struct Closure {
  ProblemParams p;
  Branch br;
  double m = 0.0;
  double T0 = 0.0;
  double winf = 0.0;
  bool inverted = false;

  Closure(const ProblemParams& p_, const Branch& br_, double m_, double T0_, bool dirichlet)
      : p(p_), br(br_), m(m_), T0(T0_), winf(eikonal_constant(p_)) {
    inverted = br.kind == BranchKind::ShiftQOverB && m > 0.0 && !dirichlet;
    if (!dirichlet && br.kind != BranchKind::LambdaCritical) {
      double theta = 2.0 - p.b * br.slope(p);
      if (std::fabs(theta) < 1e-12)
        throw Error(ErrorKind::PreconditionViolation, "frozen closure undefined when b * slope = 2; use LambdaCritical");
    }
  }

  void eval(double w0, double& g, double& gd) const {
    if (br.kind == BranchKind::LambdaCritical) {
      double ell = p.critical_constant();
      g = (w0 - ell) / (1.0 - T0);
      gd = 1.0 / (1.0 - T0);
      if (m > 0.0) g -= m * std::pow(2.0 / p.b, p.q) * std::exp((2.0 - p.q) * T0) / (2.0 - p.q);
      return;
    }
    double slope = br.slope(p);
    double theta = 2.0 - p.b * slope;
    if (br.kind == BranchKind::ShiftQOverB && m > 0.0) {
      double c = m * std::pow(slope, p.q) * std::exp(theta * T0) / theta;
      double d = p.b * (w0 - winf);
      g = c * std::expm1(d);
      gd = c * p.b * std::exp(d);
      return;
    }
    double ab = p.a * std::exp(theta * T0 + p.b * w0) / theta;
    g = ab;
    gd = p.b * ab;
    if (m > 0.0 && slope > 0.0) g -= m * std::exp((2.0 - p.q) * T0) * std::pow(slope, p.q) / (2.0 - p.q);
  }

  // Inverted form: w0 = w_inf + (1/b) log1p(k D0) with D0 = w_t(T0). The
  // coefficient k is e^{(q-2)T0} small, which keeps the row well conditioned;
  // the ghost-point form amplifies round-off in g by the gradient term's
  // e^{(2-q)T0} sensitivity.
  double inv_coef() const {
    double theta = 2.0 - p.q;
    return theta * std::exp(-theta * T0) / (m * std::pow(p.q / p.b, p.q));
  }
};

// Rows where the gradient term outweighs diffusion (cell Peclet number along
// the reference slope above 1) take a backward difference for w_t.
inline std::vector<char> upwind_mask(const ProblemParams& p, const Branch& br, double m, const std::vector<double>& t,
                                     double h) {
  std::vector<char> mask(t.size(), 0);
  double ref = br.kind == BranchKind::LambdaCritical ? 2.0 / p.b : br.slope(p);
  if (!(m > 0.0) || !(ref > 0.0)) return mask;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double pe = m * std::exp((2.0 - p.q) * t[i]) * p.q * std::pow(ref, p.q - 1.0) * h / 2.0;
    mask[i] = pe > 1.0;
  }
  return mask;
}

}  // namespace isosing::detail
