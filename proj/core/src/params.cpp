#include "isosing/params.hpp"

#include <cmath>
#include <string>

#include "isosing/error.hpp"

namespace isosing {

const char* to_string(Regime r) {
  return r == Regime::Subcritical ? "Subcritical" : "Supercritical";
}

Regime classify_regime(double q) {
  if (!std::isfinite(q) || q <= 1.0)
    throw Error(ErrorKind::InvalidParameter, "q must exceed 1, got " + std::to_string(q));
  if (q == 2.0)
    throw Error(ErrorKind::CriticalExponentUnsupported, "q = 2 is not supported");
  return q < 2.0 ? Regime::Subcritical : Regime::Supercritical;
}

ProblemParams ProblemParams::make(double m, double a, double b, double q,
                                  std::optional<double> gamma) {
  ProblemParams p{m, a, b, q, gamma};
  p.validate();
  return p;
}

void ProblemParams::validate() const {
  auto pos = [](double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0)
      throw Error(ErrorKind::InvalidParameter, std::string(name) + " must be positive");
  };
  pos(m, "m");
  pos(a, "a");
  pos(b, "b");
  Regime r = classify_regime(q);
  if (gamma) {
    if (!std::isfinite(*gamma) || *gamma < 0.0)
      throw Error(ErrorKind::InvalidParameter, "gamma must be nonnegative");
    if (r == Regime::Subcritical && *gamma > 2.0 / b * (1.0 + 1e-14))
      throw Error(ErrorKind::InvalidParameter,
                  "gamma = " + std::to_string(*gamma) + " exceeds 2/b = " + std::to_string(2.0 / b));
  }
}

double ProblemParams::critical_constant() const { return std::log(2.0 / (a * b)) / b; }

double abs_pow(double x, double q) {
  double ax = std::fabs(x);
  return ax == 0.0 ? 0.0 : std::exp(q * std::log(ax));
}

double abs_pow_deriv(double x, double q) {
  if (x == 0.0) return 0.0;
  double d = q * abs_pow(x, q - 1.0);
  return x > 0.0 ? d : -d;
}

}  // namespace isosing
