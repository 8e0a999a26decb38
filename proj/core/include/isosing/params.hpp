#pragma once

#include <optional>

namespace isosing {

enum class Regime { Subcritical, Supercritical };

const char* to_string(Regime r);

// Throws CriticalExponentUnsupported for q == 2 and InvalidParameter for q <= 1.
Regime classify_regime(double q);

// Coefficients of -Lap u + a e^{bu} = m |grad u|^q.
struct ProblemParams {
  double m = 1.0;
  double a = 1.0;
  double b = 1.0;
  double q = 1.5;
  std::optional<double> gamma;

  // Validating factory; the aggregate form is left open for designated
  // initializers but every library entry point calls validate().
  static ProblemParams make(double m, double a, double b, double q,
                            std::optional<double> gamma = std::nullopt);
  void validate() const;

  Regime regime() const { return classify_regime(q); }
  double two_over_b() const { return 2.0 / b; }
  double q_over_b() const { return q / b; }
  // (1/b) ln(2/(ab)), the universal constant of the critical branch.
  double critical_constant() const;
};

// |x|^q with 0^q = 0, and its signed derivative q|x|^{q-1}sign(x).
double abs_pow(double x, double q);
double abs_pow_deriv(double x, double q);

}  // namespace isosing
