#pragma once

namespace isosing {

// Order-zero and order-one Bessel functions by power series. The series is
// alternating with decreasing terms for the arguments used here (|x| <= 3), so
// stopping when the next term drops below 1e-17 of the running scale bounds
// the truncation error by that term.
double bessel_j0(double x);
double bessel_j1(double x);

// First zero of J0, found by bisection on [2, 3].
double j01();

// First Dirichlet eigenpair of the unit disk: phi1(r) = J0(j01 r),
// lambda1 = j01^2, phi1(0) = 1.
struct EigenData {
  double j01;
  double lambda1;
  double phi1(double r) const;
  double phi1_r(double r) const;
  double phi1_rr(double r) const;
};
const EigenData& eigen_data();

double bessel_phi1(double r);

// Truncated nonlinearity: xi^{q/2} below xi = s^2, then the C^2 continuation
// with quadratic growth in |grad u|. Requires q > 2.
struct TruncatedPower {
  double value;
  double d1;  // d/dxi
  double d2;  // d^2/dxi^2
};
TruncatedPower truncated_power_eval(double xi, double s, double q);
double truncated_power(double xi, double s, double q);

// The two branch formulas evaluated separately, for junction checks.
TruncatedPower truncated_power_lower(double xi, double q);
TruncatedPower truncated_power_upper(double xi, double s, double q);

}  // namespace isosing
