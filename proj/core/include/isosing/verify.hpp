#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "isosing/annulus2d.hpp"
#include "isosing/asymptotics.hpp"
#include "isosing/model.hpp"
#include "isosing/radial.hpp"

namespace isosing {

// zeta(x) = (1 - |x|^2)^k with k = 3 (default) or 4; both are C^2 on the
// closed disk, vanish with two derivatives at |x| = 1 and have zeta(0) = 1.
enum class TestFunction { Cubic, Quartic };
int test_function_power(TestFunction z);
double test_zeta(TestFunction z, double r);
double test_lap_zeta(TestFunction z, double r);

struct MassEstimate {
  double mass = 0.0;           // distributional mass / (2 pi)
  double partial = 0.0;        // contribution of [T0, 0]
  double tail_u = 0.0;         // -u Lap zeta below T0, w frozen at w(T0)
  double tail_reaction = 0.0;  // (a e^{bu} - m|grad u|^q) zeta below T0, from log-fits of each term
  double tail_fit_residual = 0.0;  // worst rms log-residual of those fits, over 1 + max|ln y|
  bool tail_balanced = false;  // reaction cancels to round-off (eikonal profile): tail set to 0
  double roundoff = 0.0;       // bound on the round-off in the partial integral of a e^{bu} - m|grad u|^q
  TestFunction zeta = TestFunction::Cubic;
};

// Throws UnreliableTail (detail = partial + tail_u) when a tail fit is poor
// (relative log-residual > 1e-2) or the fitted tail does not decay, and
// NumericalFault (detail = roundoff) when the absorption and gradient terms are
// so large near T0 that their difference carries more than 1e-3 of round-off.
MassEstimate distributional_mass(const RadialProfile& prof, TestFunction zeta = TestFunction::Cubic);
MassEstimate distributional_mass(const Field2D& field, TestFunction zeta = TestFunction::Cubic);

enum class Integrability { Integrable, NotIntegrable, Inconclusive };
const char* to_string(Integrability f);

struct IntegrandTail {
  Integrability flag = Integrability::Inconclusive;
  double exponent = 0.0;             // fitted rate of the t-integrand as t -> -inf
  std::optional<double> log_power;   // power of (1 - t), critical branch only
  double partial = 0.0;              // integral over [T0, 0], divided by 2 pi
  std::optional<double> total;       // partial plus fitted tail when integrable
  double fit_residual = 0.0;
};

struct IntegrabilityReport {
  IntegrandTail exp_term;   // e^{bu}: t-integrand e^{bu + 2t}
  IntegrandTail grad_term;  // |grad u|^q: t-integrand |u_t|^q e^{(2-q)t}
};

// Exponent dead zone 0.05; throws UnreliableTail when a log fit's relative
// residual reaches 0.2.
IntegrabilityReport integrability_report(const RadialProfile& prof);

struct QuadratureIdentity {
  double value = 0.0;        // 2 pi (truncated + analytic tail)
  double truncated = 0.0;    // 2 pi * int_{T0}^0 dt/(1-t)^2
  double tail = 0.0;         // 2 pi / (1 - T0)
  double unit_integral = 0.0;  // int_{-inf}^0 dt/(1-t)^2 by exp-sinh quadrature
};
// int_{B_1} dx / (|x|^2 (1 - ln|x|)^2) in the t variable.
QuadratureIdentity quadrature_identity_check(double T0 = -18.0);

// A sampled curve in the log variable, values in u (not w).
struct Curve {
  std::vector<double> t;
  std::vector<double> v;
};
Curve curve_u(const RadialProfile& prof);
Curve curve_from(const std::vector<double>& t, const std::function<double(double)>& u_of_r);

struct SandwichMargins {
  double lower = 0.0;  // min(u - lower)
  double upper = 0.0;  // min(upper - u)
  double t_lower = 0.0;
  double t_upper = 0.0;
  bool holds(double tol) const { return lower >= -tol && upper >= -tol; }
};

// Barriers are resampled onto u's grid by monotone cubic interpolation; the
// comparison runs on the overlap of the three grids, optionally clipped to
// `window`. Throws InvalidInput when the grids do not overlap.
SandwichMargins sandwich_check(const Curve& u, const Curve& lower, const Curve& upper,
                               std::optional<FitWindow> window = std::nullopt);

enum class Certification { Supersolution, Subsolution, Neither };
const char* to_string(Certification c);

struct CertifyResult {
  Certification verdict = Certification::Neither;
  double min_residual = 0.0;  // relative residual, see below
  double max_residual = 0.0;
  double worst_margin = 0.0;  // the residual that decides the verdict (most negative or most positive)
  double worst_r = 0.0;
  double boundary_value = 0.0;
  double tolerance = 0.0;
};

// Residual of the candidate's natural operator divided by 1 + the magnitude
// of its terms, on a log-spaced grid of `grid` radii. Supersolution: residual
// >= -tol everywhere and strictly positive somewhere or boundary value above
// `datum`; Subsolution symmetrically; an exact solution with boundary value
// equal to `datum` is Neither.
CertifyResult certify_subsuper(const ClosedForm& cand, double datum = 0.0, int grid = 4096, double tol = 1e-10);
// Profiles are checked through their scaled discrete residual.
CertifyResult certify_subsuper(const RadialProfile& prof, double boundary_value, double datum = 0.0,
                               double tol = 1e-9);

struct GradientCensus {
  double sup_r_ur = 0.0;        // sup r|u'| over the grid (c, C*)
  double sup_r_ur_inner = 0.0;  // same over the inner half
  double t_at_sup = 0.0;
  std::optional<double> inf_lower;      // q > 2: inf |u'| r^{1/(q-1)} on the window
  std::optional<double> lower_reference;  // ((q-2)/(m(q-1)))^{1/(q-1)}
  FitWindow window{0.0, 0.0};
};
GradientCensus gradient_bound_census(const RadialProfile& prof, std::optional<FitWindow> window = std::nullopt);

// min over sampled grid points of apriori_bound(r) - u(r); every `stride`-th
// point with 0 < r < 1 is checked.
struct AprioriMargin {
  double margin = 0.0;
  double t_worst = 0.0;
  int checked = 0;
};
AprioriMargin apriori_margin(const RadialProfile& prof, int stride = 16);

// Barriers of the supercritical sandwich: (2/b) ln(1/r) - K(b) ln(1 - ln r)
// below and (q/b) ln(1/r) + (q/b)[(ln(b/(q m^{1/q})))_+ - ln(b/(q m^{1/q}))]
// above, K(b) = 1 for b >= 2 and 2/b otherwise.
double supercritical_lower_barrier(const ProblemParams& p, double r);
double supercritical_upper_barrier(const ProblemParams& p, double r);

}  // namespace isosing
