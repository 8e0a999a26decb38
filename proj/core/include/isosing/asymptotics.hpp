#pragma once

#include <optional>
#include <span>
#include <vector>

#include "isosing/radial.hpp"

namespace isosing {

struct FitWindow {
  double t_lo;
  double t_hi;
};

// Deepest third of the grid without the 5% next to T0, where the artificial
// closure pollutes the profile.
FitWindow default_window(std::span<const double> t);
FitWindow default_window(const RadialProfile& prof);

struct SingularityFit {
  double gamma_hat = 0.0;
  double ell_hat = 0.0;
  std::optional<double> beta_hat;
  std::optional<double> loglog_coefficient;
  FitWindow window{0.0, 0.0};
  double residual = 0.0;  // rms of the fit residual over 1 + rms of the data
  bool loglog_suspect = false;
};

// u = gamma (-t) + ell by least squares on the window. The fit is flagged
// LogLogSuspect when an extra -ln(1-t) regressor picks up a coefficient above
// 0.05, which is how the critical log-log correction shows up.
SingularityFit fit_gamma(std::span<const double> t, std::span<const double> u, FitWindow win);
SingularityFit fit_gamma(const RadialProfile& prof, std::optional<FitWindow> win = std::nullopt);

// u = ell + gamma (-t) + c (-ln(1-t)). On a LambdaCritical profile ell_hat
// comes from lambda = ell + c1/(1-t) + c2/(1-t)^2, the slow algebraic approach
// of lambda to its limit, and that tail is removed from u before the
// three-regressor fit.
SingularityFit fit_critical(std::span<const double> t, std::span<const double> u, FitWindow win);
SingularityFit fit_critical(const RadialProfile& prof, std::optional<FitWindow> win = std::nullopt);

enum class DecayLimit { Zero, Known, Fitted };

struct DecayFit {
  double beta_hat = 0.0;
  double amplitude = 0.0;
  double limit = 0.0;
  double residual = 0.0;  // rms of the log fit residual
  bool envelope = false;  // local-maximum envelope used because the series touched zero
  FitWindow window{0.0, 0.0};
};

// Fits s(t) ~ L + C e^{beta t} on the window. With DecayLimit::Fitted, L is
// found by variable projection (beta by Brent, L and C linear); otherwise the
// slope of ln|s - L| against t is returned.
DecayFit fit_decay(std::span<const double> t, std::span<const double> s, FitWindow win,
                   DecayLimit mode = DecayLimit::Zero, double limit = 0.0);

struct HolderFit {
  double exponent = 0.0;
  double u0 = 0.0;  // extrapolated centre value
  double residual = 0.0;
  FitWindow window{0.0, 0.0};
  double reference_general = 0.0;  // 1 - 2/q
  double reference_radial = 0.0;   // (q-2)/(q-1)
};

// Fits ln|u - u(0)| against t, u(0) by Aitken extrapolation from the values at
// t_lo, t_lo + 1, t_lo + 2 (interpolated).
HolderFit holder_exponent(const RadialProfile& prof, double q, FitWindow win = {-8.0, -1.0});
HolderFit holder_exponent(std::span<const double> t, std::span<const double> u, double q, FitWindow win);

}  // namespace isosing
