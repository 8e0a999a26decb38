#include "isosing/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isosing/error.hpp"
#include "isosing/fitting.hpp"

namespace isosing {

namespace {

void check_window(std::span<const double> t, std::span<const double> y, FitWindow win, double min_len,
                  std::size_t& b, std::size_t& e) {
  if (t.size() != y.size()) throw Error(ErrorKind::InvalidInput, "series lengths differ");
  if (!(win.t_hi - win.t_lo >= min_len))
    throw Error(ErrorKind::InvalidWindow, "fit window shorter than " + std::to_string(min_len));
  if (t.empty() || win.t_lo < t.front() - 1e-12 || win.t_hi > t.back() + 1e-12)
    throw Error(ErrorKind::InvalidWindow, "fit window leaves the grid");
  std::tie(b, e) = window_indices(t, win.t_lo, win.t_hi);
  if (e - b < 4) throw Error(ErrorKind::InvalidWindow, "fewer than four samples in the fit window");
}

double rms(std::span<const double> y) {
  double s = 0.0;
  for (double v : y) s += v * v;
  return std::sqrt(s / static_cast<double>(y.size()));
}

std::vector<double> slice(std::span<const double> v, std::size_t b, std::size_t e) {
  return {v.begin() + static_cast<std::ptrdiff_t>(b), v.begin() + static_cast<std::ptrdiff_t>(e)};
}

double interp_linear(std::span<const double> t, std::span<const double> y, double x) {
  auto it = std::lower_bound(t.begin(), t.end(), x);
  if (it == t.end()) return y.back();
  std::size_t i = static_cast<std::size_t>(it - t.begin());
  if (i == 0 || *it == x) return y[i];
  double s = (x - t[i - 1]) / (t[i] - t[i - 1]);
  return y[i - 1] + s * (y[i] - y[i - 1]);
}

}  // namespace

FitWindow default_window(std::span<const double> t) {
  if (t.size() < 64) throw Error(ErrorKind::InvalidWindow, "grid too short for the default window");
  std::size_t n = t.size();
  return {t[n / 20], t[n / 3]};
}

FitWindow default_window(const RadialProfile& prof) { return default_window(std::span<const double>(prof.t)); }

SingularityFit fit_gamma(std::span<const double> t, std::span<const double> u, FitWindow win) {
  std::size_t b, e;
  check_window(t, u, win, 2.0, b, e);
  auto tt = slice(t, b, e), uu = slice(u, b, e);
  std::vector<double> one(tt.size(), 1.0), mt(tt.size()), ll(tt.size());
  for (std::size_t i = 0; i < tt.size(); ++i) {
    mt[i] = -tt[i];
    ll[i] = -std::log1p(-tt[i]);
  }
  double res;
  auto c = least_squares({one, mt}, uu, &res);
  SingularityFit f;
  f.ell_hat = c[0];
  f.gamma_hat = c[1];
  f.window = win;
  f.residual = res / (1.0 + rms(uu));
  try {
    auto c3 = least_squares({one, mt, ll}, uu);
    f.loglog_suspect = std::fabs(c3[2]) > 0.05;
  } catch (const Error&) {
    f.loglog_suspect = false;
  }
  return f;
}

SingularityFit fit_gamma(const RadialProfile& prof, std::optional<FitWindow> win) {
  auto u = prof.u();
  return fit_gamma(prof.t, u, win.value_or(default_window(prof)));
}

SingularityFit fit_critical(std::span<const double> t, std::span<const double> u, FitWindow win) {
  std::size_t b, e;
  check_window(t, u, win, 2.0, b, e);
  auto tt = slice(t, b, e), uu = slice(u, b, e);
  std::vector<double> one(tt.size(), 1.0), mt(tt.size()), ll(tt.size());
  for (std::size_t i = 0; i < tt.size(); ++i) {
    mt[i] = -tt[i];
    ll[i] = -std::log1p(-tt[i]);
  }
  double res;
  auto c = least_squares({one, mt, ll}, uu, &res);
  SingularityFit f;
  f.ell_hat = c[0];
  f.gamma_hat = c[1];
  f.loglog_coefficient = c[2];
  f.window = win;
  f.residual = res / (1.0 + rms(uu));
  return f;
}

SingularityFit fit_critical(const RadialProfile& prof, std::optional<FitWindow> win) {
  FitWindow w = win.value_or(default_window(prof));
  auto u = prof.u();
  if (prof.branch.kind != BranchKind::LambdaCritical) return fit_critical(prof.t, u, w);
  // Two stages. lambda = ell + c1/s + c2/s^2 (s = 1 - t) gives ell; the
  // algebraic tail c1/s + c2/s^2 is then removed from u before the three
  // regressor fit, since it is nearly collinear with -ln s on finite windows.
  std::size_t b, e;
  check_window(prof.t, prof.w, w, 2.0, b, e);
  std::vector<double> one, s1, s2, lam;
  for (std::size_t i = b; i < e; ++i) {
    double s = 1.0 - prof.t[i];
    one.push_back(1.0);
    s1.push_back(1.0 / s);
    s2.push_back(1.0 / (s * s));
    lam.push_back(prof.w[i]);
  }
  auto c = least_squares({one, s1, s2}, lam);
  std::vector<double> v(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    double s = 1.0 - prof.t[i];
    v[i] = u[i] - c[1] / s - c[2] / (s * s);
  }
  SingularityFit f = fit_critical(prof.t, v, w);
  f.ell_hat = c[0];
  return f;
}

DecayFit fit_decay(std::span<const double> t, std::span<const double> s, FitWindow win, DecayLimit mode,
                   double limit) {
  std::size_t b, e;
  check_window(t, s, win, 1.0, b, e);
  auto tt = slice(t, b, e), ss = slice(s, b, e);
  DecayFit out;
  out.window = win;

  if (mode == DecayLimit::Fitted) {
    // Variable projection: for fixed beta, (L, C) solve a linear problem.
    auto resid = [&](double beta, double* L, double* C) {
      std::vector<double> one(tt.size(), 1.0), ex(tt.size());
      for (std::size_t i = 0; i < tt.size(); ++i) ex[i] = std::exp(beta * (tt[i] - tt.back()));
      double r;
      auto c = least_squares({one, ex}, ss, &r);
      if (L) *L = c[0];
      if (C) *C = c[1] * std::exp(-beta * tt.back());
      return r;
    };
    double span = tt.back() - tt.front();
    double lo = 1e-3 / span, hi = 40.0 / span;
    // Coarse log scan brackets the minimum before Brent refines it.
    double best = lo, fbest = std::numeric_limits<double>::infinity();
    const int K = 200;
    for (int k = 0; k <= K; ++k) {
      double beta = lo * std::pow(hi / lo, static_cast<double>(k) / K);
      double r = resid(beta, nullptr, nullptr);
      if (r < fbest) {
        fbest = r;
        best = beta;
      }
    }
    double f = std::pow(hi / lo, 1.0 / K);
    double beta = brent_minimize([&](double x) { return resid(x, nullptr, nullptr); }, std::max(lo, best / f),
                                 std::min(hi, best * f));
    double L, C;
    out.residual = resid(beta, &L, &C) / (1.0 + rms(ss));
    out.beta_hat = beta;
    out.limit = L;
    out.amplitude = C;
    return out;
  }

  double L = mode == DecayLimit::Known ? limit : 0.0;
  out.limit = L;
  std::vector<double> x, y;
  bool touches = false;
  for (std::size_t i = 0; i < tt.size(); ++i) {
    double d = std::fabs(ss[i] - L);
    if (!(d > 0.0) || !std::isfinite(d)) touches = true;
  }
  if (!touches) {
    // A sign change of s - L also means the series crosses its limit.
    for (std::size_t i = 1; i < tt.size(); ++i)
      if ((ss[i] - L) * (ss[i - 1] - L) < 0.0) touches = true;
  }
  if (touches) {
    out.envelope = true;
    for (std::size_t i = 1; i + 1 < tt.size(); ++i) {
      double a = std::fabs(ss[i - 1] - L), c = std::fabs(ss[i] - L), d = std::fabs(ss[i + 1] - L);
      if (c > 0.0 && c >= a && c >= d) {
        x.push_back(tt[i]);
        y.push_back(std::log(c));
      }
    }
    if (x.size() < 2) throw Error(ErrorKind::InvalidWindow, "envelope has fewer than two local maxima");
  } else {
    for (std::size_t i = 0; i < tt.size(); ++i) {
      x.push_back(tt[i]);
      y.push_back(std::log(std::fabs(ss[i] - L)));
    }
  }
  std::vector<double> one(x.size(), 1.0);
  double r;
  auto c = least_squares({one, x}, y, &r);
  out.beta_hat = c[1];
  out.amplitude = std::exp(c[0]);
  out.residual = r;
  return out;
}

HolderFit holder_exponent(std::span<const double> t, std::span<const double> u, double q, FitWindow win) {
  std::size_t b, e;
  check_window(t, u, win, 3.0, b, e);
  double u1 = interp_linear(t, u, win.t_lo);
  double u2 = interp_linear(t, u, win.t_lo + 1.0);
  double u3 = interp_linear(t, u, win.t_lo + 2.0);
  double d1 = u2 - u1, d2 = u3 - u2;
  double den = d2 - d1;
  // Geometric approach toward r = 0 means d1 and d2 share a sign and shrink.
  if (!(d1 * d2 > 0.0) || !(std::fabs(d1) < std::fabs(d2)) || den == 0.0)
    throw Error(ErrorKind::InvalidWindow, "centre value extrapolation is unstable on this window");
  HolderFit h;
  h.u0 = u1 - d1 * d1 / den;
  h.window = win;
  h.reference_general = 1.0 - 2.0 / q;
  h.reference_radial = (q - 2.0) / (q - 1.0);
  std::vector<double> x, y;
  for (std::size_t i = b; i < e; ++i) {
    double d = std::fabs(u[i] - h.u0);
    if (!(d > 0.0)) continue;
    x.push_back(t[i]);
    y.push_back(std::log(d));
  }
  if (x.size() < 4) throw Error(ErrorKind::InvalidWindow, "too few usable points for the Holder fit");
  std::vector<double> one(x.size(), 1.0);
  double r;
  auto c = least_squares({one, x}, y, &r);
  h.exponent = c[1];
  h.residual = r;
  return h;
}

HolderFit holder_exponent(const RadialProfile& prof, double q, FitWindow win) {
  auto u = prof.u();
  return holder_exponent(prof.t, u, q, win);
}

}  // namespace isosing
