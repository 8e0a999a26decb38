#include "isosing/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "isosing/error.hpp"
#include "isosing/fitting.hpp"

namespace isosing {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

double exp_sinh_left(const std::function<double(double)>& f, double T0) {
  // exp-sinh handles (a, inf); reflect s = T0 - t.
  // Far-left samples can hit inf * 0 once an exponential weight underflows;
  // those contribute nothing.
  boost::math::quadrature::exp_sinh<double> es;
  try {
    return es.integrate(
        [&](double s) {
          double t = T0 - s;
          double v = f(t);
          return std::isfinite(v) || t > -700.0 ? v : 0.0;
        },
        0.0, kInf);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::NumericalFault, std::string("tail quadrature failed: ") + e.what());
  }
}

struct LogFit {
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;
  double rel_residual = 0.0;
  bool with_log = false;
};

// ln|y| ~ c0 + c1 t (+ c2 ln(1-t)); relative residual = rms residual over the
// spread of ln|y| (1 when the data are flat and the fit is not exact).
LogFit fit_log_integrand(const std::vector<double>& t, const std::vector<double>& y, bool with_log) {
  std::vector<double> one(t.size(), 1.0), tt = t, ll(t.size()), ly(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    ll[i] = std::log1p(-t[i]);
    ly[i] = std::log(std::fabs(y[i]));
  }
  double res;
  std::vector<double> c = with_log ? least_squares({one, tt, ll}, ly, &res) : least_squares({one, tt}, ly, &res);
  double mean = 0.0;
  for (double v : ly) mean += v;
  mean /= static_cast<double>(ly.size());
  double sd = 0.0;
  for (double v : ly) sd += (v - mean) * (v - mean);
  sd = std::sqrt(sd / static_cast<double>(ly.size()));
  LogFit f;
  f.c0 = c[0];
  f.c1 = c[1];
  f.with_log = with_log;
  if (with_log) f.c2 = c[2];
  f.rel_residual = sd > 0.0 ? res / sd : (res > 0.0 ? 1.0 : 0.0);
  return f;
}

bool tail_decays(const LogFit& f) {
  if (f.c1 > 0.0) return true;
  return f.with_log && std::fabs(f.c1) <= 0.05 && f.c2 < -1.0;
}

double integrate_fit_tail(const LogFit& f, double sign, double T0) {
  return sign * exp_sinh_left([&](double t) { return std::exp(f.c0 + f.c1 * t + f.c2 * std::log1p(-t)); }, T0);
}

// Log-linear model ln|y| = sum c_k g_k(t) fitted on the deepest quarter of the
// grid and integrated over (-inf, T0]. The critical absorption term decays
// algebraically, a e^{b l + b C/(1-t)} (1-t)^{-2}, so it gets its own basis.
struct TailModel {
  bool algebraic = false;
  std::vector<double> c;
  double rel_residual = 0.0;
  double operator()(double t) const {
    if (algebraic) return std::exp(c[0] + c[1] * std::log1p(-t) + c[2] / (1.0 - t));
    return std::exp(c[0] + c[1] * t);
  }
  bool decays() const { return algebraic ? c[1] < -1.0 : c[1] > 0.0; }
};

TailModel fit_tail_model(const std::vector<double>& t, const std::vector<double>& y, bool algebraic) {
  std::vector<double> one, g1, g2, ly;
  for (std::size_t i = 0; i < t.size(); ++i) {
    one.push_back(1.0);
    g1.push_back(algebraic ? std::log1p(-t[i]) : t[i]);
    g2.push_back(1.0 / (1.0 - t[i]));
    ly.push_back(std::log(y[i]));
  }
  TailModel m;
  m.algebraic = algebraic;
  double res;
  m.c = algebraic ? least_squares({one, g1, g2}, ly, &res) : least_squares({one, g1}, ly, &res);
  // relative to the size of the integrand's logarithm, so flat data are not penalised
  double scale = 0.0;
  for (double v : ly) scale = std::max(scale, std::fabs(v));
  m.rel_residual = res / (1.0 + scale);
  return m;
}

// Integral over (-inf, T0] of a nonnegative integrand sampled on t, fitted on
// the strictly positive samples of the deepest quarter. Negligible integrands
// (below 1e-14 of their peak there) have no tail worth extrapolating.
double tail_integral(const std::vector<double>& t, const std::vector<double>& y, bool algebraic, double fallback,
                     double* rel_residual) {
  const std::size_t q4 = std::max<std::size_t>(8, t.size() / 4);
  double peak = 0.0;
  for (double v : y) peak = std::max(peak, std::fabs(v));
  std::vector<double> tt, yy;
  double deep = 0.0;
  for (std::size_t i = 0; i < q4; ++i) {
    if (y[i] < 0.0) throw Error(ErrorKind::UnreliableTail, "tail integrand is not one-signed", fallback);
    deep = std::max(deep, y[i]);
    if (y[i] > 0.0) {
      tt.push_back(t[i]);
      yy.push_back(y[i]);
    }
  }
  if (deep <= 1e-14 * peak) return 0.0;
  if (2 * yy.size() < q4) throw Error(ErrorKind::UnreliableTail, "tail integrand vanishes on the window", fallback);
  TailModel m = fit_tail_model(tt, yy, algebraic);
  *rel_residual = std::max(*rel_residual, m.rel_residual);
  if (m.rel_residual > 1e-2 || !m.decays())
    throw Error(ErrorKind::UnreliableTail, "reaction tail fit is unreliable or does not decay", fallback);
  return exp_sinh_left(m, t.front());
}

// Rows of a radial-type integrand: u-part (-ubar Lap zeta e^{2t}), absorption
// A zeta and gradient B zeta, each carrying the e^{2t} area weight. A and B are
// extrapolated separately; an exactly balanced (eikonal) reaction is
// recognised first and contributes nothing below T0.
MassEstimate mass_from_rows(const std::vector<double>& t, const std::vector<double>& ubar,
                            const std::vector<double>& absorption, const std::vector<double>& gradient,
                            const ProblemParams& p, const Branch& br, double w0, TestFunction zeta) {
  const std::size_t n = t.size();
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    double r = std::exp(t[i]);
    f[i] = -ubar[i] * test_lap_zeta(zeta, r) * r * r + absorption[i] - gradient[i];
  }
  MassEstimate m;
  m.zeta = zeta;
  m.partial = trapezoid(t, f);
  {
    std::vector<double> size(n);
    for (std::size_t i = 0; i < n; ++i) size[i] = 64.0 * kEps * (absorption[i] + gradient[i]);
    m.roundoff = trapezoid(t, size);
    if (m.roundoff > 1e-3 * std::max(1.0, std::fabs(m.partial)))
      throw Error(ErrorKind::NumericalFault,
                  "absorption and gradient terms cancel below double precision near T0; use a shallower T0",
                  m.roundoff);
  }
  const double T0 = t.front();
  m.tail_u = exp_sinh_left(
      [&](double s) {
        double r = std::exp(s);
        return -(w0 - br.S(p, s)) * test_lap_zeta(zeta, r) * r * r;
      },
      T0);
  const double so_far = m.partial + m.tail_u;

  const std::size_t q4 = std::max<std::size_t>(8, n / 4);
  bool balanced = true;
  for (std::size_t i = 0; i < q4; ++i)
    if (std::fabs(absorption[i] - gradient[i]) > 1e-12 * (absorption[i] + gradient[i])) balanced = false;
  if (balanced) {
    m.tail_balanced = true;
    m.mass = so_far;
    return m;
  }
  const bool critical = br.kind == BranchKind::LambdaCritical;
  m.tail_reaction = tail_integral(t, absorption, critical, so_far, &m.tail_fit_residual) -
                    tail_integral(t, gradient, false, so_far, &m.tail_fit_residual);
  m.mass = so_far + m.tail_reaction;
  return m;
}

}  // namespace

int test_function_power(TestFunction z) { return z == TestFunction::Cubic ? 3 : 4; }

double test_zeta(TestFunction z, double r) { return std::pow(1.0 - r * r, test_function_power(z)); }

double test_lap_zeta(TestFunction z, double r) {
  const double k = test_function_power(z);
  const double s = 1.0 - r * r;
  return -4.0 * k * std::pow(s, k - 1.0) + 4.0 * k * (k - 1.0) * r * r * std::pow(s, k - 2.0);
}

MassEstimate distributional_mass(const RadialProfile& prof, TestFunction zeta) {
  prof.check();
  const ProblemParams& p = prof.params;
  const double m_eff = prof.m_eff();
  const std::size_t n = prof.size();
  std::vector<double> u = prof.u(), ut = prof.u_t(), absorption(n), gradient(n);
  for (std::size_t i = 0; i < n; ++i) {
    double t = prof.t[i];
    double z = test_zeta(zeta, std::exp(t));
    double A = p.a * std::exp(prof.branch.absorption_exponent(p, t) + p.b * prof.w[i]);
    double B = m_eff * std::exp((2.0 - p.q) * t) * abs_pow(ut[i], p.q);
    absorption[i] = A * z;
    gradient[i] = B * z;
  }
  return mass_from_rows(prof.t, u, absorption, gradient, p, prof.branch, prof.w.front(), zeta);
}

MassEstimate distributional_mass(const Field2D& field, TestFunction zeta) {
  field.check();
  const ProblemParams& p = field.params;
  const std::size_t n = field.n_t();
  const int J = field.n_theta;
  const double dth = 2.0 * std::numbers::pi / J;
  std::vector<double> ubar = field.mean_u(), absorption(n), gradient(n);
  for (std::size_t i = 0; i < n; ++i) {
    double t = field.t[i];
    double z = test_zeta(zeta, std::exp(t));
    double E = field.branch.absorption_exponent(p, t), St = field.branch.S_t(p, t);
    double ge = std::exp((2.0 - p.q) * t);
    double sa = 0.0, sb = 0.0;
    for (int j = 0; j < J; ++j) {
      double A = p.a * std::exp(E + p.b * field.at(i, j));
      double pu = field.w_t[i * static_cast<std::size_t>(J) + static_cast<std::size_t>(j)] - St;
      double wth = (field.at(i, (j + 1) % J) - field.at(i, (j + J - 1) % J)) / (2.0 * dth);
      double B = p.m * ge * std::pow(pu * pu + wth * wth, p.q / 2.0);
      sa += A;
      sb += B;
    }
    absorption[i] = sa / J * z;
    gradient[i] = sb / J * z;
  }
  return mass_from_rows(field.t, ubar, absorption, gradient, p, field.branch, field.mean_w().front(), zeta);
}

const char* to_string(Integrability f) {
  switch (f) {
    case Integrability::Integrable: return "Integrable";
    case Integrability::NotIntegrable: return "NotIntegrable";
    case Integrability::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

namespace {

IntegrandTail classify_tail(const std::vector<double>& t, const std::vector<double>& y, bool critical) {
  IntegrandTail out;
  out.partial = trapezoid(t, y);
  std::size_t q4 = std::max<std::size_t>(8, t.size() / 4);
  std::vector<double> tt(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(q4)),
      yy(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(q4));
  for (double v : yy)
    if (!(v > 0.0)) {
      // The integrand is identically zero near T0 (e.g. a gradient term on a
      // flat profile): nothing to extrapolate.
      out.flag = Integrability::Integrable;
      out.exponent = kInf;
      out.total = out.partial;
      return out;
    }
  LogFit lf = fit_log_integrand(tt, yy, critical);
  out.exponent = lf.c1;
  out.fit_residual = lf.rel_residual;
  if (critical) out.log_power = lf.c2;
  if (lf.rel_residual >= 0.2) throw Error(ErrorKind::UnreliableTail, "integrand tail fit is unreliable", out.partial);
  if (critical && std::fabs(lf.c1) <= 0.05) {
    // No exponential rate: t and ln(1-t) are nearly collinear on the window,
    // so the power of (1-t) comes from the algebraic model instead.
    TailModel am = fit_tail_model(tt, yy, true);
    out.log_power = am.c[1];
    out.fit_residual = am.rel_residual;
    if (am.c[1] < -1.05) {
      out.flag = Integrability::Integrable;
      out.total = out.partial + exp_sinh_left(am, t.front());
    } else {
      out.flag = am.c[1] > -0.95 ? Integrability::NotIntegrable : Integrability::Inconclusive;
    }
    return out;
  }
  if (lf.c1 > 0.05) {
    out.flag = Integrability::Integrable;
  } else if (lf.c1 < -0.05) {
    out.flag = Integrability::NotIntegrable;
  } else if (critical && lf.c2 < -1.05) {
    out.flag = Integrability::Integrable;
  } else if (critical && lf.c2 > -0.95) {
    out.flag = Integrability::NotIntegrable;
  } else {
    out.flag = Integrability::Inconclusive;
  }
  if (out.flag == Integrability::Integrable && tail_decays(lf))
    out.total = out.partial + integrate_fit_tail(lf, 1.0, t.front());
  return out;
}

}  // namespace

IntegrabilityReport integrability_report(const RadialProfile& prof) {
  prof.check();
  const ProblemParams& p = prof.params;
  const std::size_t n = prof.size();
  std::vector<double> ut = prof.u_t(), ye(n), yg(n);
  for (std::size_t i = 0; i < n; ++i) {
    double t = prof.t[i];
    ye[i] = std::exp(prof.branch.absorption_exponent(p, t) + p.b * prof.w[i]);
    yg[i] = std::exp((2.0 - p.q) * t) * abs_pow(ut[i], p.q);
  }
  bool critical = prof.branch.kind == BranchKind::LambdaCritical;
  IntegrabilityReport rep;
  rep.exp_term = classify_tail(prof.t, ye, critical);
  rep.grad_term = classify_tail(prof.t, yg, critical);
  return rep;
}

QuadratureIdentity quadrature_identity_check(double T0) {
  if (!(T0 < 0.0)) throw Error(ErrorKind::InvalidParameter, "T0 must be negative");
  auto f = [](double t) { return 1.0 / ((1.0 - t) * (1.0 - t)); };
  double err;
  double trunc = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, T0, 0.0, 15, 1e-14, &err);
  QuadratureIdentity q;
  const double two_pi = 2.0 * std::numbers::pi;
  q.truncated = two_pi * trunc;
  q.tail = two_pi / (1.0 - T0);
  q.value = q.truncated + q.tail;
  q.unit_integral = exp_sinh_left(f, 0.0);
  return q;
}

Curve curve_u(const RadialProfile& prof) { return {prof.t, prof.u()}; }

Curve curve_from(const std::vector<double>& t, const std::function<double(double)>& u_of_r) {
  Curve c{t, std::vector<double>(t.size())};
  for (std::size_t i = 0; i < t.size(); ++i) c.v[i] = u_of_r(std::exp(t[i]));
  return c;
}

SandwichMargins sandwich_check(const Curve& u, const Curve& lower, const Curve& upper, std::optional<FitWindow> window) {
  for (const Curve* c : {&u, &lower, &upper})
    if (c->t.size() != c->v.size() || c->t.size() < 4) throw Error(ErrorKind::InvalidInput, "curve needs >= 4 samples");
  double lo = std::max({u.t.front(), lower.t.front(), upper.t.front()});
  double hi = std::min({u.t.back(), lower.t.back(), upper.t.back()});
  if (window) {
    lo = std::max(lo, window->t_lo);
    hi = std::min(hi, window->t_hi);
  }
  if (!(hi > lo)) throw Error(ErrorKind::InvalidInput, "sandwich grids do not overlap");
  std::vector<double> tq, uq;
  for (std::size_t i = 0; i < u.t.size(); ++i)
    if (u.t[i] >= lo && u.t[i] <= hi) {
      tq.push_back(u.t[i]);
      uq.push_back(u.v[i]);
    }
  if (tq.empty()) throw Error(ErrorKind::InvalidInput, "no grid point in the sandwich overlap");
  auto resample = [&](const Curve& c) {
    if (c.t == u.t) {
      std::vector<double> out;
      for (std::size_t i = 0; i < u.t.size(); ++i)
        if (u.t[i] >= lo && u.t[i] <= hi) out.push_back(c.v[i]);
      return out;
    }
    return pchip(c.t, c.v, tq);
  };
  std::vector<double> lq = resample(lower), hq = resample(upper);
  SandwichMargins m{kInf, kInf, 0.0, 0.0};
  for (std::size_t i = 0; i < tq.size(); ++i) {
    double a = uq[i] - lq[i], b = hq[i] - uq[i];
    if (a < m.lower) {
      m.lower = a;
      m.t_lower = tq[i];
    }
    if (b < m.upper) {
      m.upper = b;
      m.t_upper = tq[i];
    }
  }
  return m;
}

const char* to_string(Certification c) {
  switch (c) {
    case Certification::Supersolution: return "Supersolution";
    case Certification::Subsolution: return "Subsolution";
    case Certification::Neither: return "Neither";
  }
  return "Neither";
}

namespace {

CertifyResult decide(const std::vector<double>& res, const std::vector<double>& where, double boundary, double datum,
                     double tol) {
  CertifyResult c;
  c.tolerance = tol;
  c.boundary_value = boundary;
  c.min_residual = kInf;
  c.max_residual = -kInf;
  double rmin = 0.0, rmax = 0.0;
  for (std::size_t i = 0; i < res.size(); ++i) {
    if (res[i] < c.min_residual) {
      c.min_residual = res[i];
      rmin = where[i];
    }
    if (res[i] > c.max_residual) {
      c.max_residual = res[i];
      rmax = where[i];
    }
  }
  bool super_ok = c.min_residual >= -tol, sub_ok = c.max_residual <= tol;
  bool super_strict = c.max_residual > tol || boundary > datum;
  bool sub_strict = c.min_residual < -tol || boundary < datum;
  if (super_ok && super_strict && boundary >= datum) {
    c.verdict = Certification::Supersolution;
    c.worst_margin = c.min_residual;
    c.worst_r = rmin;
  } else if (sub_ok && sub_strict && boundary <= datum) {
    c.verdict = Certification::Subsolution;
    c.worst_margin = c.max_residual;
    c.worst_r = rmax;
  } else {
    c.verdict = Certification::Neither;
    bool neg = std::fabs(c.min_residual) >= std::fabs(c.max_residual);
    c.worst_margin = neg ? c.min_residual : c.max_residual;
    c.worst_r = neg ? rmin : rmax;
  }
  return c;
}

}  // namespace

CertifyResult certify_subsuper(const ClosedForm& cand, double datum, int grid, double tol) {
  if (grid < 2) throw Error(ErrorKind::InvalidParameter, "certification grid needs >= 2 points");
  auto [lo, hi] = cand.domain();
  const ProblemParams& p = cand.params();
  bool emden = cand.natural_operator() == ClosedForm::Operator::Emden;
  std::vector<double> res(static_cast<std::size_t>(grid)), rr(res.size());
  for (int i = 0; i < grid; ++i) {
    double s = static_cast<double>(i) / (grid - 1);
    double r = lo > 0.0 ? lo * std::pow(hi / lo, s) : hi * s;
    RadialSample x = cand.eval(r);
    double A = p.a * std::exp(p.b * x.u);
    double B = emden ? 0.0 : p.m * abs_pow(x.ur, p.q);
    double e = -x.lap + A - B;
    if (!std::isfinite(e)) throw Error(ErrorKind::NumericalFault, "non-finite residual during certification");
    res[static_cast<std::size_t>(i)] = e / (1.0 + std::fabs(x.lap) + A + B);
    rr[static_cast<std::size_t>(i)] = r;
  }
  // The a priori supersolution blows up on the sphere of radius R.
  double boundary = cand.kind() == ClosedForm::Kind::SupersolAPriori ? kInf : cand.value(1.0);
  return decide(res, rr, boundary, datum, tol);
}

CertifyResult certify_subsuper(const RadialProfile& prof, double boundary_value, double datum, double tol) {
  prof.check();
  SolverConfig cfg;
  cfg.n_points = static_cast<int>(prof.size());
  cfg.T0 = prof.t.front();
  std::vector<double> R = discrete_residual(prof, boundary_value, cfg);
  // The boundary row measures w(0) - boundary_value; drop it from the sign test.
  R.pop_back();
  std::vector<double> rr(R.size());
  for (std::size_t i = 0; i < rr.size(); ++i) rr[i] = std::exp(prof.t[i]);
  return decide(R, rr, prof.u().back(), datum, tol);
}

GradientCensus gradient_bound_census(const RadialProfile& prof, std::optional<FitWindow> window) {
  prof.check();
  GradientCensus g;
  g.window = window.value_or(default_window(prof));
  std::vector<double> ut = prof.u_t();
  const std::size_t n = prof.size();
  for (std::size_t i = 0; i < n; ++i) {
    double v = std::fabs(ut[i]);  // r |u'| = |u_t|
    if (v > g.sup_r_ur) {
      g.sup_r_ur = v;
      g.t_at_sup = prof.t[i];
    }
    if (i < n / 2) g.sup_r_ur_inner = std::max(g.sup_r_ur_inner, v);
  }
  const ProblemParams& p = prof.params;
  if (p.q > 2.0) {
    double e = 1.0 / (p.q - 1.0);
    g.lower_reference = std::pow((p.q - 2.0) / (prof.m_eff() * (p.q - 1.0)), e);
    double inf = kInf;
    for (std::size_t i = 0; i < n; ++i) {
      double t = prof.t[i];
      if (t < g.window.t_lo || t > g.window.t_hi) continue;
      // |u'| r^{1/(q-1)} = |u_t| e^{-t} e^{t/(q-1)}
      inf = std::min(inf, std::fabs(ut[i]) * std::exp(t * (e - 1.0)));
    }
    g.inf_lower = inf;
  }
  return g;
}

AprioriMargin apriori_margin(const RadialProfile& prof, int stride) {
  prof.check();
  if (stride < 1) throw Error(ErrorKind::InvalidParameter, "stride must be >= 1");
  AprioriMargin a{kInf, 0.0, 0};
  std::vector<double> u = prof.u();
  for (std::size_t i = 0; i < prof.size(); i += static_cast<std::size_t>(stride)) {
    double r = std::exp(prof.t[i]);
    if (!(r > 0.0 && r < 1.0)) continue;
    double m = apriori_bound(prof.params, r) - u[i];
    ++a.checked;
    if (m < a.margin) {
      a.margin = m;
      a.t_worst = prof.t[i];
    }
  }
  return a;
}

double supercritical_lower_barrier(const ProblemParams& p, double r) {
  double K = p.b >= 2.0 ? 1.0 : 2.0 / p.b;
  return 2.0 / p.b * std::log(1.0 / r) - K * std::log1p(-std::log(r));
}

double supercritical_upper_barrier(const ProblemParams& p, double r) {
  double L = std::log(p.b / (p.q * std::pow(p.m, 1.0 / p.q)));
  return p.q / p.b * std::log(1.0 / r) + p.q / p.b * (std::max(L, 0.0) - L);
}

}  // namespace isosing
