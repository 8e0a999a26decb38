#include "isosing/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "isosing/error.hpp"
#include "isosing/special.hpp"

namespace isosing {

namespace {

void require_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw Error(ErrorKind::InvalidRadius, "radius must be positive, got " + std::to_string(r));
}

double w_inf_const(const ProblemParams& p) {
  // (q/b) ln(q m^{1/q} / (b a^{1/q}))
  return p.q / p.b * (std::log(p.q / p.b) + (std::log(p.m) - std::log(p.a)) / p.q);
}

}  // namespace

double eikonal_constant(const ProblemParams& p) {
  p.validate();
  return w_inf_const(p);
}

double eikonal_winf(const ProblemParams& p, double r) {
  return eikonal_winf_sample(p, r).u;
}

RadialSample eikonal_winf_sample(const ProblemParams& p, double r) {
  p.validate();
  require_radius(r);
  double k = p.q / p.b;
  // log profile is harmonic away from the origin
  return {w_inf_const(p) - k * std::log(r), -k / r, 0.0};
}

double eikonal_wc(const ProblemParams& p, double c, double r) { return eikonal_wc_sample(p, c, r).u; }

RadialSample eikonal_wc_sample(const ProblemParams& p, double c, double r) {
  p.validate();
  if (r < 0.0) throw Error(ErrorKind::InvalidRadius, "radius must be nonnegative");
  double qm = p.q * std::pow(p.m, 1.0 / p.q);
  double ba = p.b * std::pow(p.a, 1.0 / p.q);
  double D = ba * r + qm * std::exp(-p.b * c / p.q);
  double u = p.q / p.b * (std::log(qm) - std::log(D));
  double ur = -p.q / p.b * ba / D;
  double urr = p.q / p.b * ba * ba / (D * D);
  double lap = r > 0.0 ? urr + ur / r : -std::numeric_limits<double>::infinity();
  return {u, ur, lap};
}

double eikonal_residual(const ProblemParams& p, const RadialSample& s) {
  return p.a * std::exp(p.b * s.u) - p.m * abs_pow(s.ur, p.q);
}

double eikonal_residual_rel(const ProblemParams& p, const RadialSample& s) {
  double e = p.a * std::exp(p.b * s.u);
  double g = p.m * abs_pow(s.ur, p.q);
  return (e - g) / (e + g);
}

double emden_critical_exact(const ProblemParams& p, double r) { return emden_critical_exact_sample(p, r).u; }

RadialSample emden_critical_exact_sample(const ProblemParams& p, double r) {
  if (std::fabs(p.a * p.b - 2.0) > 1e-12)
    throw Error(ErrorKind::PreconditionViolation, "exact critical Emden profile needs a*b = 2");
  return psi_kappa_sample(p, 0.0, r);
}

RadialSample psi_kappa_sample(const ProblemParams& p, double kappa, double r) {
  require_radius(r);
  if (r > 1.0) throw Error(ErrorKind::InvalidRadius, "psi_kappa is defined for r <= 1");
  double t = std::log(r);
  double s = 1.0 - t;
  double k = 2.0 / p.b;
  double u = k * (-t - std::log(s)) + kappa;
  double ut = k * (-1.0 + 1.0 / s);
  double utt = k / (s * s);
  return {u, ut / r, utt / (r * r)};
}

ValueResidual psi_kappa(const ProblemParams& p, double kappa, double r) {
  RadialSample s = psi_kappa_sample(p, kappa, r);
  double lt = 1.0 - std::log(r);
  double res = (p.a * std::exp(p.b * kappa) - 2.0 / p.b) / (r * r * lt * lt);
  return {s.u, res};
}

std::pair<double, double> kappa_bounds(const ProblemParams& p) {
  double l = std::log(2.0 / (p.a * p.b)) / p.b;
  return {std::max(0.0, l), std::min(0.0, l)};
}

double eta_profile(double q, double r) { return eta_sample(q, r).u; }

RadialSample eta_sample(double q, double r) {
  if (q == 2.0) throw Error(ErrorKind::PreconditionViolation, "eta needs q != 2");
  if (r < 0.0 || r > 1.0) throw Error(ErrorKind::InvalidRadius, "eta is defined on [0, 1]");
  double d = 2.0 - q;
  double rp = r == 0.0 ? (d > 0 ? 0.0 : std::numeric_limits<double>::infinity()) : std::pow(r, d);
  double u = (1.0 - rp) / (d * d);
  if (r == 0.0) return {u, 0.0, -std::numeric_limits<double>::infinity()};
  double ur = -std::pow(r, 1.0 - q) / d;
  return {u, ur, -std::pow(r, -q)};
}

RadialSample subsol_hA_sample(const ProblemParams& p, double gamma, double A, double r) {
  if (!(gamma > 0.0 && gamma < 2.0 / p.b))
    throw Error(ErrorKind::PreconditionViolation, "h_A needs 0 < gamma < 2/b");
  if (!(A > 0.0)) throw Error(ErrorKind::PreconditionViolation, "h_A needs A > 0");
  require_radius(r);
  const EigenData& e = eigen_data();
  double th = 2.0 - p.b * gamma;
  double rt = std::pow(r, th);
  double f = e.phi1(r), f1 = e.phi1_r(r);
  double u = -gamma * std::log(r) - A * rt * f;
  double ur = -gamma / r - A * (th * rt / r * f + rt * f1);
  // Lap(r^th phi1) = th^2 r^{th-2} phi1 + 2 th r^{th-1} phi1' - lambda1 r^th phi1
  double lap = -A * (th * th * rt / (r * r) * f + 2.0 * th * rt / r * f1 - e.lambda1 * rt * f);
  return {u, ur, lap};
}

ValueResidual subsol_hA(const ProblemParams& p, double gamma, double A, double r) {
  RadialSample s = subsol_hA_sample(p, gamma, A, r);
  const EigenData& e = eigen_data();
  double th = 2.0 - p.b * gamma;
  double rt = std::pow(r, th);
  double f = e.phi1(r);
  // Factored form r^{th-2}[A th^2 phi1 + 2A th r phi1' - A lambda1 r^2 phi1 + a e^{-bA r^th phi1}]
  double br = A * th * th * f + 2.0 * A * th * r * e.phi1_r(r) - A * e.lambda1 * r * r * f +
              p.a * std::exp(-p.b * A * rt * f);
  return {s.u, std::pow(r, th - 2.0) * br};
}

double hA_threshold(const ProblemParams& p, double gamma, int grid) {
  std::vector<double> rs;
  rs.reserve(grid);
  int half = grid / 2;
  for (int i = 0; i < half; ++i) rs.push_back(std::exp(std::log(1e-6) * (1.0 - double(i) / half) + std::log(0.5) * (double(i) / half)));
  for (int i = 0; i < grid - half; ++i) rs.push_back(0.5 + (0.5 - 1e-6) * double(i) / (grid - half - 1));
  auto ok = [&](double A) {
    for (double r : rs)
      if (subsol_hA(p, gamma, A, r).residual < 0.0) return false;
    return true;
  };
  double lo = 0.0, hi = 1.0;
  while (ok(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) return lo;
  }
  if (lo == 0.0) {
    double probe = hi;
    while (!ok(probe) && probe > 1e-300) probe *= 0.5;
    lo = probe;
    hi = probe * 2.0;
  }
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

namespace {

// Bracket of the supersolution inequality divided by R^2 (q < 2) or R^q
// (q > 2), as a function of s = r/R in [0, 1].
double supersol_bracket(const ProblemParams& p, double R, double s) {
  double q = p.q, b = p.b, m = p.m;
  double om = std::max(0.0, 1.0 - s * s);
  if (q < 2.0) return 8.0 / b + m * std::pow(4.0 * s / b, q) * std::pow(R, 2.0 - q) * std::pow(om, 2.0 - q);
  return 4.0 * q / b * std::pow(R, q - 2.0) * std::pow(om, q - 2.0) + m * std::pow(2.0 * q * s / b, q);
}

}  // namespace

SupersolData supersol_apriori_data(const ProblemParams& p, double R) {
  p.validate();
  if (!(R > 0.0)) throw Error(ErrorKind::InvalidRadius, "R must be positive");
  const int n = 2048;
  int best = 0;
  double fbest = -1.0;
  for (int i = 0; i <= n; ++i) {
    double f = supersol_bracket(p, R, double(i) / n);
    if (f > fbest) {
      fbest = f;
      best = i;
    }
  }
  double lo = double(std::max(0, best - 1)) / n, hi = double(std::min(n, best + 1)) / n;
  auto neg = [&](double s) { return -supersol_bracket(p, R, s); };
  auto res = boost::math::tools::brent_find_minima(neg, lo, hi, 52);
  double fmax = std::max(fbest, -res.second);
  SupersolData d{};
  d.R = R;
  d.Lambda_star = 1.01 * fmax;
  if (p.q < 2.0) {
    d.lambda = 2.0 / p.b;
    d.mu = 2.0 / p.b * std::log(R) + std::log(d.Lambda_star / p.a) / p.b;
  } else {
    d.lambda = p.q / p.b;
    d.mu = p.q / p.b * std::log(R) + std::log(d.Lambda_star / p.a) / p.b;
  }
  d.center_value = -2.0 * d.lambda * std::log(R) + d.mu;
  return d;
}

RadialSample supersol_apriori_sample(const SupersolData& d, double r) {
  if (!(r >= 0.0 && r < d.R)) throw Error(ErrorKind::InvalidRadius, "supersolution needs 0 <= r < R");
  double D = d.R * d.R - r * r;
  double u = -d.lambda * std::log(D) + d.mu;
  double ur = 2.0 * d.lambda * r / D;
  double lap = 4.0 * d.lambda * d.R * d.R / (D * D);
  return {u, ur, lap};
}

ValueResidual supersol_apriori(const ProblemParams& p, double R, double r) {
  SupersolData d = supersol_apriori_data(p, R);
  if (r >= R) throw Error(ErrorKind::InvalidRadius, "supersolution needs r < R");
  RadialSample s = supersol_apriori_sample(d, r);
  return {s.u, residual_strong(p, s)};
}

double apriori_bound(const ProblemParams& p, double r) {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::InvalidRadius, "a priori bound needs 0 < r < 1");
  double R = std::min(r, 1.0 - r);
  return supersol_apriori_data(p, R).center_value;
}

double residual_strong(const ProblemParams& p, double u, double grad_norm, double lap) {
  double e = -lap + p.a * std::exp(p.b * u) - p.m * abs_pow(grad_norm, p.q);
  if (!std::isfinite(u) || !std::isfinite(grad_norm) || !std::isfinite(lap) || !std::isfinite(e))
    throw Error(ErrorKind::NumericalFault, "non-finite input to residual");
  return e;
}

double residual_strong(const ProblemParams& p, const RadialSample& s) {
  return residual_strong(p, s.u, std::fabs(s.ur), s.lap);
}

double emden_residual(const ProblemParams& p, const RadialSample& s) {
  double e = -s.lap + p.a * std::exp(p.b * s.u);
  if (!std::isfinite(e)) throw Error(ErrorKind::NumericalFault, "non-finite Emden residual");
  return e;
}

ResidualSummary residual_strong(const ProblemParams& p, const std::vector<RadialSample>& field) {
  ResidualSummary out{{}, std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), 0, 0};
  out.values.reserve(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    double e = residual_strong(p, field[i]);
    out.values.push_back(e);
    if (e < out.min) {
      out.min = e;
      out.argmin = i;
    }
    if (e > out.max) {
      out.max = e;
      out.argmax = i;
    }
  }
  return out;
}

ClosedForm ClosedForm::eikonal_wc(const ProblemParams& p, double c) {
  ClosedForm f(Kind::EikonalWc, p);
  f.c_ = c;
  return f;
}
ClosedForm ClosedForm::eikonal_winf(const ProblemParams& p) { return ClosedForm(Kind::EikonalWinf, p); }
ClosedForm ClosedForm::emden_critical_exact(const ProblemParams& p) {
  if (std::fabs(p.a * p.b - 2.0) > 1e-12)
    throw Error(ErrorKind::PreconditionViolation, "exact critical Emden profile needs a*b = 2");
  return ClosedForm(Kind::EmdenCriticalExact, p);
}
ClosedForm ClosedForm::eta(const ProblemParams& p) { return ClosedForm(Kind::EtaProfile, p); }
ClosedForm ClosedForm::psi_kappa(const ProblemParams& p, double kappa) {
  ClosedForm f(Kind::PsiKappa, p);
  f.kappa_ = kappa;
  return f;
}
ClosedForm ClosedForm::subsol_hA(const ProblemParams& p, double gamma, double A) {
  if (!(gamma > 0.0 && gamma < 2.0 / p.b))
    throw Error(ErrorKind::PreconditionViolation, "h_A needs 0 < gamma < 2/b");
  ClosedForm f(Kind::SubsolHA, p);
  f.gamma_ = gamma;
  f.A_ = A;
  return f;
}
ClosedForm ClosedForm::supersol_apriori(const ProblemParams& p, double R) {
  ClosedForm f(Kind::SupersolAPriori, p);
  f.sup_ = supersol_apriori_data(p, R);
  return f;
}

RadialSample ClosedForm::eval(double r) const {
  switch (kind_) {
    case Kind::EikonalWc: return eikonal_wc_sample(p_, c_, r);
    case Kind::EikonalWinf: return eikonal_winf_sample(p_, r);
    case Kind::EmdenCriticalExact: return emden_critical_exact_sample(p_, r);
    case Kind::EtaProfile: return eta_sample(p_.q, r);
    case Kind::PsiKappa: return psi_kappa_sample(p_, kappa_, r);
    case Kind::SubsolHA: return subsol_hA_sample(p_, gamma_, A_, r);
    case Kind::SupersolAPriori: return supersol_apriori_sample(sup_, r);
  }
  throw Error(ErrorKind::InvalidInput, "unknown closed form");
}

std::pair<double, double> ClosedForm::domain() const {
  switch (kind_) {
    case Kind::SupersolAPriori: return {0.0, sup_.R * (1.0 - 1e-6)};
    case Kind::EikonalWc:
    case Kind::EikonalWinf: return {1e-8, 1.0};
    default: return {1e-6, 1.0 - 1e-6};
  }
}

ClosedForm::Operator ClosedForm::natural_operator() const {
  switch (kind_) {
    case Kind::EmdenCriticalExact:
    case Kind::PsiKappa:
    case Kind::SubsolHA: return Operator::Emden;
    default: return Operator::Full;
  }
}

const char* to_string(ClosedForm::Kind k) {
  switch (k) {
    case ClosedForm::Kind::EikonalWc: return "EikonalWc";
    case ClosedForm::Kind::EikonalWinf: return "EikonalWinf";
    case ClosedForm::Kind::EmdenCriticalExact: return "EmdenCriticalExact";
    case ClosedForm::Kind::EtaProfile: return "EtaProfile";
    case ClosedForm::Kind::PsiKappa: return "PsiKappa";
    case ClosedForm::Kind::SubsolHA: return "SubsolHA";
    case ClosedForm::Kind::SupersolAPriori: return "SupersolAPriori";
  }
  return "Unknown";
}

}  // namespace isosing
