#include "isosing/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isosing/error.hpp"
#include "isosing/model.hpp"
#include "isosing/special.hpp"
#include "closure.hpp"

namespace isosing {

void SolverConfig::validate() const {
  if (!(T0 < -1.0) || !std::isfinite(T0)) throw Error(ErrorKind::InvalidParameter, "T0 must be < -1");
  if (n_points < 64) throw Error(ErrorKind::InvalidParameter, "n_points must be >= 64");
  if (!(newton_tol > 0.0)) throw Error(ErrorKind::InvalidParameter, "newton_tol must be positive");
  if (newton_max_iter < 1) throw Error(ErrorKind::InvalidParameter, "newton_max_iter must be >= 1");
  if (!(damping > 0.0 && damping < 1.0)) throw Error(ErrorKind::InvalidParameter, "damping must lie in (0,1)");
  if (continuation_steps < 1) throw Error(ErrorKind::InvalidParameter, "continuation_steps must be >= 1");
  if (!(ivp_rtol > 0.0) || !(ivp_atol > 0.0)) throw Error(ErrorKind::InvalidParameter, "IVP tolerances must be positive");
  if (truncation_s && !(*truncation_s > 0.0)) throw Error(ErrorKind::InvalidParameter, "truncation_s must be positive");
}

std::vector<double> RadialProfile::r() const {
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = std::exp(t[i]);
  return out;
}

std::vector<double> RadialProfile::u() const {
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = w[i] - branch.S(params, t[i]);
  return out;
}

std::vector<double> RadialProfile::u_t() const {
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = w_t[i] - branch.S_t(params, t[i]);
  return out;
}

std::vector<double> RadialProfile::u_r() const {
  std::vector<double> out = u_t();
  for (std::size_t i = 0; i < t.size(); ++i) out[i] /= std::exp(t[i]);
  return out;
}

void RadialProfile::check() const {
  if (t.size() < 2 || w.size() != t.size() || w_t.size() != t.size())
    throw Error(ErrorKind::InvalidInput, "profile needs at least two samples and equal column lengths");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i]) || !std::isfinite(w[i]) || !std::isfinite(w_t[i]))
      throw Error(ErrorKind::InvalidInput, "profile holds a non-finite value");
    if (i > 0 && !(t[i] > t[i - 1])) throw Error(ErrorKind::InvalidInput, "profile grid is not increasing");
  }
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Discrete problem on a uniform grid t_i = T0 + i h, i = 0..n-1, t_{n-1} = 0.
//   row 0:      ghost-point closure w_{-1} = w_1 - 2h g(w_0)
//   rows 1..n-2: -w_tt + S'' + a e^{E(t)} e^{bw} - G(t, w_t - S')
//   row n-1:    w = phi0
// G is m e^{(2-q)t}|p|^q, or m e^{2t} phi_s(p^2 e^{-2t}) when truncated.
// Rows where the gradient term dominates diffusion (cell Peclet > 1 along the
// reference slope) use a backward difference for w_t.
class Collocation {
 public:
  Collocation(const ProblemParams& p, const Branch& br, bool emden, double phi0, const SolverConfig& cfg)
      : p_(p), br_(br), m_(emden ? 0.0 : p.m), phi0_(phi0), cfg_(cfg),
        cl_(p, br, emden ? 0.0 : p.m, cfg.T0, cfg.inner_dirichlet.has_value()) {
    n_ = static_cast<std::size_t>(cfg.n_points);
    h_ = -cfg.T0 / static_cast<double>(n_ - 1);
    t_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) t_[i] = cfg.T0 + h_ * static_cast<double>(i);
    t_[n_ - 1] = 0.0;
    Sp_.resize(n_);
    Spp_.resize(n_);
    E_.resize(n_);
    ge_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      Sp_[i] = br.S_t(p, t_[i]);
      Spp_[i] = br.S_tt(p, t_[i]);
      E_[i] = br.absorption_exponent(p, t_[i]);
      ge_[i] = std::exp((2.0 - p.q) * t_[i]);
    }
    upwind_ = detail::upwind_mask(p, br, m_, t_, h_);
  }

  const std::vector<double>& t() const { return t_; }
  std::size_t n() const { return n_; }

  // Gradient term and its derivative in p = u_t.
  void G(std::size_t i, double pu, double& g, double& gp) const {
    if (m_ == 0.0) {
      g = gp = 0.0;
      return;
    }
    if (cfg_.truncation_s) {
      double e2 = std::exp(2.0 * t_[i]);
      double xi = pu * pu / e2;
      TruncatedPower tp = truncated_power_eval(xi, *cfg_.truncation_s, p_.q);
      g = m_ * e2 * tp.value;
      gp = 2.0 * m_ * pu * tp.d1;
      return;
    }
    g = m_ * ge_[i] * abs_pow(pu, p_.q);
    gp = m_ * ge_[i] * abs_pow_deriv(pu, p_.q);
  }

  void closure(double w0, double& g, double& gd) const { cl_.eval(w0, g, gd); }

  double absorption(std::size_t i, double w) const { return p_.a * std::exp(E_[i] + p_.b * w); }

  // Residual and per-row scale. The scale is the magnitude of the terms of
  // each row; it is frozen by the caller during a line search.
  void residual(const std::vector<double>& w, std::vector<double>& R, std::vector<double>* sc,
                std::vector<double>* floor = nullptr) const {
    const double h2 = h_ * h_;
    R.resize(n_);
    if (sc) sc->resize(n_);
    if (floor) floor->resize(n_);
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      double wm, wp = w[i + 1];
      double D;
      double gc = 0.0, gcd = 0.0;
      if (i == 0) {
        if (cfg_.inner_dirichlet) {
          R[0] = w[0] - *cfg_.inner_dirichlet;
          if (sc) (*sc)[0] = 1.0 + std::fabs(*cfg_.inner_dirichlet);
          if (floor) (*floor)[0] = 0.0;
          continue;
        }
        if (cl_.inverted) {
          double arg = cl_.inv_coef() * (w[1] - w[0]) / h_;
          R[0] = w[0] - cl_.winf - std::log1p(arg) / p_.b;
          if (sc) (*sc)[0] = 1.0 + std::fabs(cl_.winf);
          if (floor) (*floor)[0] = 4.0 * kEps * (std::fabs(w[0]) + std::fabs(cl_.winf));
          continue;
        }
        closure(w[0], gc, gcd);
        wm = w[1] - 2.0 * h_ * gc;
        D = gc;
      } else {
        wm = w[i - 1];
        D = upwind_[i] ? (w[i] - w[i - 1]) / h_ : (wp - wm) / (2.0 * h_);
      }
      double wtt = (wp - 2.0 * w[i] + wm) / h2;
      double A = absorption(i, w[i]);
      double g, gp;
      G(i, D - Sp_[i], g, gp);
      R[i] = -wtt + Spp_[i] + A - g;
      if (sc) {
        double s = 1.0 + std::fabs(wtt) + std::fabs(Spp_[i]) + A + std::fabs(g);
        if (i == 0) s += 2.0 * std::fabs(gc) / h_;
        (*sc)[i] = s;
      }
      if (floor) (*floor)[i] = 4.0 * kEps * (std::fabs(wm) + 2.0 * std::fabs(w[i]) + std::fabs(wp)) / h2;
    }
    R[n_ - 1] = w[n_ - 1] - phi0_;
    if (sc) (*sc)[n_ - 1] = 1.0 + std::fabs(phi0_);
    if (floor) (*floor)[n_ - 1] = 0.0;
  }

  // Tridiagonal Jacobian: lo[i] = dR_i/dw_{i-1}, di[i] = dR_i/dw_i, up[i] = dR_i/dw_{i+1}.
  void jacobian(const std::vector<double>& w, std::vector<double>& lo, std::vector<double>& di,
                std::vector<double>& up) const {
    const double h2 = h_ * h_;
    lo.assign(n_, 0.0);
    di.assign(n_, 0.0);
    up.assign(n_, 0.0);
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      double A = absorption(i, w[i]);
      if (i == 0) {
        if (cfg_.inner_dirichlet) {
          di[0] = 1.0;
          continue;
        }
        if (cl_.inverted) {
          double k = cl_.inv_coef() / h_;
          double d = k / (p_.b * (1.0 + k * (w[1] - w[0])));
          di[0] = 1.0 + d;
          up[0] = -d;
          continue;
        }
        double gc, gcd;
        closure(w[0], gc, gcd);
        double g, gp;
        G(0, gc - Sp_[0], g, gp);
        di[0] = 2.0 / h2 + 2.0 * gcd / h_ + p_.b * A - gp * gcd;
        up[0] = -2.0 / h2;
        continue;
      }
      double D = upwind_[i] ? (w[i] - w[i - 1]) / h_ : (w[i + 1] - w[i - 1]) / (2.0 * h_);
      double g, gp;
      G(i, D - Sp_[i], g, gp);
      lo[i] = -1.0 / h2;
      up[i] = -1.0 / h2;
      di[i] = 2.0 / h2 + p_.b * A;
      if (upwind_[i]) {
        di[i] -= gp / h_;
        lo[i] += gp / h_;
      } else {
        up[i] -= gp / (2.0 * h_);
        lo[i] += gp / (2.0 * h_);
      }
    }
    di[n_ - 1] = 1.0;
  }

  // w_t reconstructed from the converged values.
  std::vector<double> derivative(const std::vector<double>& w) const {
    std::vector<double> wt(n_);
    if (cfg_.inner_dirichlet) {
      wt[0] = (-3.0 * w[0] + 4.0 * w[1] - w[2]) / (2.0 * h_);
    } else {
      double gc, gcd;
      closure(w[0], gc, gcd);
      wt[0] = gc;
    }
    for (std::size_t i = 1; i + 1 < n_; ++i) wt[i] = (w[i + 1] - w[i - 1]) / (2.0 * h_);
    std::size_t k = n_ - 1;
    wt[k] = (3.0 * w[k] - 4.0 * w[k - 1] + w[k - 2]) / (2.0 * h_);
    return wt;
  }

 private:
  ProblemParams p_;
  Branch br_;
  double m_;
  double phi0_;
  SolverConfig cfg_;
  detail::Closure cl_;
  std::size_t n_;
  double h_;
  std::vector<double> t_, Sp_, Spp_, E_, ge_;
  std::vector<char> upwind_;
};

void thomas(std::vector<double> lo, std::vector<double> di, std::vector<double> up, std::vector<double>& x) {
  std::size_t n = di.size();
  for (std::size_t i = 1; i < n; ++i) {
    double f = lo[i] / di[i - 1];
    di[i] -= f * up[i - 1];
    x[i] -= f * x[i - 1];
  }
  x[n - 1] /= di[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (x[i] - up[i] * x[i + 1]) / di[i];
}

double scaled_inf(const std::vector<double>& R, const std::vector<double>& sc) {
  double m = 0.0;
  for (std::size_t i = 0; i < R.size(); ++i) m = std::max(m, std::fabs(R[i]) / sc[i]);
  return m;
}

double scaled_two(const std::vector<double>& R, const std::vector<double>& sc) {
  double s = 0.0;
  for (std::size_t i = 0; i < R.size(); ++i) {
    double v = R[i] / sc[i];
    s += v * v;
  }
  return std::sqrt(s);
}

double max_floor(const std::vector<double>& fl, const std::vector<double>& sc) {
  double m = 0.0;
  for (std::size_t i = 0; i < fl.size(); ++i) m = std::max(m, fl[i] / sc[i]);
  return m;
}

struct NewtonResult {
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
};

NewtonResult newton(const Collocation& col, std::vector<double>& w, const SolverConfig& cfg) {
  NewtonResult res;
  std::vector<double> R, sc, fl, lo, di, up, dx(col.n()), trial(col.n()), Rt;
  for (int it = 0; it <= cfg.newton_max_iter; ++it) {
    col.residual(w, R, &sc, &fl);
    double rinf = scaled_inf(R, sc);
    res.iterations = it;
    res.residual = rinf;
    if (!std::isfinite(rinf)) return res;
    double target = std::max(cfg.newton_tol, max_floor(fl, sc));
    if (rinf <= target) {
      res.converged = true;
      return res;
    }
    if (it == cfg.newton_max_iter) break;
    col.jacobian(w, lo, di, up);
    for (std::size_t i = 0; i < dx.size(); ++i) dx[i] = -R[i];
    thomas(lo, di, up, dx);
    double f0 = scaled_two(R, sc);
    double alpha = 1.0;
    bool accepted = false;
    while (alpha > 1e-10) {
      for (std::size_t i = 0; i < w.size(); ++i) trial[i] = w[i] + alpha * dx[i];
      col.residual(trial, Rt, nullptr);
      double f1 = scaled_two(Rt, sc);
      if (std::isfinite(f1) && f1 <= (1.0 - 1e-4 * alpha) * f0) {
        accepted = true;
        break;
      }
      alpha *= cfg.damping;
    }
    if (!accepted) return res;
    double dmax = 0.0, wmax = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      dmax = std::max(dmax, std::fabs(alpha * dx[i]));
      wmax = std::max(wmax, std::fabs(w[i]));
    }
    w.swap(trial);
    if (dmax < 1e-13 * (1.0 + wmax)) {
      col.residual(w, R, &sc, &fl);
      res.iterations = it + 1;
      res.residual = scaled_inf(R, sc);
      res.converged = res.residual <= std::max(cfg.newton_tol, max_floor(fl, sc));
      return res;
    }
  }
  return res;
}

RadialProfile make_profile(const Collocation& col, const ProblemParams& p, const Branch& br, bool emden,
                           std::vector<double> w, const NewtonResult& nr) {
  RadialProfile prof;
  prof.t = col.t();
  prof.w_t = col.derivative(w);
  prof.w = std::move(w);
  prof.branch = br;
  prof.params = p;
  prof.emden = emden;
  prof.iterations = nr.iterations;
  prof.residual = nr.residual;
  return prof;
}

// Newton on one problem; returns false instead of throwing so that the
// continuation drivers can back off.
bool try_solve(const ProblemParams& p, const Branch& br, bool emden, double phi0, const SolverConfig& cfg,
               std::vector<double>& w, NewtonResult& nr) {
  Collocation col(p, br, emden, phi0, cfg);
  std::vector<double> x = w;
  nr = newton(col, x, cfg);
  if (!nr.converged) return false;
  w.swap(x);
  return true;
}

std::vector<double> linear_seed(const SolverConfig& cfg, double inner, double outer) {
  std::vector<double> w(static_cast<std::size_t>(cfg.n_points));
  for (std::size_t i = 0; i < w.size(); ++i) {
    double s = static_cast<double>(i) / static_cast<double>(w.size() - 1);
    w[i] = inner + (outer - inner) * s;
  }
  return w;
}

}  // namespace

std::vector<double> discrete_residual(const RadialProfile& prof, double boundary_value, const SolverConfig& cfg) {
  SolverConfig c = cfg;
  c.n_points = static_cast<int>(prof.size());
  c.T0 = prof.t.front();
  Collocation col(prof.params, prof.branch, prof.emden, boundary_value, c);
  std::vector<double> R, sc;
  col.residual(prof.w, R, &sc);
  for (std::size_t i = 0; i < R.size(); ++i) R[i] /= sc[i];
  return R;
}

RadialProfile solve_collocation(const ProblemParams& p, const Branch& br, bool emden, double phi0,
                                const SolverConfig& cfg, const std::vector<double>* seed) {
  p.validate();
  cfg.validate();
  br.check(p);
  if (!std::isfinite(phi0)) throw Error(ErrorKind::InvalidParameter, "boundary value must be finite");
  Collocation col(p, br, emden, phi0, cfg);
  std::vector<double> w = seed ? *seed : linear_seed(cfg, phi0, phi0);
  if (w.size() != col.n()) throw Error(ErrorKind::InvalidInput, "seed length does not match n_points");
  NewtonResult nr = newton(col, w, cfg);
  if (!nr.converged)
    throw Error(ErrorKind::NoConvergence, "Newton did not converge (scaled residual " + std::to_string(nr.residual) + ")",
                nr.residual);
  return make_profile(col, p, br, emden, std::move(w), nr);
}

RadialProfile solve_bvp_subcritical(const ProblemParams& p, double gamma, double phi0, const SolverConfig& cfg) {
  p.validate();
  cfg.validate();
  if (p.regime() != Regime::Subcritical)
    throw Error(ErrorKind::PreconditionViolation, "solve_bvp_subcritical needs 1 < q < 2");
  if (!(gamma > 0.0 && gamma < 2.0 / p.b))
    throw Error(ErrorKind::PreconditionViolation, "gamma must lie in (0, 2/b)");
  Branch br = Branch::shift_gamma(gamma);
  std::vector<double> w = linear_seed(cfg, phi0, phi0);
  NewtonResult nr;
  if (try_solve(p, br, false, phi0, cfg, w, nr)) {
    Collocation col(p, br, false, phi0, cfg);
    return make_profile(col, p, br, false, std::move(w), nr);
  }
  // Continuation in gamma from 0.1 gamma.
  w = linear_seed(cfg, phi0, phi0);
  int stages = 0;
  for (int k = 0; k <= cfg.continuation_steps; ++k) {
    double g = gamma * (0.1 + 0.9 * static_cast<double>(k) / cfg.continuation_steps);
    if (!try_solve(p, Branch::shift_gamma(g), false, phi0, cfg, w, nr))
      throw Error(ErrorKind::NoConvergence, "gamma continuation failed", g);
    ++stages;
  }
  Collocation col(p, br, false, phi0, cfg);
  RadialProfile prof = make_profile(col, p, br, false, std::move(w), nr);
  prof.continuation_stages = stages;
  return prof;
}

RadialProfile solve_bvp_critical(const ProblemParams& p, double phi0, const SolverConfig& cfg) {
  p.validate();
  cfg.validate();
  if (p.regime() != Regime::Subcritical) throw Error(ErrorKind::PreconditionViolation, "solve_bvp_critical needs 1 < q < 2");
  Branch br = Branch::lambda_critical();
  std::vector<double> seed = linear_seed(cfg, p.critical_constant(), phi0);
  return solve_collocation(p, br, false, phi0, cfg, &seed);
}

RadialProfile solve_emden(const ProblemParams& p, double gamma, double phi0, const SolverConfig& cfg) {
  p.validate();
  cfg.validate();
  double gmax = 2.0 / p.b;
  if (!(gamma >= 0.0) || gamma > gmax * (1.0 + 1e-14))
    throw Error(ErrorKind::PreconditionViolation, "Emden solutions need 0 <= gamma <= 2/b");
  if (std::fabs(gamma - gmax) <= 1e-14 * gmax) {
    std::vector<double> seed = linear_seed(cfg, p.critical_constant(), phi0);
    return solve_collocation(p, Branch::lambda_critical(), true, phi0, cfg, &seed);
  }
  Branch br = gamma == 0.0 ? Branch::no_shift() : Branch::shift_gamma(gamma);
  return solve_collocation(p, br, true, phi0, cfg);
}

RadialProfile solve_regular(const ProblemParams& p, double phi0, const SolverConfig& cfg) {
  p.validate();
  cfg.validate();
  return solve_collocation(p, Branch::no_shift(), false, phi0, cfg);
}

namespace {

void check_singular_branch(const RadialProfile& prof, double winf) {
  // In the q/b-shifted variable a singular solution stays near w_inf, while a
  // regular one would fall like (q/b) t.
  std::size_t k = prof.size() / 3;
  for (std::size_t i = 0; i < k; ++i)
    if (prof.w[i] < winf - 2.0)
      throw Error(ErrorKind::BranchCollapse, "profile left the singular branch near T0", prof.t[i]);
}

}  // namespace

RadialProfile solve_supercritical_singular(const ProblemParams& p, double phi0, const SolverConfig& cfg) {
  p.validate();
  cfg.validate();
  if (p.regime() != Regime::Supercritical)
    throw Error(ErrorKind::PreconditionViolation, "solve_supercritical_singular needs q > 2");
  if (!std::isfinite(phi0)) throw Error(ErrorKind::InvalidParameter, "boundary value must be finite");
  const Branch br = Branch::shift_q_over_b();
  const double winf = eikonal_constant(p);
  std::vector<double> w = linear_seed(cfg, winf, winf);
  NewtonResult nr;
  int stages = 0;

  if (cfg.supercritical == SupercriticalContinuation::Truncation) {
    // Raise the truncation threshold geometrically, then drop it.
    double s = cfg.truncation_s.value_or(1.0);
    const double s_max = 1e8;
    w = linear_seed(cfg, winf, phi0);
    SolverConfig c = cfg;
    while (true) {
      c.truncation_s = s;
      if (!try_solve(p, br, false, phi0, c, w, nr))
        throw Error(ErrorKind::NoConvergence, "truncation continuation failed", s);
      ++stages;
      if (s >= s_max) break;
      s = std::min(s_max, s * 10.0);
    }
    c.truncation_s.reset();
    if (!try_solve(p, br, false, phi0, c, w, nr))
      throw Error(ErrorKind::NoConvergence, "untruncated solve after continuation failed", s);
    ++stages;
  } else {
    // Continue in the boundary value from w = w_inf, which solves the problem
    // with phi0 = w_inf exactly.
    double cur = winf;
    double step = (phi0 - winf) / cfg.continuation_steps;
    const double min_step = 1e-6 * std::max(1.0, std::fabs(phi0 - winf));
    if (!try_solve(p, br, false, cur, cfg, w, nr))
      throw Error(ErrorKind::NoConvergence, "no solution at the eikonal boundary value", cur);
    while (cur != phi0) {
      double nxt = (std::fabs(phi0 - cur) <= std::fabs(step)) ? phi0 : cur + step;
      std::vector<double> trial = w;
      if (try_solve(p, br, false, nxt, cfg, trial, nr)) {
        w.swap(trial);
        cur = nxt;
        step *= 1.5;
        ++stages;
      } else {
        step *= 0.5;
        if (std::fabs(step) < min_step)
          throw Error(ErrorKind::NoConvergence,
                      "boundary continuation stalled at phi0 = " + std::to_string(cur), cur);
      }
    }
  }
  SolverConfig c = cfg;
  if (cfg.supercritical == SupercriticalContinuation::Truncation) c.truncation_s.reset();
  Collocation col(p, br, false, phi0, c);
  RadialProfile prof = make_profile(col, p, br, false, std::move(w), nr);
  prof.continuation_stages = stages;
  check_singular_branch(prof, winf);
  return prof;
}

LyapunovCensus lyapunov_W(const RadialProfile& prof) {
  prof.check();
  const ProblemParams& p = prof.params;
  double m = prof.m_eff();
  std::vector<double> u = prof.u(), ur = prof.u_r();
  LyapunovCensus c;
  std::size_t n = prof.size();
  c.W.resize(n);
  std::vector<int> sgn(n);
  for (std::size_t i = 0; i < n; ++i) {
    double A = p.a * std::exp(p.b * u[i]);
    double B = m * abs_pow(ur[i], p.q);
    c.W[i] = A - B;
    // u carries round-off of order eps |u|, which e^{bu} and |u'|^q amplify.
    double tol = 16.0 * kEps * (4.0 + p.b * std::fabs(u[i]) + p.q) * (A + B);
    sgn[i] = std::fabs(c.W[i]) <= tol ? 0 : (c.W[i] > 0 ? 1 : -1);
  }
  auto count = [&](std::size_t lo, std::size_t hi, int& last) {
    int changes = 0;
    last = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      if (sgn[i] == 0) continue;
      if (last != 0 && sgn[i] != last) ++changes;
      last = sgn[i];
    }
    return changes;
  };
  int last;
  c.sign_changes = count(0, n, last);
  // Inner window: deepest third of the grid without the 5% next to T0.
  std::size_t lo = n / 20, hi = n / 3;
  c.t_lo = prof.t[lo];
  c.t_hi = prof.t[hi];
  c.inner_sign_changes = count(lo, hi, last);
  c.inner_sign = last;
  c.eventually_one_sign = c.inner_sign_changes == 0;
  return c;
}

}  // namespace isosing
