#include <cmath>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "isosing/error.hpp"
#include "isosing/radial.hpp"
#include "isosing/special.hpp"

namespace isosing {

namespace {

using State = std::vector<double>;
namespace odeint = boost::numeric::odeint;

struct BranchOde {
  const ProblemParams& p;
  const Branch& br;
  IvpTerms terms;
  double m;
  std::optional<double> s;

  void operator()(const State& x, State& dx, double t) const {
    double w = x[0], wt = x[1];
    double rhs = br.S_tt(p, t);
    if (terms.absorption) rhs += p.a * std::exp(br.absorption_exponent(p, t) + p.b * w);
    if (terms.reaction && m != 0.0) {
      double ut = wt - br.S_t(p, t);
      if (s) {
        double xi = ut * ut * std::exp(-2.0 * t);
        rhs -= m * std::exp(2.0 * t) * truncated_power_eval(xi, *s, p.q).value;
      } else {
        rhs -= m * std::exp((2.0 - p.q) * t) * abs_pow(ut, p.q);
      }
    }
    dx[0] = wt;
    dx[1] = rhs;
  }
};

bool blown_up(const State& x) {
  return !std::isfinite(x[0]) || !std::isfinite(x[1]) || std::fabs(x[0]) > 1e150 || std::fabs(x[1]) > 1e150;
}

}  // namespace

RadialProfile integrate_ivp(const ProblemParams& p, const Branch& br, double t_start, double w0, double w0_t,
                            double t_end, const SolverConfig& cfg, IvpTerms terms,
                            std::span<const double> out_grid) {
  p.validate();
  br.check(p);
  if (!(t_end <= 0.0) || !(t_start <= 0.0) || t_start == t_end || !std::isfinite(t_start) || !std::isfinite(t_end))
    throw Error(ErrorKind::PreconditionViolation, "integrate_ivp needs distinct t_start, t_end <= 0");
  if (!std::isfinite(w0) || !std::isfinite(w0_t)) throw Error(ErrorKind::InvalidInput, "non-finite initial data");
  const double dir = t_end > t_start ? 1.0 : -1.0;
  for (std::size_t i = 0; i < out_grid.size(); ++i) {
    double g = out_grid[i];
    bool inside = dir > 0 ? (g >= t_start && g <= t_end) : (g <= t_start && g >= t_end);
    if (!inside) throw Error(ErrorKind::InvalidInput, "output grid leaves the integration interval");
    if (i > 0 && (g - out_grid[i - 1]) * dir <= 0.0)
      throw Error(ErrorKind::InvalidInput, "output grid must be strictly monotone in the direction of integration");
  }

  BranchOde ode{p, br, terms, p.m, cfg.truncation_s};
  auto stepper = odeint::make_dense_output(cfg.ivp_atol, cfg.ivp_rtol, odeint::runge_kutta_dopri5<State>());
  State x{w0, w0_t};
  double dt0 = dir * std::min(1e-3, std::fabs(t_end - t_start) / 16.0);
  stepper.initialize(x, t_start, dt0);

  RadialProfile prof;
  prof.branch = br;
  prof.params = p;
  prof.emden = !terms.reaction;
  auto push = [&](double t, const State& s) {
    prof.t.push_back(t);
    prof.w.push_back(s[0]);
    prof.w_t.push_back(s[1]);
  };
  std::size_t next = 0;
  if (out_grid.empty()) {
    push(t_start, x);
  } else {
    while (next < out_grid.size() && out_grid[next] == t_start) push(out_grid[next++], x);
  }

  State tmp(2);
  int steps = 0;
  const double land_tol = 1e-14 * std::max(1.0, std::fabs(t_end));
  while ((t_end - stepper.current_time()) * dir > land_tol) {
    double remaining = t_end - stepper.current_time();
    if (std::fabs(stepper.current_time_step()) > std::fabs(remaining))
      stepper.initialize(stepper.current_state(), stepper.current_time(), remaining);
    double t_prev = stepper.current_time();
    try {
      stepper.do_step(ode);
    } catch (const odeint::step_adjustment_error&) {
      throw Error(ErrorKind::StiffnessFault, "step size control failed", t_prev);
    }
    const State& cur = stepper.current_state();
    double t_now = stepper.current_time();
    if (blown_up(cur)) throw Error(ErrorKind::FiniteTimeBlowup, "solution blew up", t_prev);
    if (++steps > cfg.ivp_max_steps) throw Error(ErrorKind::StiffnessFault, "step budget exhausted", t_now);
    if (std::fabs(t_end - t_now) <= land_tol) {
      // Land exactly on t_end so the last sample is not an interpolant.
      t_now = t_end;
    } else if (std::fabs(stepper.current_time_step()) < 1e-14 * std::max(1.0, std::fabs(t_now))) {
      throw Error(ErrorKind::StiffnessFault, "step size underflow", t_now);
    }
    if (out_grid.empty()) {
      push(t_now, cur);
    } else {
      while (next < out_grid.size() && (out_grid[next] - t_now) * dir <= 0.0) {
        stepper.calc_state(out_grid[next], tmp);
        if (out_grid[next] == t_now) tmp = cur;
        push(out_grid[next++], tmp);
      }
    }
    if (t_now == t_end) break;
  }
  if (dir < 0.0) {
    std::reverse(prof.t.begin(), prof.t.end());
    std::reverse(prof.w.begin(), prof.w.end());
    std::reverse(prof.w_t.begin(), prof.w_t.end());
  }
  return prof;
}

}  // namespace isosing
