#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isosing/params.hpp"
#include "isosing/transform.hpp"

namespace isosing {

enum class SupercriticalContinuation { Boundary, Truncation };

struct SolverConfig {
  double T0 = -18.0;
  int n_points = 4096;
  double newton_tol = 1e-11;
  int newton_max_iter = 60;
  double damping = 0.5;
  int continuation_steps = 8;
  // Gradient term replaced by m e^{2t} phi_s(|u_t|^2 e^{-2t}) when set.
  std::optional<double> truncation_s;
  // Dirichlet value at T0 in place of the asymptotic closure (verification runs).
  std::optional<double> inner_dirichlet;
  SupercriticalContinuation supercritical = SupercriticalContinuation::Boundary;
  double ivp_rtol = 1e-11;
  double ivp_atol = 1e-13;
  int ivp_max_steps = 2000000;

  void validate() const;
};

struct RadialProfile {
  std::vector<double> t;
  std::vector<double> w;
  std::vector<double> w_t;
  Branch branch;
  ProblemParams params;
  bool emden = false;  // gradient term switched off (m treated as 0)

  // Solver bookkeeping, empty for profiles built by hand.
  int iterations = 0;
  double residual = 0.0;
  int continuation_stages = 0;

  std::size_t size() const { return t.size(); }
  double m_eff() const { return emden ? 0.0 : params.m; }
  std::vector<double> r() const;
  std::vector<double> u() const;
  std::vector<double> u_t() const;  // r u_r
  std::vector<double> u_r() const;
  // Throws InvalidInput when the grid is not increasing or a value is not finite.
  void check() const;
};

// Collocation residual of a profile on its own grid, scaled row by row by the
// magnitude of the terms. Rows 0 and n-1 hold the closure and the boundary row.
std::vector<double> discrete_residual(const RadialProfile& prof, double boundary_value,
                                      const SolverConfig& cfg = {});

// Terms switch for integrate_ivp; both on gives the full equation.
struct IvpTerms {
  bool absorption = true;
  bool reaction = true;
};

// Dormand-Prince 5(4) with dense output. t_end may lie on either side of
// t_start. With out_grid empty the accepted steps are returned.
RadialProfile integrate_ivp(const ProblemParams& p, const Branch& br, double t_start, double w0, double w0_t,
                            double t_end, const SolverConfig& cfg = {}, IvpTerms terms = {},
                            std::span<const double> out_grid = {});

RadialProfile solve_bvp_subcritical(const ProblemParams& p, double gamma, double phi0, const SolverConfig& cfg = {});
RadialProfile solve_bvp_critical(const ProblemParams& p, double phi0, const SolverConfig& cfg = {});
RadialProfile solve_supercritical_singular(const ProblemParams& p, double phi0, const SolverConfig& cfg = {});
RadialProfile solve_regular(const ProblemParams& p, double phi0, const SolverConfig& cfg = {});
// Pure Emden problem (gradient term off). gamma = 2/b uses the critical
// variable, gamma = 0 the unshifted one.
RadialProfile solve_emden(const ProblemParams& p, double gamma, double phi0, const SolverConfig& cfg = {});

// Generic entry used by the solvers above: Newton collocation from a seed.
RadialProfile solve_collocation(const ProblemParams& p, const Branch& br, bool emden, double phi0,
                                const SolverConfig& cfg, const std::vector<double>* seed = nullptr);

struct LyapunovCensus {
  std::vector<double> W;  // a e^{bu} - m |u'|^q
  int sign_changes = 0;
  int inner_sign_changes = 0;
  int inner_sign = 0;  // +1, -1, or 0 when W vanishes to round-off on the window
  bool eventually_one_sign = false;
  double t_lo = 0.0, t_hi = 0.0;
};
LyapunovCensus lyapunov_W(const RadialProfile& prof);

}  // namespace isosing
