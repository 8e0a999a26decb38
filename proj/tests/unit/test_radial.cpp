#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/tools/roots.hpp>
#include <gtest/gtest.h>

#include "isosing/asymptotics.hpp"
#include "isosing/error.hpp"
#include "isosing/model.hpp"
#include "isosing/radial.hpp"

using namespace isosing;

namespace {

ProblemParams P(double m, double a, double b, double q) { return ProblemParams::make(m, a, b, q); }

double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y, std::size_t from = 0) {
  double d = 0;
  for (std::size_t i = from; i < x.size(); ++i) d = std::max(d, std::fabs(x[i] - y[i]));
  return d;
}

std::vector<double> uniform(double a, double b, int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = a + (b - a) * i / (n - 1);
  t.back() = b;
  return t;
}

// Exact critical Emden profile as a function of t.
double emden_u(double b, double t) { return 2 / b * (-t - std::log(1 - t)); }
double emden_ut(double b, double t) { return 2 / b * (-1 + 1 / (1 - t)); }

}  // namespace

TEST(Ivp, ReproducesEmdenExact) {
  auto p = P(1, 1, 2, 1.5);
  SolverConfig cfg;
  auto grid = uniform(-10, 0, 401);
  for (auto br : {Branch::no_shift(), Branch::shift_two_over_b(), Branch::lambda_critical()}) {
    double w0 = emden_u(p.b, -10) + br.S(p, -10), w0t = emden_ut(p.b, -10) + br.S_t(p, -10);
    auto prof = integrate_ivp(p, br, -10, w0, w0t, 0, cfg, {.absorption = true, .reaction = false}, grid);
    auto u = prof.u();
    for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(u[i], emden_u(p.b, grid[i]), 1e-8) << to_string(br);
  }
}

// Along w_inf the forward problem is unstable: d(rhs)/d(w_t) = m q |w_t|^{q-1}
// e^{(2-q)t} is about 6e5 at t = -10 for q = 3, so the integrator must give up.
// Backward integration is stable and tracks the exact profile.
TEST(Ivp, TracksWinfBackward) {
  auto p = P(1, 1, 1, 3);
  SolverConfig cfg;
  auto winf = [&](double t) { return eikonal_winf(p, std::exp(t)); };
  auto bwd = integrate_ivp(p, Branch::no_shift(), -1, winf(-1), -3.0, -10, cfg, {}, uniform(-1, -10, 200));
  ASSERT_EQ(bwd.size(), 200u);
  for (std::size_t i = 0; i < bwd.size(); ++i) EXPECT_NEAR(bwd.w[i], winf(bwd.t[i]), 1e-6);
  EXPECT_EQ(bwd.t.front(), -10.0);
  EXPECT_EQ(bwd.t.back(), -1.0);
  try {
    integrate_ivp(p, Branch::no_shift(), -10, winf(-10), -3.0, -1, cfg);
    ADD_FAILURE() << "forward integration along w_inf should not succeed";
  } catch (const Error& e) {
    EXPECT_TRUE(e.kind() == ErrorKind::StiffnessFault || e.kind() == ErrorKind::FiniteTimeBlowup);
  }
}

TEST(Ivp, NoTermsGivesAffine) {
  auto p = P(1, 1, 1, 1.5);
  auto prof = integrate_ivp(p, Branch::no_shift(), -5, 0.3, -0.7, 0, {}, {.absorption = false, .reaction = false});
  for (std::size_t i = 0; i < prof.size(); ++i) {
    EXPECT_NEAR(prof.w[i], 0.3 - 0.7 * (prof.t[i] + 5), 1e-12);
    EXPECT_NEAR(prof.w_t[i], -0.7, 1e-12);
  }
}

TEST(Ivp, BlowupReported) {
  // Reaction alone: w_tt = -m e^{(2-q)t}|w_t|^q, so a steep negative slope
  // steepens and blows up a short time forward.
  auto p = P(1, 1, 1, 3);
  try {
    integrate_ivp(p, Branch::no_shift(), -5, 0, -50, 0, {}, {.absorption = false, .reaction = true});
    FAIL() << "expected blow-up";
  } catch (const Error& e) {
    EXPECT_TRUE(e.kind() == ErrorKind::FiniteTimeBlowup || e.kind() == ErrorKind::StiffnessFault) << e.what();
    ASSERT_TRUE(e.detail().has_value());
    EXPECT_LT(*e.detail(), 0.0);
    EXPECT_GE(*e.detail(), -5.0);
  }
}

TEST(Subcritical, ResidualAndSlope) {
  auto p = P(1, 1, 1, 1.5);
  SolverConfig cfg;
  auto prof = solve_bvp_subcritical(p, 1.0, 0.0, cfg);
  EXPECT_LE(prof.residual, cfg.newton_tol * 10);
  auto res = discrete_residual(prof, 0.0, cfg);
  double mx = 0;
  for (double v : res) mx = std::max(mx, std::fabs(v));
  EXPECT_LT(mx, 1e-9);
  auto fit = fit_gamma(prof, FitWindow{-16, -10});
  EXPECT_NEAR(fit.gamma_hat, 1.0, 5e-3);
  // Derivative consistency with centred differences, O(h^2).
  double h = prof.t[1] - prof.t[0];
  for (std::size_t i = 1; i + 1 < prof.size(); ++i) {
    double fd = (prof.w[i + 1] - prof.w[i - 1]) / (2 * h);
    EXPECT_NEAR(fd, prof.w_t[i], 1e-9 + 10 * h * h * (1 + std::fabs(prof.w_t[i])));
  }
}

TEST(Subcritical, DecreasingInR) {
  auto p = P(1, 1, 1, 1.5);
  for (double g : {0.5, 1.0, 1.5}) {
    auto prof = solve_bvp_subcritical(p, g, 0.0);
    for (double ur : prof.u_r()) EXPECT_LT(ur, 0.0);
  }
}

TEST(Subcritical, Preconditions) {
  auto p = P(1, 1, 1, 1.5);
  for (double g : {0.0, 2.0, 2.5}) {
    try {
      solve_bvp_subcritical(p, g, 0.0);
      ADD_FAILURE() << g;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::PreconditionViolation);
    }
  }
  try {
    solve_bvp_subcritical(P(1, 1, 1, 3), 1.0, 0.0);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionViolation);
  }
}

// Shooting over the inner constant: integrate from T0 with the closure slope
// and match w(0) = 0 by bracketing; compare with the collocation profile.
TEST(Subcritical, ShootingAgreesWithCollocation) {
  auto p = P(1, 1, 1, 1.5);
  SolverConfig cfg;
  auto bvp = solve_bvp_subcritical(p, 1.0, 0.0, cfg);
  double T0 = cfg.T0, theta = 2 - p.b;
  auto slope_at = [&](double w0) {
    return p.a * std::exp(theta * T0 + p.b * w0) / theta - p.m * std::exp((2 - p.q) * T0) / (2 - p.q);
  };
  auto shoot = [&](double ell) {
    return integrate_ivp(p, Branch::shift_gamma(1.0), T0, ell, slope_at(ell), 0, cfg, {}, bvp.t);
  };
  auto miss = [&](double ell) { return shoot(ell).w.back(); };
  double lo = bvp.w[0] - 1e-2, hi = bvp.w[0] + 1e-2;
  ASSERT_LT(miss(lo) * miss(hi), 0.0);
  boost::uintmax_t it = 100;
  auto br = boost::math::tools::toms748_solve(miss, lo, hi, boost::math::tools::eps_tolerance<double>(50), it);
  auto ivp = shoot(0.5 * (br.first + br.second));
  std::size_t from = std::lower_bound(bvp.t.begin(), bvp.t.end(), T0 + 2) - bvp.t.begin();
  EXPECT_LT(max_abs_diff(ivp.w, bvp.w, from), 1e-6);
}

TEST(Subcritical, GradientCensusStableUnderRefinement) {
  auto p = P(1, 1, 1, 1.5);
  std::vector<double> sup;
  for (int n : {1024, 2048, 4096}) {
    SolverConfig cfg;
    cfg.n_points = n;
    auto prof = solve_bvp_subcritical(p, 1.0, 0.0, cfg);
    auto ut = prof.u_t();
    double s = 0;
    for (std::size_t i = 0; i < prof.size() / 2; ++i) s = std::max(s, std::fabs(ut[i]));
    sup.push_back(s);
  }
  EXPECT_TRUE(std::isfinite(sup.back()));
  EXPECT_NEAR(sup[1], sup[2], 1e-4 * sup[2]);
  EXPECT_NEAR(sup[0], sup[2], 4e-4 * sup[2]);
}

TEST(Subcritical, AprioriBoundHolds) {
  auto p = P(1, 1, 1, 1.5);
  auto prof = solve_bvp_subcritical(p, 1.5, 0.0);
  auto u = prof.u();
  auto r = prof.r();
  for (std::size_t i = 0; i + 1 < prof.size(); i += 7) EXPECT_LE(u[i], apriori_bound(p, r[i]));
}

TEST(Subcritical, ContinuationToGammaZero) {
  auto p = P(1, 1, 1, 1.5);
  SolverConfig cfg;
  auto reg = solve_regular(p, 0.0, cfg);
  double prev = INFINITY;
  for (double g : {0.2, 0.1, 0.05, 0.025}) {
    auto s = solve_bvp_subcritical(p, g, 0.0, cfg);
    // Compare away from the singular core, on [-3, 0].
    std::size_t from = std::lower_bound(s.t.begin(), s.t.end(), -3.0) - s.t.begin();
    double d = max_abs_diff(s.u(), reg.u(), from);
    EXPECT_LT(d, prev);
    prev = d;
  }
  EXPECT_LT(prev, 0.1);
}

TEST(Critical, ConstantAndSandwichOrdering) {
  auto p = P(1, 1, 1, 1.5);
  auto prof = solve_bvp_critical(p, 0.0);
  EXPECT_EQ(prof.branch.kind, BranchKind::LambdaCritical);
  auto f = fit_critical(prof);
  EXPECT_NEAR(f.ell_hat, std::log(2.0), 5e-2);
  auto q = P(1, 1, 2, 1.5);
  EXPECT_NEAR(fit_critical(solve_bvp_critical(q, 0.0)).ell_hat, 0.0, 5e-2);
  // Above psi_{kappa2} = psi_0.
  auto u = prof.u();
  auto r = prof.r();
  for (std::size_t i = 0; i < prof.size(); ++i) EXPECT_GE(u[i], psi_kappa(p, 0.0, r[i]).value - 1e-8);
}

TEST(Emden, MatchesExactCritical) {
  auto p = P(1, 1, 2, 1.5);
  SolverConfig cfg;
  auto prof = solve_emden(p, 1.0, 0.0, cfg);
  auto u = prof.u();
  auto r = prof.r();
  double mx = 0;
  for (std::size_t i = 0; i < prof.size(); ++i) mx = std::max(mx, std::fabs(u[i] - emden_critical_exact(p, r[i])));
  EXPECT_LT(mx, 1e-7);
}

TEST(Emden, ZeroGammaNonpositive) {
  auto p = P(1, 1, 1, 1.5);
  auto prof = solve_emden(p, 0.0, 0.0);
  auto u = prof.u();
  for (double v : u) EXPECT_LE(v, 1e-14);
  EXPECT_EQ(std::min_element(u.begin(), u.end()) - u.begin(), 0);
}

TEST(Emden, ShiftedLimitNegative) {
  auto p = P(1, 1, 1, 1.5);
  auto prof = solve_emden(p, 1.0, 0.0);
  auto u = prof.u();
  // u + ln r = u - (-t) ... converges to a negative constant.
  double l1 = u[prof.size() / 20] + prof.t[prof.size() / 20];
  double l0 = u[0] + prof.t[0];
  EXPECT_LT(l0, 0.0);
  EXPECT_NEAR(l0, l1, 1e-3);
  try {
    solve_emden(p, 2.5, 0.0);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionViolation);
  }
}

// Second-order convergence against a closed form: the exact Emden profile
// in the unshifted variable with Dirichlet data at both ends.
TEST(Refinement, SecondOrderAgainstClosedForm) {
  auto p = P(1, 1, 2, 1.5);
  std::vector<double> err;
  for (int n : {129, 257, 513, 1025}) {
    SolverConfig cfg;
    cfg.T0 = -6;
    cfg.n_points = n;
    cfg.inner_dirichlet = emden_u(p.b, cfg.T0);
    auto prof = solve_collocation(p, Branch::no_shift(), true, 0.0, cfg);
    double e = 0;
    for (std::size_t i = 0; i < prof.size(); ++i) e = std::max(e, std::fabs(prof.w[i] - emden_u(p.b, prof.t[i])));
    err.push_back(e);
  }
  for (std::size_t k = 1; k < err.size(); ++k) EXPECT_GE(err[k - 1] / err[k], 3.5) << k;
  double order = std::log2(err[err.size() - 2] / err.back());
  EXPECT_GE(order, 1.8);
}

TEST(Supercritical, SingularBranchSlope) {
  auto p = P(1, 1, 1, 3);
  double phi = eikonal_constant(p) - 0.1;
  auto prof = solve_supercritical_singular(p, phi);
  EXPECT_EQ(prof.branch.kind, BranchKind::ShiftQOverB);
  EXPECT_NEAR(fit_gamma(prof).gamma_hat, 3.0, 1e-2);
  // r u' monotone on the inner window.
  auto win = default_window(prof);
  auto ut = prof.u_t();
  int sgn = 0, changes = 0;
  for (std::size_t i = 1; i < prof.size(); ++i) {
    if (prof.t[i] < win.t_lo || prof.t[i] > win.t_hi) continue;
    double d = ut[i] - ut[i - 1];
    if (std::fabs(d) < 1e-13) continue;
    int s = d > 0 ? 1 : -1;
    if (sgn != 0 && s != sgn) ++changes;
    sgn = s;
  }
  EXPECT_EQ(changes, 0);
  // Lower log-log bound with a fitted constant.
  auto u = prof.u();
  double K = -INFINITY;
  for (std::size_t i = 0; i < prof.size(); ++i)
    K = std::max(K, 2 / p.b * (-prof.t[i] - std::log(1 - prof.t[i])) - u[i]);
  EXPECT_TRUE(std::isfinite(K));
  EXPECT_LT(K, 1.0);
}

TEST(Supercritical, GradientLowerBound) {
  auto p = P(1, 1, 1, 3);
  auto prof = solve_supercritical_singular(p, eikonal_constant(p) - 0.1);
  auto ur = prof.u_r();
  auto r = prof.r();
  auto win = default_window(prof);
  double ref = std::sqrt(0.5);
  for (std::size_t i = 0; i < prof.size(); ++i) {
    if (prof.t[i] < win.t_lo || prof.t[i] > win.t_hi) continue;
    EXPECT_GE(std::fabs(ur[i]) * std::sqrt(r[i]), 0.9 * ref);
  }
}

TEST(Supercritical, FoldRaisesNoConvergence) {
  auto p = P(1, 1, 1, 3);
  try {
    solve_supercritical_singular(p, 0.0);
    FAIL() << "zero data lies below the fold of the singular branch";
  } catch (const Error& e) {
    EXPECT_TRUE(e.kind() == ErrorKind::NoConvergence || e.kind() == ErrorKind::BranchCollapse) << e.what();
    ASSERT_TRUE(e.detail().has_value());
    EXPECT_GT(*e.detail(), 3.0);
  }
}

TEST(Regular, BoundedAndSmallMassScale) {
  auto p = P(1, 1, 1, 3);
  auto prof = solve_regular(p, 0.0);
  auto u = prof.u();
  for (double v : u) EXPECT_TRUE(std::isfinite(v));
  // Bounded: the slope against -t vanishes.
  EXPECT_NEAR(fit_gamma(prof).gamma_hat, 0.0, 1e-3);
  double mx = *std::max_element(u.begin(), u.end()), mn = *std::min_element(u.begin(), u.end());
  EXPECT_LT(mx - mn, 10.0);
}

TEST(Regular, LargeAbsorptionNegativeCentre) {
  auto p = P(1, 50, 1, 3);
  auto prof = solve_regular(p, 0.0);
  auto u = prof.u();
  EXPECT_LT(u.front(), 0.0);
  for (double v : u) EXPECT_LE(v, 1e-14);
  EXPECT_NEAR(fit_gamma(prof).gamma_hat, 0.0, 1e-3);
}

TEST(Lyapunov, Census) {
  auto p = P(1, 1, 1, 3);
  // Hand-built w_inf profile in the q/b variable: w constant.
  RadialProfile winf{.t = {}, .w = {}, .w_t = {}, .branch = Branch::shift_q_over_b(), .params = p};
  for (int i = 0; i < 200; ++i) {
    winf.t.push_back(-10 + 10.0 * i / 199);
    winf.w.push_back(eikonal_constant(p));
    winf.w_t.push_back(0.0);
  }
  auto c = lyapunov_W(winf);
  for (std::size_t i = 0; i < c.W.size(); ++i) {
    double A = p.a * std::exp(p.b * winf.u()[i]);
    EXPECT_LT(std::fabs(c.W[i]), 1e-12 * A);
  }
  EXPECT_EQ(c.inner_sign, 0);

  // Singular solutions: one sign (or the eikonal balance to round-off) near T0.
  for (double phi : {3.12, eikonal_constant(p) - 0.1}) {
    auto sing = lyapunov_W(solve_supercritical_singular(p, phi));
    EXPECT_TRUE(sing.eventually_one_sign) << phi;
  }

  auto q = P(1, 1, 2, 1.5);
  auto em = solve_emden(q, 1.0, 0.0);
  auto ce = lyapunov_W(em);
  auto u = em.u();
  for (std::size_t i = 0; i < ce.W.size(); ++i) {
    EXPECT_GT(ce.W[i], 0.0);
    EXPECT_DOUBLE_EQ(ce.W[i], q.a * std::exp(q.b * u[i]));
  }
}
