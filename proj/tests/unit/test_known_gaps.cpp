// Literal claims this implementation reproduces as failures. Each test is
// registered on its own with WILL_FAIL, so ctest passes while they fail and
// flags them the day one starts passing.

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "isosing/annulus2d.hpp"
#include "isosing/asymptotics.hpp"
#include "isosing/model.hpp"
#include "isosing/radial.hpp"
#include "isosing/verify.hpp"

using namespace isosing;

namespace {
ProblemParams P(double m, double a, double b, double q) { return ProblemParams::make(m, a, b, q); }
}  // namespace

// Forward from t = -10 along w_inf for q = 3: perturbations grow like
// exp(int m q |w_t|^{q-1} e^{(2-q)t}), about 6e5 per unit t at the start.
TEST(KnownGap, ForwardIvpTracksWinf) {
  auto p = P(1, 1, 1, 3);
  auto winf = [&](double t) { return eikonal_winf(p, std::exp(t)); };
  auto fwd = integrate_ivp(p, Branch::no_shift(), -10, winf(-10), -3.0, -1);
  for (std::size_t i = 0; i < fwd.size(); ++i) EXPECT_NEAR(fwd.w[i], winf(fwd.t[i]), 1e-6);
}

// The linearised mode-1 operator decays like e^{t}; measured rate ~0.985.
TEST(KnownGap, ModeOneRateInBand) {
  auto p = P(1, 1, 1, 1.5);
  Boundary phi(64);
  for (int j = 0; j < 64; ++j) phi[j] = 0.3 * std::cos(2 * std::numbers::pi * j / 64);
  SolverConfig cfg;
  cfg.n_points = 2048;
  auto md = fourier_mode_norms(solve_nonradial(p, 1.0, phi, cfg, 64));
  ASSERT_TRUE(md.beta_hat[0].has_value());
  EXPECT_GE(*md.beta_hat[0], 0.45);
  EXPECT_LE(*md.beta_hat[0], 0.65);
}

// The lower log barrier tends to +inf at the origin; a bounded profile is
// below it near 0 (margin ~ -30 at T0 = -18).
TEST(KnownGap, RegularBranchAboveLowerBarrier) {
  auto p = P(1, 1, 1, 3);
  auto reg = solve_regular(p, 0.0);
  Curve lo = curve_from(reg.t, [&](double r) { return supercritical_lower_barrier(p, r); });
  Curve hi = curve_from(reg.t, [&](double r) { return supercritical_upper_barrier(p, r); });
  EXPECT_GE(sandwich_check(curve_u(reg), lo, hi).lower, -1e-8);
}

// Singular solutions lie below w_inf, so data 0 < w_inf(1) - 0.19 is outside
// the range reached by continuation (fold at phi0 ~ 3.107).
TEST(KnownGap, SingularBranchWithZeroData) {
  auto p = P(1, 1, 1, 3);
  auto prof = solve_supercritical_singular(p, 0.0);
  EXPECT_NEAR(fit_gamma(prof).gamma_hat, 3.0, 1e-2);
}

// The e^{t/2} correction biases the slope on [-16, -10] by ~3.7e-3.
TEST(KnownGap, ShallowWindowGammaWithin1e3) {
  auto prof = solve_bvp_subcritical(P(1, 1, 1, 1.5), 1.0, 0.0);
  EXPECT_NEAR(fit_gamma(prof, FitWindow{-16, -10}).gamma_hat, 1.0, 1e-3);
}
