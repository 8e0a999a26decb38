#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <gtest/gtest.h>

#include "isosing/annulus2d.hpp"
#include "isosing/error.hpp"
#include "isosing/model.hpp"
#include "isosing/radial.hpp"
#include "isosing/verify.hpp"

using namespace isosing;

namespace {

ProblemParams P(double m, double a, double b, double q) { return ProblemParams::make(m, a, b, q); }

std::vector<double> uniform(double a, double b, int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = a + (b - a) * i / (n - 1);
  t.back() = b;
  return t;
}

const RadialProfile& sub1() {
  static const RadialProfile p = solve_bvp_subcritical(P(1, 1, 1, 1.5), 1.0, 0.0);
  return p;
}
const RadialProfile& crit() {
  static const RadialProfile p = solve_bvp_critical(P(1, 1, 1, 1.5), 0.0);
  return p;
}
const RadialProfile& sing3() {
  static const RadialProfile p = [] {
    auto q = P(1, 1, 1, 3);
    return solve_supercritical_singular(q, eikonal_constant(q) - 0.1);
  }();
  return p;
}
const RadialProfile& reg3() {
  static const RadialProfile p = solve_regular(P(1, 1, 1, 3), 0.0);
  return p;
}

// (1 - r^2)^k and its planar Laplacian, written out for the oracle.
double zeta_k(int k, double r) { return std::pow(1 - r * r, k); }
double lap_zeta_k(int k, double r) {
  double s = 1 - r * r;
  return -4.0 * k * std::pow(s, k - 1) + 4.0 * k * (k - 1) * r * r * std::pow(s, k - 2);
}

}  // namespace

TEST(TestFunctions, ClosedForms) {
  for (auto [z, k] : {std::pair{TestFunction::Cubic, 3}, {TestFunction::Quartic, 4}}) {
    EXPECT_EQ(test_function_power(z), k);
    EXPECT_EQ(test_zeta(z, 0.0), 1.0);
    EXPECT_EQ(test_zeta(z, 1.0), 0.0);
    for (double r : {0.0, 0.1, 0.5, 0.9, 1.0}) {
      EXPECT_NEAR(test_zeta(z, r), zeta_k(k, r), 1e-15);
      EXPECT_NEAR(test_lap_zeta(z, r), lap_zeta_k(k, r), 1e-13);
    }
  }
}

TEST(Mass, SubcriticalEqualsGamma) {
  auto p = P(1, 1, 1, 1.5);
  for (double g : {0.5, 1.0, 1.5}) {
    auto prof = solve_bvp_subcritical(p, g, 0.0);
    auto m3 = distributional_mass(prof, TestFunction::Cubic);
    auto m4 = distributional_mass(prof, TestFunction::Quartic);
    EXPECT_NEAR(m3.mass, g, 1e-2 * g);
    // Two admissible test functions agree to quadrature accuracy.
    EXPECT_NEAR(m3.mass, m4.mass, 1e-4 * g);
    EXPECT_NEAR(m3.mass, m3.partial + m3.tail_u + m3.tail_reaction, 1e-14);
  }
}

TEST(Mass, CriticalEqualsTwoOverB) {
  auto m = distributional_mass(crit());
  EXPECT_NEAR(m.mass, 2.0, 2e-2);
}

TEST(Mass, RegularHasNoAtom) {
  auto m = distributional_mass(reg3());
  EXPECT_NEAR(m.mass, 0.0, 1e-2);
}

TEST(Mass, EmdenCriticalSolverAndExact) {
  auto p = P(1, 1, 2, 1.5);
  auto solved = solve_emden(p, 1.0, 0.0);
  EXPECT_NEAR(distributional_mass(solved).mass, 1.0, 1e-2);
  // Hand-built exact profile: w = 0 in the critical variable.
  RadialProfile exact{.t = uniform(-18, 0, 4096), .w = {}, .w_t = {}, .branch = Branch::lambda_critical(), .params = p,
                      .emden = true};
  exact.w.assign(exact.t.size(), 0.0);
  exact.w_t.assign(exact.t.size(), 0.0);
  double me = distributional_mass(exact).mass;
  EXPECT_NEAR(me, 1.0, 1e-2);
  // Independent oracle: exp-sinh quadrature in s = -ln r of the same functional,
  // r^2 (-u Lap zeta + a e^{bu} zeta), where r^2 e^{bu} = (1 + s)^{-2}.
  boost::math::quadrature::exp_sinh<double> es;
  // u = (2/b)(s - ln(1 + s)), written out so that deep s never forms r = 0.
  auto u_of = [&](double s) { return 2 / p.b * (s - std::log1p(s)); };
  for (double s : {0.0, 1.0, 10.0, 100.0}) EXPECT_NEAR(u_of(s), emden_critical_exact(p, std::exp(-s)), 1e-12 * (1 + s));
  auto f = [&](double s) {
    double r = std::exp(-s);
    double u = u_of(s);
    return -u * lap_zeta_k(3, r) * r * r + p.a * zeta_k(3, r) / ((1 + s) * (1 + s));
  };
  double oracle = es.integrate(f);
  EXPECT_NEAR(oracle, 2 / p.b, 1e-8);
  EXPECT_NEAR(me, oracle, 1e-2);
}

// For q > 2 the absorption and gradient terms along w_inf are each of size
// e^{(q-2)|t|}; their difference is then round-off, so the window stays shallow.
TEST(Mass, WinfCarriesQOverB) {
  for (auto p : {P(1, 1, 1, 3), P(2, 1, 0.5, 2.5), P(1, 3, 2, 4)}) {
    std::vector<double> err;
    for (int n : {1024, 2048, 4096}) {
      RadialProfile winf{.t = uniform(-8, 0, n), .w = {}, .w_t = {}, .branch = Branch::shift_q_over_b(),
                         .params = p};
      winf.w.assign(winf.t.size(), eikonal_constant(p));
      winf.w_t.assign(winf.t.size(), 0.0);
      auto m = distributional_mass(winf);
      EXPECT_TRUE(m.tail_balanced);
      EXPECT_NEAR(m.mass, p.q / p.b, 1e-3 * p.q / p.b);
      err.push_back(std::fabs(m.mass - p.q / p.b));
    }
    // Trapezoid error, second order in h.
    EXPECT_GE(std::log2(err[0] / err[1]), 1.8);
    EXPECT_GE(std::log2(err[1] / err[2]), 1.8);
  }
}

TEST(Mass, CancellationBeyondPrecisionIsReported) {
  auto p = P(1, 3, 2, 4);
  RadialProfile winf{.t = uniform(-18, 0, 4096), .w = {}, .w_t = {}, .branch = Branch::shift_q_over_b(), .params = p};
  winf.w.assign(winf.t.size(), eikonal_constant(p));
  winf.w_t.assign(winf.t.size(), 0.0);
  try {
    distributional_mass(winf);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NumericalFault);
    ASSERT_TRUE(e.detail().has_value());
    EXPECT_GT(*e.detail(), 1e-3);
  }
  // The q = 3 singular profile at the default depth is well inside the limit.
  EXPECT_LT(distributional_mass(sing3()).roundoff, 1e-4);
}

TEST(Mass, FieldWithCosineData) {
  auto p = P(1, 1, 1, 1.5);
  Boundary phi(32);
  for (int j = 0; j < 32; ++j) phi[j] = std::cos(2 * std::numbers::pi * j / 32);
  SolverConfig cfg;
  cfg.n_points = 1024;
  auto f = solve_nonradial(p, 1.0, phi, cfg, 32);
  EXPECT_NEAR(distributional_mass(f).mass, 1.0, 1e-2);
  // Radial field agrees with the radial estimate.
  auto r = solve_bvp_subcritical(p, 1.0, 0.0, cfg);
  EXPECT_NEAR(distributional_mass(replicate(r, 16)).mass, distributional_mass(r).mass, 1e-10);
}

TEST(Integrability, SubcriticalExponents) {
  auto rep = integrability_report(sub1());
  EXPECT_EQ(rep.exp_term.flag, Integrability::Integrable);
  EXPECT_NEAR(rep.exp_term.exponent, 1.0, 0.1);
  EXPECT_EQ(rep.grad_term.flag, Integrability::Integrable);
  EXPECT_NEAR(rep.grad_term.exponent, 0.5, 0.1);
  ASSERT_TRUE(rep.exp_term.total.has_value());
  EXPECT_GE(*rep.exp_term.total, rep.exp_term.partial);
}

TEST(Integrability, CriticalLogSquared) {
  auto rep = integrability_report(crit());
  EXPECT_EQ(rep.exp_term.flag, Integrability::Integrable);
  EXPECT_NEAR(rep.exp_term.exponent, 0.0, 0.05);
  ASSERT_TRUE(rep.exp_term.log_power.has_value());
  EXPECT_NEAR(*rep.exp_term.log_power, -2.0, 0.2);
}

TEST(Integrability, SupercriticalSingularGradient) {
  auto rep = integrability_report(sing3());
  EXPECT_EQ(rep.grad_term.flag, Integrability::NotIntegrable);
  EXPECT_NEAR(rep.grad_term.exponent, -1.0, 0.1);
}

TEST(QuadratureIdentity, TwoPi) {
  auto qi = quadrature_identity_check(-18.0);
  EXPECT_NEAR(qi.value, 2 * std::numbers::pi, 1e-10);
  EXPECT_NEAR(qi.unit_integral, 1.0, 1e-12);
  EXPECT_NEAR(qi.tail, 2 * std::numbers::pi / 19, 1e-15);
  EXPECT_NEAR(qi.tail / (2 * std::numbers::pi), 0.0526, 1e-4);
  EXPECT_NEAR(qi.truncated, 2 * std::numbers::pi * (1 - 1.0 / 19), 1e-12);
  for (double T0 : {-5.0, -28.0, -100.0}) EXPECT_NEAR(quadrature_identity_check(T0).value, 2 * std::numbers::pi, 1e-10);
}

TEST(Sandwich, SubcriticalEmdenCompanion) {
  auto p = P(1, 1, 1, 1.5);
  const auto& u = sub1();
  auto v = solve_emden(p, 1.0, 0.0);
  auto g = gradient_bound_census(u);
  double cq = std::pow(g.sup_r_ur, p.q);
  auto lower = curve_u(v);
  Curve upper = lower;
  auto r = v.r();
  for (std::size_t i = 0; i < r.size(); ++i) upper.v[i] += p.m * cq * eta_profile(p.q, r[i]);
  auto s = sandwich_check(curve_u(u), lower, upper);
  EXPECT_GE(s.lower, -1e-8);
  EXPECT_GE(s.upper, -1e-8);
  EXPECT_TRUE(s.holds(1e-8));
}

TEST(Sandwich, CriticalPsiKappa) {
  auto p = P(1, 1, 1, 1.5);
  const auto& u = crit();
  auto [k1, k2] = kappa_bounds(p);
  double cq = std::pow(gradient_bound_census(u).sup_r_ur, p.q);
  auto lo = curve_from(u.t, [&](double r) { return psi_kappa(p, k2, r).value; });
  auto hi = curve_from(u.t, [&](double r) { return psi_kappa(p, k1, r).value + p.m * cq * eta_profile(p.q, r); });
  auto s = sandwich_check(curve_u(u), lo, hi);
  EXPECT_GE(s.lower, -1e-8);
  EXPECT_GE(s.upper, -1e-8);
}

TEST(Sandwich, SupercriticalLogBarriers) {
  auto p = P(1, 1, 1, 3);
  const auto& u = sing3();
  auto lo = curve_from(u.t, [&](double r) { return supercritical_lower_barrier(p, r); });
  auto hi = curve_from(u.t, [&](double r) { return supercritical_upper_barrier(p, r); });
  auto s = sandwich_check(curve_u(u), lo, hi);
  EXPECT_GE(s.lower, -1e-8);
  EXPECT_GE(s.upper, -1e-8);
}

TEST(Sandwich, BarrierFormulas) {
  for (double b : {0.5, 1.0, 2.0, 3.0}) {
    auto p = P(1.7, 1.3, b, 3);
    double K = b >= 2 ? 1.0 : 2 / b;
    double L = std::log(b / (p.q * std::pow(p.m, 1 / p.q)));
    for (double r : {1e-6, 0.01, 0.5, 1.0}) {
      double lr = std::log(r);
      EXPECT_NEAR(supercritical_lower_barrier(p, r), -2 / b * lr - K * std::log(1 - lr), 1e-12);
      EXPECT_NEAR(supercritical_upper_barrier(p, r), -p.q / b * lr + p.q / b * (std::max(L, 0.0) - L), 1e-12);
    }
  }
}

TEST(Sandwich, RefinementInvariant) {
  auto p = P(1, 1, 1, 1.5);
  std::vector<double> lower;
  // h = 0.01 and 0.005 on [-18, 0]: both grids contain the window ends.
  for (int n : {1801, 3601}) {
    SolverConfig cfg;
    cfg.n_points = n;
    auto u = solve_bvp_subcritical(p, 1.0, 0.0, cfg);
    auto lo = curve_from(u.t, [&](double r) { return psi_kappa(p, -3.0, r).value; });
    auto hi = curve_from(u.t, [&](double r) { return 2 * std::log(1 / r) + 10.0; });
    auto s = sandwich_check(curve_u(u), lo, hi, FitWindow{-17, -1});
    lower.push_back(s.lower);
  }
  EXPECT_NEAR(lower[0], lower[1], 1e-5);
}

TEST(Sandwich, DisjointGridsRejected) {
  Curve a{uniform(-10, -5, 20), std::vector<double>(20, 0.0)};
  Curve b{uniform(-4, 0, 20), std::vector<double>(20, 0.0)};
  try {
    sandwich_check(a, b, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
  }
}

TEST(Certify, ClosedForms) {
  auto p = P(1, 1, 1, 1.5);
  auto [k1, k2] = kappa_bounds(p);
  EXPECT_EQ(certify_subsuper(ClosedForm::psi_kappa(p, k1)).verdict, Certification::Supersolution);
  EXPECT_EQ(certify_subsuper(ClosedForm::psi_kappa(p, k2)).verdict, Certification::Subsolution);
  // The threshold is the edge on a scan grid; back off from it.
  double A0 = hA_threshold(p, 1.0);
  auto h = certify_subsuper(ClosedForm::subsol_hA(p, 1.0, 0.5 * A0));
  EXPECT_EQ(h.verdict, Certification::Supersolution);
  EXPECT_GE(h.min_residual, -h.tolerance);
  EXPECT_EQ(certify_subsuper(ClosedForm::supersol_apriori(p, 0.5)).verdict, Certification::Supersolution);
  EXPECT_EQ(certify_subsuper(ClosedForm::supersol_apriori(P(1, 1, 1, 3), 0.5)).verdict,
            Certification::Supersolution);
  // Exact solutions with matching boundary data are neither.
  auto e = certify_subsuper(ClosedForm::emden_critical_exact(P(1, 1, 2, 1.5)));
  EXPECT_EQ(e.verdict, Certification::Neither);
  EXPECT_LT(std::max(std::fabs(e.min_residual), std::fabs(e.max_residual)), 1e-10);
}

TEST(Certify, SolverOutputIsNeither) {
  for (const RadialProfile* prof : {&sub1(), &crit(), &sing3(), &reg3()}) {
    double phi0 = prof->w.back() - prof->branch.S(prof->params, 0.0);
    auto c = certify_subsuper(*prof, phi0, phi0);
    EXPECT_EQ(c.verdict, Certification::Neither) << to_string(prof->branch);
    EXPECT_LE(std::fabs(c.worst_margin), c.tolerance);
  }
}

TEST(Census, WinfExact) {
  auto p = P(1, 1, 1, 3);
  RadialProfile winf{.t = uniform(-18, 0, 512), .w = {}, .w_t = {}, .branch = Branch::shift_q_over_b(), .params = p};
  winf.w.assign(winf.t.size(), eikonal_constant(p));
  winf.w_t.assign(winf.t.size(), 0.0);
  auto g = gradient_bound_census(winf);
  EXPECT_DOUBLE_EQ(g.sup_r_ur, 3.0);
  EXPECT_DOUBLE_EQ(g.sup_r_ur_inner, 3.0);
}

TEST(Census, SubcriticalWindow) {
  auto g = gradient_bound_census(sub1());
  EXPECT_TRUE(std::isfinite(g.sup_r_ur));
  EXPECT_GE(g.sup_r_ur_inner, 1.0);
  EXPECT_LE(g.sup_r_ur_inner, 3.0);
  EXPECT_FALSE(g.inf_lower.has_value());
}

TEST(Census, SupercriticalLowerBound) {
  auto g = gradient_bound_census(sing3());
  ASSERT_TRUE(g.inf_lower.has_value());
  ASSERT_TRUE(g.lower_reference.has_value());
  EXPECT_NEAR(*g.lower_reference, std::sqrt(0.5), 1e-15);
  EXPECT_GE(*g.inf_lower, 0.9 * *g.lower_reference);
}

TEST(Census, AprioriMarginOnSolverOutput) {
  for (const RadialProfile* prof : {&sub1(), &crit(), &sing3(), &reg3()}) {
    auto a = apriori_margin(*prof, 1);
    EXPECT_GE(a.margin, 0.0) << to_string(prof->branch);
    EXPECT_GT(a.checked, 1000);
  }
}
