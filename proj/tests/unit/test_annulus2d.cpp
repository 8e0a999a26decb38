#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

using std::isnan;  // Boost 1.74 pchip calls isnan unqualified
#include <boost/math/interpolators/pchip.hpp>
#include <gtest/gtest.h>

#include "isosing/annulus2d.hpp"
#include "isosing/asymptotics.hpp"
#include "isosing/error.hpp"
#include "isosing/model.hpp"
#include "isosing/radial.hpp"

using namespace isosing;

namespace {

ProblemParams P(double m, double a, double b, double q) { return ProblemParams::make(m, a, b, q); }

Boundary cosine(int n, double amp, int k = 1) {
  Boundary phi(n);
  for (int j = 0; j < n; ++j) phi[j] = amp * std::cos(k * 2 * std::numbers::pi * j / n);
  return phi;
}

double max_dev_from_radial(const Field2D& f, const RadialProfile& r) {
  double d = 0;
  for (std::size_t i = 0; i < f.n_t(); ++i)
    for (int j = 0; j < f.n_theta; ++j) d = std::max(d, std::fabs(f.at(i, j) - r.w[i]));
  return d;
}

SolverConfig grid(int n) {
  SolverConfig cfg;
  cfg.n_points = n;
  return cfg;
}

// One cos-theta field shared by several tests.
const Field2D& cos_field() {
  static const Field2D f = solve_nonradial(P(1, 1, 1, 1.5), 1.0, cosine(64, 0.3), grid(2048), 64);
  return f;
}

}  // namespace

TEST(Field, ReplicateIsRadial) {
  auto prof = solve_bvp_subcritical(P(1, 1, 1, 1.5), 1.0, 0.0, grid(1024));
  auto f = replicate(prof, 32);
  EXPECT_EQ(f.n_theta, 32);
  EXPECT_EQ(max_dev_from_radial(f, prof), 0.0);
  auto av = angular_variation(f);
  EXPECT_LT(av.sup_inner, 1e-12);
  for (double o : av.oscillation) EXPECT_LT(o, 1e-12);
  auto md = fourier_mode_norms(f);
  for (const auto& k : md.norms)
    for (double v : k) EXPECT_LT(v, 1e-10);
  auto mean = f.mean_w();
  for (std::size_t i = 0; i < mean.size(); ++i) EXPECT_NEAR(mean[i], prof.w[i], 1e-14 * (1 + std::fabs(prof.w[i])));
}

TEST(Field, RadialDataMatchesRadialSolver) {
  auto p = P(1, 1, 1, 1.5);
  auto cfg = grid(2048);
  auto f = solve_nonradial(p, 1.0, Boundary(64, 0.0), cfg, 64);
  auto r = solve_bvp_subcritical(p, 1.0, 0.0, cfg);
  EXPECT_LT(max_dev_from_radial(f, r), 1e-8);
  EXPECT_LE(f.residual, 1e-9);
}

TEST(Field, BoundaryRowAndOscillation) {
  const auto& f = cos_field();
  auto phi = cosine(64, 0.3);
  for (int j = 0; j < 64; ++j) EXPECT_DOUBLE_EQ(f.at(f.n_t() - 1, j), phi[j]);
  auto av = angular_variation(f);
  EXPECT_NEAR(av.oscillation.back(), 0.6, 1e-12);
  EXPECT_NEAR(f.mean_w().back(), 0.0, 1e-15);
}

TEST(Field, ParsevalIdentity) {
  auto md = fourier_mode_norms(cos_field(), 32);
  for (double g : md.parseval_gap) EXPECT_LT(g, 1e-12);
  for (const auto& k : md.norms)
    for (double v : k) EXPECT_GE(v, 0.0);
}

// Direct DFT oracle for the mode-1 norm, independent of the library's
// transform: ||w_1||_{L^2(S^1)}^2 = pi (|a_1|^2 + |b_1|^2) for w = a cos + b sin.
TEST(Field, ModeNormsMatchDirectDft) {
  const auto& f = cos_field();
  auto md = fourier_mode_norms(f, 2);
  int n = f.n_theta;
  for (std::size_t i = 0; i < f.n_t(); i += 97) {
    double a = 0, b = 0;
    for (int j = 0; j < n; ++j) {
      double th = 2 * std::numbers::pi * j / n;
      a += f.at(i, j) * std::cos(th) * 2.0 / n;
      b += f.at(i, j) * std::sin(th) * 2.0 / n;
    }
    double norm = std::sqrt(std::numbers::pi * (a * a + b * b));
    EXPECT_NEAR(md.norms[0][i], norm, 1e-12 + 1e-9 * norm);
  }
}

TEST(Field, ModeOneDecayRate) {
  auto md = fourier_mode_norms(cos_field());
  ASSERT_TRUE(md.beta_hat[0].has_value());
  ASSERT_TRUE(md.beta_hat_t[0].has_value());
  double beta = 0.5;
  EXPECT_GE(*md.beta_hat[0], 0.9 * beta);
  // The same rate for w* and w*_t, within 20%.
  EXPECT_NEAR(*md.beta_hat_t[0] / *md.beta_hat[0], 1.0, 0.2);
  // Linearised about the mean, mode k of -w_tt - w_thth decays like e^{k t};
  // mode 1 therefore decays at rate 1 once the nonlinear coupling has died.
  EXPECT_NEAR(*md.beta_hat[0], 1.0, 5e-2);
  // Even modes are not excited by cos theta beyond the nonlinear coupling.
  for (double v : md.norms[1]) EXPECT_LT(v, md.norms[0].back());
}

TEST(Field, MeanSlopeIsGamma) {
  auto mean = cos_field().mean_profile();
  EXPECT_NEAR(fit_gamma(mean).gamma_hat, 1.0, 1e-2);
}

TEST(Field, SeedInsensitive) {
  auto p = P(1, 1, 1, 1.5);
  auto phi = cosine(32, 0.3);
  auto cfg = grid(1024);
  auto a = solve_nonradial(p, 1.0, phi, cfg, 32);
  std::vector<double> seed = a.w;
  for (std::size_t i = 0; i < a.n_t(); ++i)
    for (int j = 0; j < 32; ++j) {
      double s = a.t[i] / cfg.T0;
      seed[i * 32 + j] += 0.1 * std::sin(std::numbers::pi * s) * (1 + 0.5 * std::sin(2 * a.theta(j)));
    }
  auto b = solve_nonradial(p, 1.0, phi, cfg, 32, &seed);
  double d = 0;
  for (std::size_t k = 0; k < a.w.size(); ++k) d = std::max(d, std::fabs(a.w[k] - b.w[k]));
  EXPECT_LT(d, 1e-8);
}

// Radial data: convergence of the 2-D solution towards a fine radial
// reference, interpolated monotonically onto the coarse grids.
TEST(Field, RefinementOrderRadialData) {
  auto p = P(1, 1, 1, 1.5);
  auto fine = solve_bvp_subcritical(p, 1.0, 0.0, grid(16385));
  std::vector<double> ft = fine.t, fw = fine.w;
  boost::math::interpolators::pchip<std::vector<double>> ref(std::move(ft), std::move(fw));
  std::vector<double> err;
  for (int n : {257, 513, 1025}) {
    auto f = solve_nonradial(p, 1.0, Boundary(16, 0.0), grid(n), 16);
    double e = 0;
    for (std::size_t i = 0; i < f.n_t(); ++i) e = std::max(e, std::fabs(f.at(i, 3) - ref(f.t[i])));
    err.push_back(e);
  }
  double order = std::log2(err[1] / err[2]);
  EXPECT_GE(order, 1.8) << err[0] << " " << err[1] << " " << err[2];
}

TEST(Field, SupercriticalZeroDataSymmetric) {
  auto p = P(1, 1, 1, 3);
  auto cfg = grid(2048);
  Boundary zero(64, 0.0);
  // Non-symmetric seed: the regular radial profile plus an angular bump that
  // vanishes on the boundary row and decays inwards (deep rows carry the
  // e^{(2-q)t}-weighted gradient term, where any bump is far from a solution).
  auto rad = solve_regular(p, 0.0, cfg);
  auto seed = replicate(rad, 64).w;
  for (std::size_t i = 0; i < rad.size(); ++i)
    for (int j = 0; j < 64; ++j) {
      double t = rad.t[i];
      seed[i * 64 + j] += 0.1 * (-t) * std::exp(2 * t) * std::cos(2 * std::numbers::pi * j / 64);
    }
  auto f = solve_nonradial(p, 0.0, zero, cfg, 64, &seed);
  EXPECT_LT(angular_variation(f).sup_inner, 1e-8);
  EXPECT_LT(max_dev_from_radial(f, rad), 1e-8);
}

TEST(Field, SupercriticalSingularSymmetric) {
  auto p = P(1, 1, 1, 3);
  auto cfg = grid(2048);
  double phi0 = eikonal_constant(p) - 0.1;
  auto f = solve_nonradial(p, 3.0, Boundary(64, phi0), cfg, 64);
  EXPECT_EQ(f.branch.kind, BranchKind::ShiftQOverB);
  EXPECT_LT(angular_variation(f).sup_inner, 1e-8);
  auto rad = solve_supercritical_singular(p, phi0, cfg);
  EXPECT_LT(max_dev_from_radial(f, rad), 1e-8);
}

TEST(Field, InvalidInputs) {
  auto p = P(1, 1, 1, 1.5);
  auto expect_kind = [](auto f, ErrorKind k) {
    try {
      f();
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), k) << e.what();
    }
  };
  expect_kind([&] { solve_nonradial(p, 1.0, Boundary(10, 0.0), grid(256), 64); }, ErrorKind::InvalidInput);
  expect_kind([&] { solve_nonradial(p, 2.5, Boundary(16, 0.0), grid(256), 16); }, ErrorKind::PreconditionViolation);
  Boundary bad(16, 0.0);
  bad[3] = NAN;
  expect_kind([&] { solve_nonradial(p, 1.0, bad, grid(256), 16); }, ErrorKind::InvalidInput);
}
