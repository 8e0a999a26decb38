#pragma once

#include <optional>
#include <vector>

#include "isosing/asymptotics.hpp"
#include "isosing/radial.hpp"

namespace isosing {

// Solution on [T0, 0] x S^1, row-major: w[i * n_theta + j] at (t_i, theta_j),
// theta_j = 2 pi j / n_theta.
struct Field2D {
  std::vector<double> t;
  int n_theta = 0;
  std::vector<double> w;
  std::vector<double> w_t;
  Branch branch;
  ProblemParams params;
  int iterations = 0;
  double residual = 0.0;

  std::size_t n_t() const { return t.size(); }
  double at(std::size_t i, int j) const { return w[i * static_cast<std::size_t>(n_theta) + static_cast<std::size_t>(j)]; }
  double theta(int j) const;
  // Angular means of w and w_t per t-row.
  std::vector<double> mean_w() const;
  std::vector<double> mean_w_t() const;
  // Angular mean of u = w - S.
  std::vector<double> mean_u() const;
  // Radial profile made of the angular means.
  RadialProfile mean_profile() const;
  void check() const;
};

// Samples phi(theta_j) for j = 0..n-1.
using Boundary = std::vector<double>;

Field2D replicate(const RadialProfile& prof, int n_theta);

// Damped Newton on the 5-point (t, theta) stencil with periodic theta. The
// radial solver supplies the seed and the angular mean closure; the
// oscillating part has a homogeneous Neumann condition at T0.
Field2D solve_nonradial(const ProblemParams& p, double gamma, const Boundary& phi, const SolverConfig& cfg = {},
                        int n_theta = 64, const std::vector<double>* seed = nullptr);

struct ModeDecay {
  std::vector<double> t;
  int K = 0;
  // norms[k-1][i] = ||w_k(t_i, .)||_{L^2(S^1)} for k = 1..K; likewise for w_t.
  std::vector<std::vector<double>> norms;
  std::vector<std::vector<double>> norms_t;
  std::vector<double> row_norm;    // ||w*(t_i, .)||, all k >= 1
  std::vector<double> parseval_gap;  // | sum_k ||w_k||^2 - ||w||^2 | / ||w||^2 per row (k = 0 included)
  std::vector<std::optional<double>> beta_hat;
  std::vector<std::optional<double>> beta_hat_t;
  FitWindow window{0.0, 0.0};
};

ModeDecay fourier_mode_norms(const Field2D& f, int K = 4, std::optional<FitWindow> window = std::nullopt);

struct AngularVariation {
  std::vector<double> oscillation;  // max_theta w - min_theta w per row
  double sup_inner = 0.0;
  FitWindow window{0.0, 0.0};
};

AngularVariation angular_variation(const Field2D& f, std::optional<FitWindow> window = std::nullopt);

}  // namespace isosing
