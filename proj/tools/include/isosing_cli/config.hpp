#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "isosing/params.hpp"
#include "isosing/radial.hpp"

namespace isosing::cli {

enum class BranchChoice { Auto, Subcritical, Critical, Singular, Regular, Emden };
const char* to_string(BranchChoice b);

// Boundary datum on r = 1: a constant, an offset from w_inf(1) (the singular
// q > 2 branch only exists for data just below it), or samples phi(theta_j).
struct BoundarySpec {
  double value = 0.0;
  std::optional<double> winf_offset;
  std::vector<double> samples;

  bool nonradial() const { return !samples.empty(); }
  double constant(const ProblemParams& p) const;
};

struct VerifyToggles {
  bool mass = true;
  bool integrability = true;
  bool sandwich = true;
  bool census = true;
  bool seeds = true;  // re-solve from perturbed seeds (uniqueness evidence)
};

struct OutputNames {
  std::string profile = "profile.csv";
  std::string field = "field.csv";
  std::string report = "report.json";
  std::string sweep = "sweep.csv";
};

// Cartesian grid; a missing axis falls back to the base parameters.
struct SweepGrid {
  std::vector<double> q, gamma, a, b, m;
};

struct RunConfig {
  ProblemParams params;
  BranchChoice branch = BranchChoice::Auto;
  std::optional<double> gamma;
  BoundarySpec boundary;
  SolverConfig solver;
  int n_theta = 64;
  VerifyToggles verify;
  OutputNames output;
  std::optional<SweepGrid> sweep;
  nlohmann::json echo;
};

// Every key is checked; unknown keys, wrong types and violated module
// preconditions throw isosing::Error (exit code 1).
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// The branch a (params, gamma, choice) triple resolves to, with its
// preconditions checked. Auto picks from gamma and the regime.
BranchChoice resolve_branch(const ProblemParams& p, std::optional<double> gamma, BranchChoice choice);

// gamma the resolved branch is expected to produce.
double target_gamma(const ProblemParams& p, std::optional<double> gamma, BranchChoice b);

}  // namespace isosing::cli
