#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "isosing/annulus2d.hpp"
#include "isosing/error.hpp"
#include "isosing/radial.hpp"
#include "isosing_cli/config.hpp"

namespace isosing::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kNoConvergence = 2, kVerificationFailed = 3, kIo = 4 };

int exit_code_for(const Error& e);

struct Options {
  std::string config;
  std::string out = ".";
  std::string profile;  // verify: defaults to <out>/<output.profile>
  int jobs = 1;
  std::optional<unsigned long long> seed;  // reserved, every algorithm is deterministic
  bool inject_sign_error = false;          // oracle negative control
};

// A named check: pass iff lo <= value <= hi. Unevaluated checks (the quantity
// could not be computed) make the verdict inconclusive instead of failing it.
struct Check {
  std::string name;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool evaluated = true;
  std::string note;
  bool pass() const { return evaluated && value >= lo && value <= hi; }
};

enum class Outcome { Pass, Fail, Inconclusive };
const char* to_string(Outcome o);

struct Verdict {
  std::string theorem;  // T1_Classification, T2_ExistenceUniqueness, T3_Dichotomy
  std::vector<Check> checks;
  Outcome outcome() const;
};

nlohmann::json to_json(const Verdict& v);

// Fits, verification evidence and verdicts for one radial profile.
struct Assessment {
  nlohmann::json fits = nlohmann::json::object();
  nlohmann::json verification = nlohmann::json::object();
  std::vector<Verdict> verdicts;
  bool failed() const;
  bool inconclusive() const;
};

Branch branch_for(const ProblemParams& p, std::optional<double> gamma, BranchChoice b);
RadialProfile run_radial(const ProblemParams& p, std::optional<double> gamma, BranchChoice b, double phi0,
                         const SolverConfig& cfg);

// Max difference between the profile and re-solves from two perturbed seeds.
double seed_spread(const RadialProfile& prof, double phi0, const SolverConfig& cfg);

Assessment assess_profile(const RunConfig& cfg, const RadialProfile& prof, double phi0,
                          std::optional<double> seed_diff);
Assessment assess_field(const RunConfig& cfg, const Field2D& field);

struct OracleReport {
  nlohmann::json report;
  bool pass = false;
};
OracleReport run_oracle(bool inject_sign_error);

int cmd_solve(const Options& o, std::ostream& log);
int cmd_verify(const Options& o, std::ostream& log);
int cmd_sweep(const Options& o, std::ostream& log);
int cmd_oracle(const Options& o, std::ostream& log);

}  // namespace isosing::cli
