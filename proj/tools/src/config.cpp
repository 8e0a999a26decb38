#include "isosing_cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "isosing/error.hpp"
#include "isosing/model.hpp"
#include "isosing_cli/io.hpp"

namespace isosing::cli {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::InvalidInput, "config: " + msg); }

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) bad(where + " must be an object");
  std::set<std::string> ok(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) bad("unknown key '" + it.key() + "' in " + where);
}

double num(const json& j, const std::string& key) {
  if (!j.is_number()) bad("'" + key + "' must be a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) bad("'" + key + "' must be finite");
  return v;
}

int integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) bad("'" + key + "' must be an integer");
  return j.get<int>();
}

bool boolean(const json& j, const std::string& key) {
  if (!j.is_boolean()) bad("'" + key + "' must be true or false");
  return j.get<bool>();
}

std::string str(const json& j, const std::string& key) {
  if (!j.is_string()) bad("'" + key + "' must be a string");
  return j.get<std::string>();
}

std::vector<double> num_list(const json& j, const std::string& key) {
  if (!j.is_array()) bad("'" + key + "' must be an array of numbers");
  std::vector<double> v;
  for (const auto& x : j) v.push_back(num(x, key));
  return v;
}

BranchChoice parse_choice(const std::string& s) {
  if (s == "auto") return BranchChoice::Auto;
  if (s == "subcritical") return BranchChoice::Subcritical;
  if (s == "critical") return BranchChoice::Critical;
  if (s == "singular") return BranchChoice::Singular;
  if (s == "regular") return BranchChoice::Regular;
  if (s == "emden") return BranchChoice::Emden;
  bad("unknown branch '" + s + "'");
}

SolverConfig parse_solver(const json& j, int* n_theta) {
  only_keys(j, "solver", {"T0", "n_points", "newton_tol", "newton_max_iter", "damping", "continuation_steps",
                          "truncation_s", "supercritical", "ivp_rtol", "ivp_atol", "ivp_max_steps", "n_theta"});
  SolverConfig c;
  if (j.contains("T0")) c.T0 = num(j["T0"], "T0");
  if (j.contains("n_points")) c.n_points = integer(j["n_points"], "n_points");
  if (j.contains("newton_tol")) c.newton_tol = num(j["newton_tol"], "newton_tol");
  if (j.contains("newton_max_iter")) c.newton_max_iter = integer(j["newton_max_iter"], "newton_max_iter");
  if (j.contains("damping")) c.damping = num(j["damping"], "damping");
  if (j.contains("continuation_steps")) c.continuation_steps = integer(j["continuation_steps"], "continuation_steps");
  if (j.contains("truncation_s")) c.truncation_s = num(j["truncation_s"], "truncation_s");
  if (j.contains("supercritical")) {
    std::string s = str(j["supercritical"], "supercritical");
    if (s == "boundary") c.supercritical = SupercriticalContinuation::Boundary;
    else if (s == "truncation") c.supercritical = SupercriticalContinuation::Truncation;
    else bad("supercritical must be 'boundary' or 'truncation'");
  }
  if (j.contains("ivp_rtol")) c.ivp_rtol = num(j["ivp_rtol"], "ivp_rtol");
  if (j.contains("ivp_atol")) c.ivp_atol = num(j["ivp_atol"], "ivp_atol");
  if (j.contains("ivp_max_steps")) c.ivp_max_steps = integer(j["ivp_max_steps"], "ivp_max_steps");
  if (j.contains("n_theta")) *n_theta = integer(j["n_theta"], "n_theta");
  c.validate();
  return c;
}

BoundarySpec parse_boundary(const json& j) {
  BoundarySpec b;
  if (j.is_number()) {
    b.value = num(j, "boundary");
  } else if (j.is_array()) {
    b.samples = num_list(j, "boundary");
    if (b.samples.size() < 8 || b.samples.size() % 2) bad("boundary samples need an even count >= 8");
  } else if (j.is_object()) {
    only_keys(j, "boundary", {"value", "winf_offset", "samples"});
    int kinds = j.contains("value") + j.contains("winf_offset") + j.contains("samples");
    if (kinds != 1) bad("boundary needs exactly one of value, winf_offset, samples");
    if (j.contains("value")) b.value = num(j["value"], "value");
    if (j.contains("winf_offset")) b.winf_offset = num(j["winf_offset"], "winf_offset");
    if (j.contains("samples")) return parse_boundary(j["samples"]);
  } else {
    bad("boundary must be a number, an array or an object");
  }
  return b;
}

}  // namespace

const char* to_string(BranchChoice b) {
  switch (b) {
    case BranchChoice::Auto: return "auto";
    case BranchChoice::Subcritical: return "subcritical";
    case BranchChoice::Critical: return "critical";
    case BranchChoice::Singular: return "singular";
    case BranchChoice::Regular: return "regular";
    case BranchChoice::Emden: return "emden";
  }
  return "auto";
}

double BoundarySpec::constant(const ProblemParams& p) const {
  if (winf_offset) return eikonal_constant(p) + *winf_offset;
  return value;
}

BranchChoice resolve_branch(const ProblemParams& p, std::optional<double> gamma, BranchChoice choice) {
  const bool sub = p.regime() == Regime::Subcritical;
  const double gmax = 2.0 / p.b;
  auto close = [](double x, double y) { return std::fabs(x - y) <= 1e-12 * std::max(1.0, std::fabs(y)); };
  if (gamma && !(*gamma >= 0.0)) throw Error(ErrorKind::InvalidParameter, "gamma must be nonnegative");
  if (choice == BranchChoice::Auto) {
    if (!gamma) throw Error(ErrorKind::InvalidParameter, "branch 'auto' needs gamma");
    if (sub) {
      if (*gamma > gmax && !close(*gamma, gmax))
        throw Error(ErrorKind::InvalidParameter, "gamma must lie in [0, 2/b] when q < 2");
      if (close(*gamma, gmax)) return BranchChoice::Critical;
      if (*gamma == 0.0) return BranchChoice::Regular;
      return BranchChoice::Subcritical;
    }
    if (*gamma == 0.0) return BranchChoice::Regular;
    if (close(*gamma, p.q / p.b)) return BranchChoice::Singular;
    throw Error(ErrorKind::InvalidParameter, "for q > 2 gamma must be 0 or q/b");
  }
  switch (choice) {
    case BranchChoice::Subcritical:
      if (!sub) throw Error(ErrorKind::InvalidParameter, "subcritical branch needs 1 < q < 2");
      if (!gamma) throw Error(ErrorKind::InvalidParameter, "subcritical branch needs gamma");
      if (!(*gamma > 0.0 && *gamma < gmax))
        throw Error(ErrorKind::InvalidParameter, "subcritical branch needs 0 < gamma < 2/b");
      break;
    case BranchChoice::Critical:
      if (!sub) throw Error(ErrorKind::InvalidParameter, "critical branch needs 1 < q < 2");
      if (gamma && !close(*gamma, gmax)) throw Error(ErrorKind::InvalidParameter, "critical branch has gamma = 2/b");
      break;
    case BranchChoice::Singular:
      if (sub) throw Error(ErrorKind::InvalidParameter, "singular branch needs q > 2");
      if (gamma && !close(*gamma, p.q / p.b)) throw Error(ErrorKind::InvalidParameter, "singular branch has gamma = q/b");
      break;
    case BranchChoice::Regular:
      if (gamma && *gamma != 0.0) throw Error(ErrorKind::InvalidParameter, "regular branch has gamma = 0");
      break;
    case BranchChoice::Emden:
      if (!gamma) throw Error(ErrorKind::InvalidParameter, "emden branch needs gamma");
      if (*gamma > gmax && !close(*gamma, gmax))
        throw Error(ErrorKind::InvalidParameter, "emden branch needs gamma in [0, 2/b]");
      break;
    case BranchChoice::Auto: break;
  }
  return choice;
}

double target_gamma(const ProblemParams& p, std::optional<double> gamma, BranchChoice b) {
  switch (b) {
    case BranchChoice::Critical: return 2.0 / p.b;
    case BranchChoice::Singular: return p.q / p.b;
    case BranchChoice::Regular: return 0.0;
    default: return gamma.value_or(0.0);
  }
}

RunConfig parse_config(const json& j) {
  only_keys(j, "config", {"params", "branch", "gamma", "boundary", "solver", "verification", "output", "sweep"});
  RunConfig c;
  c.echo = j;
  if (!j.contains("params")) bad("missing 'params'");
  const json& pj = j["params"];
  only_keys(pj, "params", {"m", "a", "b", "q"});
  for (const char* k : {"m", "a", "b", "q"})
    if (!pj.contains(k)) bad(std::string("params needs '") + k + "'");
  if (j.contains("gamma")) c.gamma = num(j["gamma"], "gamma");
  c.params = ProblemParams::make(num(pj["m"], "m"), num(pj["a"], "a"), num(pj["b"], "b"), num(pj["q"], "q"), c.gamma);
  if (j.contains("branch")) c.branch = parse_choice(str(j["branch"], "branch"));
  if (j.contains("boundary")) c.boundary = parse_boundary(j["boundary"]);
  if (j.contains("solver")) c.solver = parse_solver(j["solver"], &c.n_theta);
  if (c.n_theta < 8 || c.n_theta % 2) bad("n_theta must be even and >= 8");
  if (c.boundary.nonradial() && j.contains("solver") && j["solver"].contains("n_theta") &&
      static_cast<int>(c.boundary.samples.size()) != c.n_theta)
    bad("n_theta disagrees with the number of boundary samples");
  if (c.boundary.nonradial()) c.n_theta = static_cast<int>(c.boundary.samples.size());
  if (c.boundary.winf_offset && c.params.regime() != Regime::Supercritical)
    bad("winf_offset needs q > 2");
  if (j.contains("verification")) {
    const json& v = j["verification"];
    only_keys(v, "verification", {"mass", "integrability", "sandwich", "census", "seeds"});
    if (v.contains("mass")) c.verify.mass = boolean(v["mass"], "mass");
    if (v.contains("integrability")) c.verify.integrability = boolean(v["integrability"], "integrability");
    if (v.contains("sandwich")) c.verify.sandwich = boolean(v["sandwich"], "sandwich");
    if (v.contains("census")) c.verify.census = boolean(v["census"], "census");
    if (v.contains("seeds")) c.verify.seeds = boolean(v["seeds"], "seeds");
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    only_keys(o, "output", {"profile", "field", "report", "sweep"});
    if (o.contains("profile")) c.output.profile = str(o["profile"], "profile");
    if (o.contains("field")) c.output.field = str(o["field"], "field");
    if (o.contains("report")) c.output.report = str(o["report"], "report");
    if (o.contains("sweep")) c.output.sweep = str(o["sweep"], "sweep");
  }
  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    only_keys(s, "sweep", {"q", "gamma", "a", "b", "m"});
    SweepGrid g;
    if (s.contains("q")) g.q = num_list(s["q"], "q");
    if (s.contains("gamma")) g.gamma = num_list(s["gamma"], "gamma");
    if (s.contains("a")) g.a = num_list(s["a"], "a");
    if (s.contains("b")) g.b = num_list(s["b"], "b");
    if (s.contains("m")) g.m = num_list(s["m"], "m");
    c.sweep = g;
  } else {
    c.branch = resolve_branch(c.params, c.gamma, c.branch);
    if (c.boundary.nonradial() && c.branch == BranchChoice::Emden)
      bad("non-radial boundary data are not supported on the emden branch");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::string text = read_text_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

}  // namespace isosing::cli
