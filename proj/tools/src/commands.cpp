#include "isosing_cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

#include "isosing/asymptotics.hpp"
#include "isosing/model.hpp"
#include "isosing/special.hpp"
#include "isosing/transform.hpp"
#include "isosing/verify.hpp"
#include "isosing/version.hpp"
#include "isosing_cli/io.hpp"

namespace isosing::cli {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Tolerances of the verdict checks.
constexpr double kGammaTol = 1e-2;
constexpr double kMassRelTol = 1e-2;
constexpr double kEllTol = 5e-2;
constexpr double kMarginTol = 1e-8;
constexpr double kSeedTol = 1e-8;
constexpr double kResidualTol = 1e-9;
constexpr double kSymmetryTol = 1e-8;

json window_json(const FitWindow& w) { return json{{"t_lo", w.t_lo}, {"t_hi", w.t_hi}}; }

json opt_num(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

json fit_json(const SingularityFit& f) {
  return json{{"gamma_hat", f.gamma_hat},
              {"ell_hat", f.ell_hat},
              {"beta_hat", opt_num(f.beta_hat)},
              {"loglog_coefficient", opt_num(f.loglog_coefficient)},
              {"loglog_suspect", f.loglog_suspect},
              {"residual", f.residual},
              {"window", window_json(f.window)}};
}

Check within(std::string name, double value, double target, double tol) {
  return Check{std::move(name), value, target - tol, target + tol};
}

Check at_least(std::string name, double value, double lo) { return Check{std::move(name), value, lo, kInf}; }

Check unevaluated(std::string name, std::string why) {
  Check c{std::move(name), kNaN, kNaN, kNaN};
  c.evaluated = false;
  c.note = std::move(why);
  return c;
}

bool is_critical(const RadialProfile& prof) { return prof.branch.kind == BranchKind::LambdaCritical; }

}  // namespace

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::NoConvergence:
    case ErrorKind::BranchCollapse:
    case ErrorKind::FiniteTimeBlowup:
    case ErrorKind::StiffnessFault:
    case ErrorKind::NumericalFault:
      return kNoConvergence;
    default:
      return kValidation;
  }
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Outcome Verdict::outcome() const {
  bool missing = false;
  for (const Check& c : checks) {
    if (!c.evaluated) {
      missing = true;
    } else if (!c.pass()) {
      return Outcome::Fail;
    }
  }
  return missing || checks.empty() ? Outcome::Inconclusive : Outcome::Pass;
}

json to_json(const Verdict& v) {
  json checks = json::array();
  for (const Check& c : v.checks) {
    json j{{"name", c.name}, {"evaluated", c.evaluated}, {"pass", c.pass()}};
    j["value"] = c.value;
    j["lo"] = c.lo;
    j["hi"] = c.hi;
    if (!c.note.empty()) j["note"] = c.note;
    checks.push_back(j);
  }
  return json{{"theorem", v.theorem}, {"outcome", to_string(v.outcome())}, {"checks", checks}};
}

bool Assessment::failed() const {
  return std::any_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.outcome() == Outcome::Fail; });
}

bool Assessment::inconclusive() const {
  return std::any_of(verdicts.begin(), verdicts.end(),
                     [](const Verdict& v) { return v.outcome() == Outcome::Inconclusive; });
}

Branch branch_for(const ProblemParams& p, std::optional<double> gamma, BranchChoice b) {
  switch (b) {
    case BranchChoice::Subcritical: return Branch::shift_gamma(*gamma);
    case BranchChoice::Critical: return Branch::lambda_critical();
    case BranchChoice::Singular: return Branch::shift_q_over_b();
    case BranchChoice::Regular: return Branch::no_shift();
    case BranchChoice::Emden: {
      double g = gamma.value_or(0.0);
      if (std::fabs(g - 2.0 / p.b) <= 1e-14 * (2.0 / p.b)) return Branch::lambda_critical();
      return g == 0.0 ? Branch::no_shift() : Branch::shift_gamma(g);
    }
    case BranchChoice::Auto: break;
  }
  throw Error(ErrorKind::PreconditionViolation, "branch must be resolved before use");
}

RadialProfile run_radial(const ProblemParams& p, std::optional<double> gamma, BranchChoice b, double phi0,
                         const SolverConfig& cfg) {
  switch (b) {
    case BranchChoice::Subcritical: return solve_bvp_subcritical(p, *gamma, phi0, cfg);
    case BranchChoice::Critical: return solve_bvp_critical(p, phi0, cfg);
    case BranchChoice::Singular: return solve_supercritical_singular(p, phi0, cfg);
    case BranchChoice::Regular: return solve_regular(p, phi0, cfg);
    case BranchChoice::Emden: return solve_emden(p, gamma.value_or(0.0), phi0, cfg);
    case BranchChoice::Auto: break;
  }
  throw Error(ErrorKind::PreconditionViolation, "branch must be resolved before use");
}

double seed_spread(const RadialProfile& prof, double phi0, const SolverConfig& cfg) {
  // Perturbations vanish at t = 0 so the boundary row starts satisfied. Both
  // push w up: pushing the regular q > 2 profile down stalls the line search.
  const double T0 = prof.t.front();
  double spread = 0.0;
  for (double amp : {0.2, 0.05}) {
    std::vector<double> seed(prof.w);
    for (std::size_t i = 0; i < seed.size(); ++i) {
      double s = prof.t[i] / T0;
      seed[i] += amp * (std::sin(std::numbers::pi * s) + 0.5 * s);
    }
    RadialProfile other = solve_collocation(prof.params, prof.branch, prof.emden, phi0, cfg, &seed);
    for (std::size_t i = 0; i < seed.size(); ++i) spread = std::max(spread, std::fabs(other.w[i] - prof.w[i]));
  }
  return spread;
}

namespace {

struct Sandwich {
  json evidence = json::object();
  std::vector<Check> checks;
};

// Barriers per branch: Emden solution v (m = 0) below, v + m c^q eta above,
// with psi_kappa2 / psi_kappa1 standing in for v on the critical branch; the
// two logarithmic barriers for q > 2 (the lower one only bounds singular
// solutions).
Sandwich sandwich_for(const RunConfig& cfg, const RadialProfile& prof, double phi0, double c_grad) {
  Sandwich s;
  const ProblemParams& p = prof.params;
  Curve u = curve_u(prof);
  auto record = [&](const std::string& name, const SandwichMargins& m, bool lower, bool upper) {
    s.evidence[name] = json{{"lower", lower ? json(m.lower) : json(nullptr)},
                            {"upper", upper ? json(m.upper) : json(nullptr)},
                            {"t_lower", m.t_lower},
                            {"t_upper", m.t_upper}};
    if (lower) s.checks.push_back(at_least(name + ".lower_margin", m.lower, -kMarginTol));
    if (upper) s.checks.push_back(at_least(name + ".upper_margin", m.upper, -kMarginTol));
  };
  if (prof.emden) return s;
  if (p.regime() == Regime::Supercritical) {
    Curve lo = curve_from(prof.t, [&](double r) { return supercritical_lower_barrier(p, r); });
    Curve hi = curve_from(prof.t, [&](double r) { return supercritical_upper_barrier(p, r); });
    bool singular = prof.branch.kind == BranchKind::ShiftQOverB;
    record("log_barriers", sandwich_check(u, lo, hi), singular, true);
    return s;
  }
  auto eta = [&](double r) { return p.m * std::pow(c_grad, p.q) * eta_profile(p.q, r); };
  if (is_critical(prof)) {
    auto [k1, k2] = kappa_bounds(p);
    Curve lo = curve_from(prof.t, [&](double r) { return psi_kappa(p, k2, r).value; });
    Curve hi = curve_from(prof.t, [&](double r) { return psi_kappa(p, k1, r).value + eta(r); });
    record("psi_kappa", sandwich_check(u, lo, hi), true, true);
  }
  SolverConfig sc = cfg.solver;
  sc.n_points = static_cast<int>(prof.size());
  sc.T0 = prof.t.front();
  double gamma = is_critical(prof) ? 2.0 / p.b : prof.branch.gamma;
  RadialProfile v = solve_emden(p, gamma, phi0, sc);
  Curve lo = curve_u(v);
  Curve hi{v.t, lo.v};
  for (std::size_t i = 0; i < hi.t.size(); ++i) hi.v[i] += eta(std::exp(hi.t[i]));
  record("emden_companion", sandwich_check(u, lo, hi), true, true);
  return s;
}

}  // namespace

Assessment assess_profile(const RunConfig& cfg, const RadialProfile& prof, double phi0,
                          std::optional<double> seed_diff) {
  Assessment A;
  const ProblemParams& p = prof.params;
  const bool super = p.regime() == Regime::Supercritical && !prof.emden;
  const bool singular = prof.branch.kind == BranchKind::ShiftQOverB;
  const bool regular = prof.branch.kind == BranchKind::NoShift;
  const double gamma_target =
      is_critical(prof) ? 2.0 / p.b : singular ? p.q / p.b : regular ? 0.0 : prof.branch.gamma;

  // Fits.
  SingularityFit sf = is_critical(prof) ? fit_critical(prof) : fit_gamma(prof);
  A.fits["singularity"] = fit_json(sf);
  A.fits["gamma_target"] = gamma_target;
  std::optional<DecayFit> decay;
  if (prof.branch.kind == BranchKind::ShiftGamma) {
    FitWindow w = default_window(prof);
    try {
      decay = fit_decay(prof.t, prof.w, w, DecayLimit::Fitted);
      double pred = std::min(2.0 - p.q, 2.0 - p.b * prof.branch.gamma);
      if (prof.emden) pred = 2.0 - p.b * prof.branch.gamma;
      A.fits["decay"] = json{{"beta_hat", decay->beta_hat},
                             {"limit", decay->limit},
                             {"amplitude", decay->amplitude},
                             {"residual", decay->residual},
                             {"predicted", pred},
                             {"window", window_json(decay->window)}};
    } catch (const Error& e) {
      A.fits["decay"] = json{{"error", e.what()}};
    }
  }
  std::optional<HolderFit> holder;
  if (regular && p.regime() == Regime::Supercritical) {
    try {
      holder = holder_exponent(prof, p.q);
      A.fits["holder"] = json{{"exponent", holder->exponent},
                              {"u0", holder->u0},
                              {"residual", holder->residual},
                              {"reference_general", holder->reference_general},
                              {"reference_radial", holder->reference_radial},
                              {"window", window_json(holder->window)}};
    } catch (const Error& e) {
      A.fits["holder"] = json{{"error", e.what()}};
    }
  }

  // Verification evidence.
  json& V = A.verification;
  V["tolerances"] = json{{"gamma", kGammaTol}, {"mass_relative", kMassRelTol}, {"ell", kEllTol},
                         {"margin", kMarginTol}, {"seeds", kSeedTol}, {"residual", kResidualTol}};
  CertifyResult cert = certify_subsuper(prof, phi0);
  V["residual_sign"] = json{{"min", cert.min_residual}, {"max", cert.max_residual},
                            {"verdict", to_string(cert.verdict)}};
  std::optional<double> mass;
  if (cfg.verify.mass) {
    try {
      MassEstimate m3 = distributional_mass(prof, TestFunction::Cubic);
      MassEstimate m4 = distributional_mass(prof, TestFunction::Quartic);
      mass = m3.mass;
      V["mass"] = json{{"mass_estimate", m3.mass}, {"mass_target", gamma_target}, {"partial", m3.partial},
                       {"tail_u", m3.tail_u}, {"tail_reaction", m3.tail_reaction},
                       {"tail_balanced", m3.tail_balanced}, {"tail_fit_residual", m3.tail_fit_residual},
                       {"quartic_test_function", m4.mass}};
    } catch (const Error& e) {
      V["mass"] = json{{"error", e.what()}, {"partial", opt_num(e.detail())}, {"mass_target", gamma_target}};
    }
  }
  std::optional<IntegrabilityReport> integ;
  if (cfg.verify.integrability) {
    try {
      integ = integrability_report(prof);
      auto tail = [](const IntegrandTail& t) {
        return json{{"flag", to_string(t.flag)}, {"exponent", t.exponent}, {"log_power", opt_num(t.log_power)},
                    {"partial", t.partial}, {"total", opt_num(t.total)}, {"fit_residual", t.fit_residual}};
      };
      V["integrable_exp"] = tail(integ->exp_term);
      V["integrable_grad"] = tail(integ->grad_term);
    } catch (const Error& e) {
      V["integrability_error"] = e.what();
    }
  }
  std::optional<GradientCensus> census;
  std::optional<AprioriMargin> apriori;
  if (cfg.verify.census) {
    census = gradient_bound_census(prof);
    V["gradient_census"] = json{{"sup_r_ur", census->sup_r_ur}, {"sup_r_ur_inner", census->sup_r_ur_inner},
                                {"t_at_sup", census->t_at_sup}, {"inf_lower", opt_num(census->inf_lower)},
                                {"lower_reference", opt_num(census->lower_reference)},
                                {"window", window_json(census->window)}};
    if (!prof.emden) {
      apriori = apriori_margin(prof);
      V["apriori"] = json{{"margin", apriori->margin}, {"t_worst", apriori->t_worst}, {"checked", apriori->checked}};
    }
  }
  std::vector<Check> sandwich_checks;
  if (cfg.verify.sandwich) {
    try {
      double c_grad = census ? census->sup_r_ur : gradient_bound_census(prof).sup_r_ur;
      Sandwich s = sandwich_for(cfg, prof, phi0, c_grad);
      V["sandwich_margins"] = s.evidence;
      sandwich_checks = s.checks;
    } catch (const Error& e) {
      V["sandwich_margins"] = json{{"error", e.what()}};
      sandwich_checks.push_back(unevaluated("sandwich", e.what()));
    }
  }
  if (seed_diff) V["seed_spread"] = *seed_diff;

  // Verdicts.
  auto mass_check = [&]() {
    if (!cfg.verify.mass) return unevaluated("mass", "disabled");
    if (!mass) return unevaluated("mass", V["mass"].value("error", std::string("not computed")));
    double tol = gamma_target > 0.0 ? kMassRelTol * gamma_target : kMassRelTol;
    return within("mass", *mass, gamma_target, tol);
  };
  auto flag_check = [&](const char* name, const IntegrandTail* t, Integrability want) {
    if (!t) return unevaluated(name, "integrability not computed");
    Check c{name, t->flag == want ? 1.0 : 0.0, 1.0, 1.0};
    c.note = std::string("flag ") + to_string(t->flag) + ", expected " + to_string(want);
    return c;
  };

  if (!super) {
    Verdict t1{"T1_Classification", {}};
    t1.checks.push_back(within("gamma_hat", sf.gamma_hat, gamma_target, kGammaTol));
    if (is_critical(prof)) t1.checks.push_back(within("ell_hat", sf.ell_hat, p.critical_constant(), kEllTol));
    t1.checks.push_back(mass_check());
    if (cfg.verify.integrability) {
      t1.checks.push_back(flag_check("integrable_exp", integ ? &integ->exp_term : nullptr, Integrability::Integrable));
      if (!prof.emden)
        t1.checks.push_back(
            flag_check("integrable_grad", integ ? &integ->grad_term : nullptr, Integrability::Integrable));
    }
    A.verdicts.push_back(t1);

    Verdict t2{"T2_ExistenceUniqueness", {}};
    t2.checks.push_back(Check{"residual_max_abs", std::max(-cert.min_residual, cert.max_residual), 0.0, kResidualTol});
    if (seed_diff) t2.checks.push_back(Check{"seed_spread", *seed_diff, 0.0, kSeedTol});
    if (decay) {
      double pred = A.fits["decay"]["predicted"].get<double>();
      t2.checks.push_back(Check{"beta_hat", decay->beta_hat, 0.9 * pred, 1.3 * pred});
    } else if (prof.branch.kind == BranchKind::ShiftGamma) {
      t2.checks.push_back(unevaluated("beta_hat", "decay fit failed"));
    }
    for (const Check& c : sandwich_checks) t2.checks.push_back(c);
    A.verdicts.push_back(t2);
    return A;
  }

  Verdict t3{"T3_Dichotomy", {}};
  t3.checks.push_back(Check{"residual_max_abs", std::max(-cert.min_residual, cert.max_residual), 0.0, kResidualTol});
  if (singular) {
    t3.checks.push_back(within("gamma_hat", sf.gamma_hat, gamma_target, kGammaTol));
    if (census && census->inf_lower)
      t3.checks.push_back(at_least("gradient_lower_bound", *census->inf_lower, 0.9 * *census->lower_reference));
    if (cfg.verify.integrability)
      t3.checks.push_back(
          flag_check("integrable_grad", integ ? &integ->grad_term : nullptr, Integrability::NotIntegrable));
  } else {
    if (holder) {
      t3.checks.push_back(at_least("holder_exponent", holder->exponent, 0.9 * holder->reference_radial));
    } else {
      t3.checks.push_back(unevaluated("holder_exponent", "Hölder fit failed"));
    }
    t3.checks.push_back(mass_check());
  }
  if (apriori) t3.checks.push_back(at_least("apriori_margin", apriori->margin, -kMarginTol));
  for (const Check& c : sandwich_checks) t3.checks.push_back(c);
  if (seed_diff) t3.checks.push_back(Check{"seed_spread", *seed_diff, 0.0, kSeedTol});
  A.verdicts.push_back(t3);
  return A;
}

Assessment assess_field(const RunConfig& cfg, const Field2D& field) {
  Assessment A;
  const ProblemParams& p = field.params;
  RadialProfile mean = field.mean_profile();
  const bool critical = field.branch.kind == BranchKind::LambdaCritical;
  const double gamma_target = field.branch.kind == BranchKind::ShiftQOverB ? p.q / p.b
                              : critical                                     ? 2.0 / p.b
                                                                             : field.branch.gamma;
  SingularityFit sf = critical ? fit_critical(mean) : fit_gamma(mean);
  A.fits["singularity_mean"] = fit_json(sf);
  A.fits["gamma_target"] = gamma_target;
  ModeDecay md = fourier_mode_norms(field);
  json modes = json::array();
  for (int k = 1; k <= md.K; ++k)
    modes.push_back(json{{"k", k}, {"beta_hat", opt_num(md.beta_hat[static_cast<std::size_t>(k - 1)])},
                         {"beta_hat_t", opt_num(md.beta_hat_t[static_cast<std::size_t>(k - 1)])}});
  double gap = 0.0;
  for (double g : md.parseval_gap) gap = std::max(gap, g);
  A.fits["modes"] = json{{"modes", modes}, {"parseval_gap_max", gap}, {"window", window_json(md.window)}};
  AngularVariation av = angular_variation(field);
  A.verification["angular_variation"] = json{{"sup_inner", av.sup_inner}, {"window", window_json(av.window)}};
  std::optional<double> mass;
  if (cfg.verify.mass) {
    try {
      MassEstimate m = distributional_mass(field);
      mass = m.mass;
      A.verification["mass"] = json{{"mass_estimate", m.mass}, {"mass_target", gamma_target}, {"partial", m.partial},
                                    {"tail_u", m.tail_u}, {"tail_reaction", m.tail_reaction}};
    } catch (const Error& e) {
      A.verification["mass"] = json{{"error", e.what()}, {"mass_target", gamma_target}};
    }
  }
  Verdict v{p.regime() == Regime::Supercritical ? "T3_Dichotomy" : "T2_ExistenceUniqueness", {}};
  v.checks.push_back(Check{"newton_residual", field.residual, 0.0, std::max(cfg.solver.newton_tol, kResidualTol)});
  v.checks.push_back(within("gamma_hat_mean", sf.gamma_hat, gamma_target, kGammaTol));
  if (cfg.verify.mass) {
    double tol = gamma_target > 0.0 ? kMassRelTol * gamma_target : kMassRelTol;
    v.checks.push_back(mass ? within("mass", *mass, gamma_target, tol) : unevaluated("mass", "tail fit failed"));
  }
  const std::vector<double>& phi = cfg.boundary.samples;
  bool constant_data = std::all_of(phi.begin(), phi.end(), [&](double x) { return x == phi.front(); });
  if (constant_data) v.checks.push_back(Check{"angular_variation", av.sup_inner, 0.0, kSymmetryTol});
  A.verdicts.push_back(v);
  return A;
}

namespace {

json config_echo(const RunConfig& c, const Options& o) {
  json e = c.echo;
  json cli{{"jobs", o.jobs}};
  cli["seed"] = o.seed ? json(*o.seed) : json(nullptr);
  return json{{"config", e}, {"cli", cli}};
}

json verdict_json(const Assessment& a) {
  json v = json::array();
  for (const Verdict& x : a.verdicts) v.push_back(to_json(x));
  return v;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int finish(const Assessment& a, std::ostream& log) {
  for (const Verdict& v : a.verdicts) log << v.theorem << ": " << to_string(v.outcome()) << '\n';
  return a.failed() ? kVerificationFailed : kOk;
}

}  // namespace

int cmd_solve(const Options& o, std::ostream& log) {
  RunConfig c = load_config(o.config);
  if (c.sweep) throw Error(ErrorKind::InvalidInput, "config: 'sweep' belongs to the sweep command");
  ensure_directory(o.out);
  auto t0 = std::chrono::steady_clock::now();
  json report;
  Assessment a;
  if (c.boundary.nonradial()) {
    Field2D f = solve_nonradial(c.params, target_gamma(c.params, c.gamma, c.branch), c.boundary.samples, c.solver,
                                c.n_theta);
    double t_solve = seconds_since(t0);
    write_text_file(join_path(o.out, c.output.field), field_csv(f));
    write_text_file(join_path(o.out, c.output.profile), profile_csv(f.mean_profile()));
    auto t1 = std::chrono::steady_clock::now();
    a = assess_field(c, f);
    a.fits["solver"] = json{{"iterations", f.iterations}, {"residual", f.residual}, {"n_theta", f.n_theta}};
    report["timings"] = json{{"solve_s", t_solve}, {"verify_s", seconds_since(t1)}};
  } else {
    double phi0 = c.boundary.constant(c.params);
    RadialProfile prof = run_radial(c.params, c.gamma, c.branch, phi0, c.solver);
    double t_solve = seconds_since(t0);
    write_text_file(join_path(o.out, c.output.profile), profile_csv(prof));
    auto t1 = std::chrono::steady_clock::now();
    std::optional<double> spread;
    std::string seed_error;
    if (c.verify.seeds) {
      try {
        spread = seed_spread(prof, phi0, c.solver);
      } catch (const Error& e) {
        seed_error = e.what();
      }
    }
    a = assess_profile(c, prof, phi0, spread);
    if (!seed_error.empty()) {
      a.verification["seed_spread_error"] = seed_error;
      a.verdicts.back().checks.push_back(unevaluated("seed_spread", seed_error));
    }
    a.fits["solver"] = json{{"iterations", prof.iterations}, {"residual", prof.residual},
                            {"continuation_stages", prof.continuation_stages}, {"boundary_value", phi0}};
    report["timings"] = json{{"solve_s", t_solve}, {"verify_s", seconds_since(t1)}};
  }
  report["config_echo"] = config_echo(c, o);
  report["fits"] = a.fits;
  report["verification"] = a.verification;
  report["verdict"] = verdict_json(a);
  report["version"] = kVersion;
  write_text_file(join_path(o.out, c.output.report), dump_json(report));
  return finish(a, log);
}

int cmd_verify(const Options& o, std::ostream& log) {
  RunConfig c = load_config(o.config);
  if (c.sweep) throw Error(ErrorKind::InvalidInput, "config: 'sweep' belongs to the sweep command");
  if (c.boundary.nonradial())
    throw Error(ErrorKind::InvalidInput, "verify reads radial profiles; rerun solve for non-radial data");
  std::string path = o.profile.empty() ? join_path(o.out, c.output.profile) : o.profile;
  std::string text = read_text_file(path);
  RadialProfile prof = parse_profile_csv(text, c.params, branch_for(c.params, c.gamma, c.branch),
                                         c.branch == BranchChoice::Emden);
  ensure_directory(o.out);
  auto t0 = std::chrono::steady_clock::now();
  double phi0 = c.boundary.constant(c.params);
  Assessment a = assess_profile(c, prof, phi0, std::nullopt);
  json report;
  report["config_echo"] = config_echo(c, o);
  report["config_echo"]["profile"] = path;
  report["fits"] = a.fits;
  report["verification"] = a.verification;
  report["verdict"] = verdict_json(a);
  report["timings"] = json{{"verify_s", seconds_since(t0)}};
  report["version"] = kVersion;
  write_text_file(join_path(o.out, "verdict.json"), dump_json(report));
  return finish(a, log);
}

namespace {

struct SweepRow {
  double q, gamma, a, b, m;
  std::string branch = "";
  std::string status = "pending";
  double gamma_hat = kNaN, ell_hat = kNaN, beta_hat = kNaN, mass = kNaN;
  double margin_lower = kNaN, margin_upper = kNaN;
  int iterations = 0;
  std::string message;
  int code = kOk;
};

void run_row(const RunConfig& c, SweepRow& row) {
  try {
    std::optional<double> gamma;
    if (!std::isnan(row.gamma)) gamma = row.gamma;
    ProblemParams p = ProblemParams::make(row.m, row.a, row.b, row.q);
    BranchChoice b = resolve_branch(p, gamma, c.branch);
    row.branch = to_string(b);
    if (std::isnan(row.gamma)) row.gamma = target_gamma(p, gamma, b);
    double phi0 = c.boundary.winf_offset ? (p.regime() == Regime::Supercritical ? c.boundary.constant(p)
                                                                                : c.boundary.value)
                                         : c.boundary.value;
    RadialProfile prof = run_radial(p, gamma, b, phi0, c.solver);
    row.iterations = prof.iterations;
    SingularityFit f = is_critical(prof) ? fit_critical(prof) : fit_gamma(prof);
    row.gamma_hat = f.gamma_hat;
    row.ell_hat = f.ell_hat;
    if (prof.branch.kind == BranchKind::ShiftGamma) {
      try {
        row.beta_hat = fit_decay(prof.t, prof.w, default_window(prof), DecayLimit::Fitted).beta_hat;
      } catch (const Error&) {
      }
    }
    try {
      row.mass = distributional_mass(prof).mass;
    } catch (const Error&) {
    }
    if (p.regime() == Regime::Supercritical && !prof.emden) {
      Curve lo = curve_from(prof.t, [&](double r) { return supercritical_lower_barrier(p, r); });
      Curve hi = curve_from(prof.t, [&](double r) { return supercritical_upper_barrier(p, r); });
      SandwichMargins m = sandwich_check(curve_u(prof), lo, hi);
      if (prof.branch.kind == BranchKind::ShiftQOverB) row.margin_lower = m.lower;
      row.margin_upper = m.upper;
    }
    row.status = "ok";
  } catch (const Error& e) {
    row.status = to_string(e.kind());
    row.message = e.what();
    row.code = exit_code_for(e);
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string num_field(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

int cmd_sweep(const Options& o, std::ostream& log) {
  RunConfig c = load_config(o.config);
  if (!c.sweep) throw Error(ErrorKind::InvalidInput, "config: sweep needs a 'sweep' grid");
  if (o.jobs < 1) throw Error(ErrorKind::InvalidInput, "--jobs must be >= 1");
  const SweepGrid& g = *c.sweep;
  auto axis = [](const std::vector<double>& v, double base) { return v.empty() ? std::vector<double>{base} : v; };
  if (g.q.empty() && g.gamma.empty() && g.a.empty() && g.b.empty() && g.m.empty())
    throw Error(ErrorKind::InvalidInput, "config: sweep grid is empty");
  std::vector<double> gammas = g.gamma.empty() ? std::vector<double>{c.gamma.value_or(kNaN)} : g.gamma;
  std::vector<SweepRow> rows;
  for (double q : axis(g.q, c.params.q))
    for (double gm : gammas)
      for (double a : axis(g.a, c.params.a))
        for (double b : axis(g.b, c.params.b))
          for (double m : axis(g.m, c.params.m)) rows.push_back(SweepRow{q, gm, a, b, m});
  ensure_directory(o.out);

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < rows.size(); i = next++) run_row(c, rows[i]);
  };
  int n = std::min<int>(o.jobs, static_cast<int>(rows.size()));
  std::vector<std::thread> pool;
  for (int k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::string csv =
      "index,q,gamma,a,b,m,branch,status,gamma_hat,ell_hat,beta_hat,mass,margin_lower,margin_upper,iterations,message\n";
  int failures = 0, worst = kOk;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    if (r.status != "ok") {
      ++failures;
      worst = std::max(worst, r.code);
    }
    csv += std::to_string(i);
    for (double v : {r.q, r.gamma, r.a, r.b, r.m}) csv += "," + num_field(v);
    csv += "," + r.branch + "," + r.status;
    for (double v : {r.gamma_hat, r.ell_hat, r.beta_hat, r.mass, r.margin_lower, r.margin_upper})
      csv += "," + num_field(v);
    csv += "," + std::to_string(r.iterations) + "," + csv_field(r.message) + "\n";
  }
  write_text_file(join_path(o.out, c.output.sweep), csv);
  log << rows.size() << " rows, " << failures << " failed\n";
  if (failures == static_cast<int>(rows.size())) return worst == kOk ? kNoConvergence : worst;
  return kOk;
}

// ---------------------------------------------------------------------------
// Oracle self-test: closed forms, identities and certifications.

namespace {

std::vector<double> log_radii(double lo, double hi, int n) {
  std::vector<double> r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, double(i) / (n - 1));
  return r;
}

const std::vector<ProblemParams>& oracle_params() {
  static const std::vector<ProblemParams> ps = {
      ProblemParams::make(1, 1, 1, 3),     ProblemParams::make(2, 1, 1, 3),   ProblemParams::make(1, 3, 0.5, 2.5),
      ProblemParams::make(0.5, 2, 2, 4),   ProblemParams::make(1, 1, 1, 1.5), ProblemParams::make(3, 0.7, 1.3, 1.2),
  };
  return ps;
}

}  // namespace

OracleReport run_oracle(bool inject) {
  // The injected fault flips the sign of the absorption term in every
  // residual the oracle evaluates.
  const double sign = inject ? -1.0 : 1.0;
  std::vector<Check> checks;
  json detail = json::object();

  double eik = 0.0, full = 0.0;
  for (const ProblemParams& p : oracle_params()) {
    for (double r : log_radii(1e-8, 10.0, 2001)) {
      auto rel = [&](const RadialSample& s) {
        double A = p.a * std::exp(p.b * s.u), B = p.m * abs_pow(s.ur, p.q);
        return std::fabs(sign * A - B) / (A + B);
      };
      RadialSample wi = eikonal_winf_sample(p, r);
      eik = std::max({eik, rel(wi), rel(eikonal_wc_sample(p, 0.5, r)), rel(eikonal_wc_sample(p, 2.0, r))});
      double A = p.a * std::exp(p.b * wi.u), B = p.m * abs_pow(wi.ur, p.q);
      full = std::max(full, std::fabs(-wi.lap + sign * A - B) / (std::fabs(wi.lap) + A + B));
    }
  }
  checks.push_back(Check{"eikonal_relative_residual", eik, 0.0, 1e-12});
  checks.push_back(Check{"winf_full_residual", full, 0.0, 1e-10});

  double emden = 0.0;
  for (auto [a, b] : {std::pair{1.0, 2.0}, {2.0, 1.0}, {0.5, 4.0}}) {
    ProblemParams p = ProblemParams::make(1, a, b, 1.5);
    for (double r : log_radii(1e-6, 1.0 - 1e-6, 4001)) {
      RadialSample s = emden_critical_exact_sample(p, r);
      double A = a * std::exp(b * s.u);
      emden = std::max(emden, std::fabs(-s.lap + sign * A) / (std::fabs(s.lap) + A));
    }
  }
  checks.push_back(Check{"emden_critical_exact_residual", emden, 0.0, 1e-10});

  QuadratureIdentity qi = quadrature_identity_check();
  checks.push_back(Check{"two_pi_identity_error", std::fabs(qi.value - 2.0 * std::numbers::pi), 0.0, 1e-10});
  detail["two_pi_identity"] = json{{"value", qi.value}, {"truncated", qi.truncated}, {"tail", qi.tail}};

  double junction = 0.0;
  for (double q : {2.5, 3.0, 4.0})
    for (double s : {1.0, 10.0, 100.0}) {
      TruncatedPower lo = truncated_power_lower(s * s, q), hi = truncated_power_upper(s * s, s, q);
      for (auto [x, y] : {std::pair{lo.value, hi.value}, {lo.d1, hi.d1}, {lo.d2, hi.d2}})
        junction = std::max(junction, std::fabs(x - y) / std::max(std::fabs(x), 1e-300));
    }
  checks.push_back(Check{"truncation_junction_mismatch", junction, 0.0, 1e-6});

  double round_trip = 0.0;
  for (const ProblemParams& p : oracle_params()) {
    if (p.regime() != Regime::Supercritical) continue;
    PhysProfile in;
    for (double r : log_radii(1e-6, 1.0, 257)) {
      RadialSample s = eikonal_winf_sample(p, r);
      in.r.push_back(r);
      in.u.push_back(s.u);
      in.u_r.push_back(s.ur);
    }
    PhysProfile back = inverse_transform_log(p, Branch::shift_q_over_b(), transform_log(p, Branch::shift_q_over_b(), in));
    for (std::size_t i = 0; i < in.r.size(); ++i)
      round_trip = std::max({round_trip, std::fabs(back.u[i] - in.u[i]) / (1.0 + std::fabs(in.u[i])),
                             std::fabs(back.u_r[i] - in.u_r[i]) / (1.0 + std::fabs(in.u_r[i]))});
  }
  checks.push_back(Check{"transform_round_trip", round_trip, 0.0, 1e-14});

  ProblemParams pc = ProblemParams::make(1, 1, 1, 1.5);
  auto [k1, k2] = kappa_bounds(pc);
  auto cert = [&](const std::string& name, const ClosedForm& f, Certification want) {
    CertifyResult r = certify_subsuper(f);
    detail["certify_" + name] = json{{"verdict", to_string(r.verdict)}, {"min", r.min_residual}, {"max", r.max_residual}};
    Check c{"certify_" + name, r.verdict == want ? 1.0 : 0.0, 1.0, 1.0};
    c.note = std::string("got ") + to_string(r.verdict) + ", expected " + to_string(want);
    checks.push_back(c);
  };
  cert("psi_kappa1", ClosedForm::psi_kappa(pc, k1), Certification::Supersolution);
  cert("psi_kappa2", ClosedForm::psi_kappa(pc, k2), Certification::Subsolution);
  double A0 = hA_threshold(pc, 1.0);
  detail["hA_threshold"] = A0;
  cert("h_A", ClosedForm::subsol_hA(pc, 1.0, 0.5 * A0), Certification::Supersolution);
  cert("supersol_apriori", ClosedForm::supersol_apriori(pc, 0.5), Certification::Supersolution);

  // The variant U = (q/b)(m/a)^{1/q} ln(q/(b r)) balances the eikonal
  // equation only when m = a; w_inf is exact for every parameter set and is
  // the profile used everywhere else.
  auto variant_residual = [](const ProblemParams& p) {
    double worst = 0.0;
    double k = p.q / p.b * std::pow(p.m / p.a, 1.0 / p.q);
    for (double r : log_radii(1e-8, 1.0, 401)) {
      double u = k * std::log(p.q / (p.b * r)), ur = -k / r;
      double A = p.a * std::exp(p.b * u), B = p.m * abs_pow(ur, p.q);
      worst = std::max(worst, std::fabs(A - B) / (A + B));
    }
    return worst;
  };
  ProblemParams same = ProblemParams::make(1, 1, 1, 3), diff = ProblemParams::make(2, 1, 1, 3);
  detail["explicit_profile_note"] = json{
      {"note",
       "U = (q/b)(m/a)^(1/q) ln(q/(b r)) is an eikonal solution only when m = a; w_inf = (q/b) ln(1/r) + "
       "(1/b) ln(m (q/b)^q / a) is exact for all parameters and is the profile used"},
      {"variant_residual_m_eq_a", variant_residual(same)},
      {"variant_residual_m_ne_a", variant_residual(diff)},
      {"winf_residual_m_ne_a", [&] {
         double w = 0.0;
         for (double r : log_radii(1e-8, 1.0, 401)) w = std::max(w, eikonal_residual_rel(diff, eikonal_winf_sample(diff, r)));
         return w;
       }()}};

  Verdict v{"oracle", checks};
  OracleReport rep;
  rep.pass = v.outcome() == Outcome::Pass;
  rep.report = json{{"checks", to_json(v)["checks"]}, {"detail", detail}, {"pass", rep.pass},
                    {"injected_sign_error", inject}, {"version", kVersion}};
  return rep;
}

int cmd_oracle(const Options& o, std::ostream& log) {
  OracleReport rep = run_oracle(o.inject_sign_error);
  for (const auto& c : rep.report["checks"])
    log << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << " = "
        << num_field(c["value"].is_number() ? c["value"].get<double>() : kNaN) << '\n';
  log << "note: " << rep.report["detail"]["explicit_profile_note"]["note"].get<std::string>() << '\n';
  if (!o.out.empty() && o.out != ".") {
    ensure_directory(o.out);
    write_text_file(join_path(o.out, "oracle.json"), dump_json(rep.report));
  }
  return rep.pass ? kOk : kVerificationFailed;
}

}  // namespace isosing::cli
