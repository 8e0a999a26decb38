#pragma once

#include <utility>
#include <vector>

#include "isosing/params.hpp"

namespace isosing {

// Value, radial derivative and planar Laplacian of a radial function. The
// Laplacian is stored directly so that r = 0 stays usable for smooth profiles.
struct RadialSample {
  double u;
  double ur;
  double lap;
};

struct ValueResidual {
  double value;
  double residual;
};

// Eikonal family.
double eikonal_winf(const ProblemParams& p, double r);
RadialSample eikonal_winf_sample(const ProblemParams& p, double r);
double eikonal_wc(const ProblemParams& p, double c, double r);
RadialSample eikonal_wc_sample(const ProblemParams& p, double c, double r);
// W_inf's additive constant, the value of w_inf at r = 1.
double eikonal_constant(const ProblemParams& p);
// a e^{bu} - m |u_r|^q and the same divided by a e^{bu} + m |u_r|^q.
double eikonal_residual(const ProblemParams& p, const RadialSample& s);
double eikonal_residual_rel(const ProblemParams& p, const RadialSample& s);

// (2/b)(ln(1/r) - ln(1 - ln r)); needs ab = 2.
double emden_critical_exact(const ProblemParams& p, double r);
RadialSample emden_critical_exact_sample(const ProblemParams& p, double r);

ValueResidual psi_kappa(const ProblemParams& p, double kappa, double r);
RadialSample psi_kappa_sample(const ProblemParams& p, double kappa, double r);
// (kappa1, kappa2) = (max, min) of {0, (1/b) ln(2/(ab))}.
std::pair<double, double> kappa_bounds(const ProblemParams& p);

double eta_profile(double q, double r);
RadialSample eta_sample(double q, double r);

// h_A = gamma ln(1/r) - A r^theta phi1(r), theta = 2 - b gamma. The residual
// is -Lap h_A + a e^{b h_A} for r > 0.
ValueResidual subsol_hA(const ProblemParams& p, double gamma, double A, double r);
RadialSample subsol_hA_sample(const ProblemParams& p, double gamma, double A, double r);
// Largest A for which the h_A residual stays nonnegative on the scan grid.
double hA_threshold(const ProblemParams& p, double gamma, int grid = 4096);

// psi = lambda ln(1/(R^2 - r^2)) + mu on the ball of radius R around x0, with
// lambda = 2/b (q < 2) or q/b (q > 2) and a e^{b mu} = Lambda* R^2 (resp.
// Lambda~* R^q), Lambda* from maximizing the subtracted bracket plus 1%.
struct SupersolData {
  double R;
  double lambda;
  double Lambda_star;
  double mu;
  double center_value;  // psi at r = 0
};
SupersolData supersol_apriori_data(const ProblemParams& p, double R);
ValueResidual supersol_apriori(const ProblemParams& p, double R, double r);
RadialSample supersol_apriori_sample(const SupersolData& d, double r);

// Upper bound for u at |x| = r, from the supersolution on the ball of radius
// R = min(r, 1 - r) centred at x.
double apriori_bound(const ProblemParams& p, double r);

// E(u) = -Lap u + a e^{bu} - m |grad u|^q and the m = 0 (Emden) operator.
double residual_strong(const ProblemParams& p, double u, double grad_norm, double lap);
double residual_strong(const ProblemParams& p, const RadialSample& s);
double emden_residual(const ProblemParams& p, const RadialSample& s);

struct ResidualSummary {
  std::vector<double> values;
  double min;
  double max;
  std::size_t argmin;
  std::size_t argmax;
};
ResidualSummary residual_strong(const ProblemParams& p, const std::vector<RadialSample>& field);

// Closed forms bundled so the verify layer can treat them uniformly.
class ClosedForm {
 public:
  enum class Kind { EikonalWc, EikonalWinf, EmdenCriticalExact, EtaProfile, PsiKappa, SubsolHA, SupersolAPriori };
  enum class Operator { Full, Emden };

  static ClosedForm eikonal_wc(const ProblemParams& p, double c);
  static ClosedForm eikonal_winf(const ProblemParams& p);
  static ClosedForm emden_critical_exact(const ProblemParams& p);
  static ClosedForm eta(const ProblemParams& p);
  static ClosedForm psi_kappa(const ProblemParams& p, double kappa);
  static ClosedForm subsol_hA(const ProblemParams& p, double gamma, double A);
  static ClosedForm supersol_apriori(const ProblemParams& p, double R);

  Kind kind() const { return kind_; }
  const ProblemParams& params() const { return p_; }
  RadialSample eval(double r) const;
  double value(double r) const { return eval(r).u; }
  // Radii on which the form is defined and checked.
  std::pair<double, double> domain() const;
  // The operator whose sign certifies the form.
  Operator natural_operator() const;

 private:
  ClosedForm(Kind k, const ProblemParams& p) : kind_(k), p_(p) {}
  Kind kind_;
  ProblemParams p_;
  double c_ = 0.0;
  double kappa_ = 0.0;
  double gamma_ = 0.0;
  double A_ = 0.0;
  SupersolData sup_{};
};

const char* to_string(ClosedForm::Kind k);

}  // namespace isosing
