#include "isosing/annulus2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "closure.hpp"
#include "isosing/error.hpp"
#include "isosing/model.hpp"
#include "isosing/special.hpp"

namespace isosing {

double Field2D::theta(int j) const { return 2.0 * std::numbers::pi * j / n_theta; }

std::vector<double> Field2D::mean_w() const {
  std::vector<double> out(n_t(), 0.0);
  for (std::size_t i = 0; i < n_t(); ++i) {
    double s = 0.0;
    for (int j = 0; j < n_theta; ++j) s += at(i, j);
    out[i] = s / n_theta;
  }
  return out;
}

std::vector<double> Field2D::mean_w_t() const {
  std::vector<double> out(n_t(), 0.0);
  const std::size_t nt = static_cast<std::size_t>(n_theta);
  for (std::size_t i = 0; i < n_t(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < nt; ++j) s += w_t[i * nt + j];
    out[i] = s / n_theta;
  }
  return out;
}

std::vector<double> Field2D::mean_u() const {
  std::vector<double> out = mean_w();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= branch.S(params, t[i]);
  return out;
}

RadialProfile Field2D::mean_profile() const {
  RadialProfile prof;
  prof.t = t;
  prof.w = mean_w();
  prof.w_t = mean_w_t();
  prof.branch = branch;
  prof.params = params;
  prof.iterations = iterations;
  prof.residual = residual;
  return prof;
}

void Field2D::check() const {
  if (n_theta < 4 || (n_theta & (n_theta - 1)) != 0)
    throw Error(ErrorKind::InvalidInput, "n_theta must be a power of two >= 4");
  if (t.size() < 2) throw Error(ErrorKind::InvalidInput, "field needs at least two t-rows");
  std::size_t n = t.size() * static_cast<std::size_t>(n_theta);
  if (w.size() != n || w_t.size() != n) throw Error(ErrorKind::InvalidInput, "field storage has the wrong size");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1])) throw Error(ErrorKind::InvalidInput, "field grid is not increasing");
  for (std::size_t k = 0; k < n; ++k)
    if (!std::isfinite(w[k]) || !std::isfinite(w_t[k])) throw Error(ErrorKind::InvalidInput, "field holds a non-finite value");
}

Field2D replicate(const RadialProfile& prof, int n_theta) {
  Field2D f;
  f.t = prof.t;
  f.n_theta = n_theta;
  f.branch = prof.branch;
  f.params = prof.params;
  f.iterations = prof.iterations;
  f.residual = prof.residual;
  const std::size_t nt = static_cast<std::size_t>(n_theta);
  f.w.resize(prof.size() * nt);
  f.w_t.resize(prof.size() * nt);
  for (std::size_t i = 0; i < prof.size(); ++i)
    for (std::size_t j = 0; j < nt; ++j) {
      f.w[i * nt + j] = prof.w[i];
      f.w_t[i * nt + j] = prof.w_t[i];
    }
  f.check();
  return f;
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Discrete (t, theta) problem. Rows follow the radial solver: ghost-point
// closure on the angular mean at T0 (Neumann for the oscillating part),
// Dirichlet data at t = 0, and the 5-point stencil in between.
class Grid2D {
 public:
  Grid2D(const ProblemParams& p, const Branch& br, const Boundary& phi, const SolverConfig& cfg, int n_theta)
      : p_(p), br_(br), phi_(phi), cfg_(cfg), cl_(p, br, p.m, cfg.T0, false) {
    n_ = static_cast<std::size_t>(cfg.n_points);
    J_ = static_cast<std::size_t>(n_theta);
    h_ = -cfg.T0 / static_cast<double>(n_ - 1);
    dth_ = 2.0 * std::numbers::pi / static_cast<double>(n_theta);
    t_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) t_[i] = cfg.T0 + h_ * static_cast<double>(i);
    t_[n_ - 1] = 0.0;
    Sp_.resize(n_);
    Spp_.resize(n_);
    E_.resize(n_);
    ge_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      Sp_[i] = br.S_t(p, t_[i]);
      Spp_[i] = br.S_tt(p, t_[i]);
      E_[i] = br.absorption_exponent(p, t_[i]);
      ge_[i] = std::exp((2.0 - p.q) * t_[i]);
    }
    upwind_ = detail::upwind_mask(p, br, p.m, t_, h_);
  }

  std::size_t n() const { return n_; }
  std::size_t J() const { return J_; }
  const std::vector<double>& t() const { return t_; }
  double h() const { return h_; }
  const detail::Closure& closure() const { return cl_; }

  // Gradient term with derivatives in pu = u_t and in w_theta.
  void G(std::size_t i, double pu, double wth, double& g, double& gp, double& gth) const {
    double P = pu * pu + wth * wth;
    if (cfg_.truncation_s) {
      double e2 = std::exp(2.0 * t_[i]);
      TruncatedPower tp = truncated_power_eval(P / e2, *cfg_.truncation_s, p_.q);
      g = p_.m * e2 * tp.value;
      gp = 2.0 * p_.m * tp.d1 * pu;
      gth = 2.0 * p_.m * tp.d1 * wth;
      return;
    }
    if (P == 0.0) {
      g = gp = gth = 0.0;
      return;
    }
    double rp = std::sqrt(P);
    double base = p_.m * ge_[i];
    g = base * std::exp(p_.q * std::log(rp));
    double k = base * p_.q * std::exp((p_.q - 1.0) * std::log(rp)) / rp;
    gp = k * pu;
    gth = k * wth;
  }

  double mean_row(const std::vector<double>& w, std::size_t i) const {
    double s = 0.0;
    for (std::size_t j = 0; j < J_; ++j) s += w[i * J_ + j];
    return s / static_cast<double>(J_);
  }

  void residual(const std::vector<double>& w, std::vector<double>& R, std::vector<double>* sc,
                std::vector<double>* floor = nullptr) const {
    const double h2 = h_ * h_, d2 = dth_ * dth_;
    R.resize(n_ * J_);
    if (sc) sc->resize(n_ * J_);
    if (floor) floor->resize(n_ * J_);
    double gc = 0.0, gcd = 0.0, w0bar = mean_row(w, 0), w1bar = mean_row(w, 1);
    if (!cl_.inverted) cl_.eval(w0bar, gc, gcd);
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      for (std::size_t j = 0; j < J_; ++j) {
        std::size_t k = i * J_ + j;
        if (i == 0 && cl_.inverted) {
          double arg = cl_.inv_coef() * (w1bar - w0bar) / h_;
          R[k] = w[k] - w[k + J_] + w1bar - cl_.winf - std::log1p(arg) / p_.b;
          if (sc) (*sc)[k] = 1.0 + std::fabs(cl_.winf);
          if (floor) (*floor)[k] = 4.0 * kEps * (std::fabs(w[k]) + std::fabs(w[k + J_]) + std::fabs(cl_.winf));
          continue;
        }
        std::size_t jl = (j + J_ - 1) % J_, jr = (j + 1) % J_;
        double wc = w[k], wp = w[k + J_];
        double wm, D;
        if (i == 0) {
          wm = wp - 2.0 * h_ * gc;
          D = gc;
        } else {
          wm = w[k - J_];
          D = upwind_[i] ? (wc - wm) / h_ : (wp - wm) / (2.0 * h_);
        }
        double wl = w[i * J_ + jl], wr = w[i * J_ + jr];
        double wtt = (wp - 2.0 * wc + wm) / h2;
        double wthth = (wr - 2.0 * wc + wl) / d2;
        double wth = (wr - wl) / (2.0 * dth_);
        double A = p_.a * std::exp(E_[i] + p_.b * wc);
        double g, gp, gth;
        G(i, D - Sp_[i], wth, g, gp, gth);
        R[k] = -wtt - wthth + Spp_[i] + A - g;
        if (sc) {
          double s = 1.0 + std::fabs(wtt) + std::fabs(wthth) + std::fabs(Spp_[i]) + A + std::fabs(g);
          if (i == 0) s += 2.0 * std::fabs(gc) / h_;
          (*sc)[k] = s;
        }
        if (floor)
          (*floor)[k] = 4.0 * kEps *
                        ((std::fabs(wm) + 2.0 * std::fabs(wc) + std::fabs(wp)) / h2 +
                         (std::fabs(wl) + 2.0 * std::fabs(wc) + std::fabs(wr)) / d2);
      }
    }
    for (std::size_t j = 0; j < J_; ++j) {
      std::size_t k = (n_ - 1) * J_ + j;
      R[k] = w[k] - phi_[j];
      if (sc) (*sc)[k] = 1.0 + std::fabs(phi_[j]);
      if (floor) (*floor)[k] = 0.0;
    }
  }

  // Newton step: solves J dx = -R with block Thomas elimination. Lower and
  // upper blocks are diagonal except the upper block of row 0.
  bool newton_step(const std::vector<double>& w, const std::vector<double>& R, std::vector<double>& dx) const {
    using Mat = Eigen::MatrixXd;
    using Vec = Eigen::VectorXd;
    const Eigen::Index Jn = static_cast<Eigen::Index>(J_);
    const double h2 = h_ * h_, d2 = dth_ * dth_;
    std::vector<Mat> X(n_);
    std::vector<Vec> y(n_);
    Mat D(Jn, Jn), U0(Jn, Jn);
    Vec Ld(Jn), Ud(Jn), rhs(Jn);
    double w0bar = mean_row(w, 0), w1bar = mean_row(w, 1);
    double gc = 0.0, gcd = 0.0;
    if (!cl_.inverted) cl_.eval(w0bar, gc, gcd);

    for (std::size_t i = 0; i < n_; ++i) {
      D.setZero();
      Ld.setZero();
      Ud.setZero();
      bool dense_upper = false;
      for (std::size_t j = 0; j < J_; ++j) rhs(static_cast<Eigen::Index>(j)) = -R[i * J_ + j];
      if (i == n_ - 1) {
        D.setIdentity();
      } else if (i == 0 && cl_.inverted) {
        double k = cl_.inv_coef() / h_;
        double d = k / (p_.b * (1.0 + k * (w1bar - w0bar)));
        const double inv = 1.0 / static_cast<double>(J_);
        D.setConstant(d * inv);
        D.diagonal().array() += 1.0;
        U0.setConstant(inv - d * inv);
        U0.diagonal().array() -= 1.0;
        dense_upper = true;
      } else {
        for (std::size_t j = 0; j < J_; ++j) {
          Eigen::Index jj = static_cast<Eigen::Index>(j);
          Eigen::Index jl = static_cast<Eigen::Index>((j + J_ - 1) % J_), jr = static_cast<Eigen::Index>((j + 1) % J_);
          std::size_t k = i * J_ + j;
          double wc = w[k];
          double wl = w[i * J_ + static_cast<std::size_t>(jl)], wr = w[i * J_ + static_cast<std::size_t>(jr)];
          double wth = (wr - wl) / (2.0 * dth_);
          double A = p_.a * std::exp(E_[i] + p_.b * wc);
          double Dv = i == 0 ? gc : (upwind_[i] ? (wc - w[k - J_]) / h_ : (w[k + J_] - w[k - J_]) / (2.0 * h_));
          double g, gp, gth;
          G(i, Dv - Sp_[i], wth, g, gp, gth);
          D(jj, jj) += 2.0 / h2 + 2.0 / d2 + p_.b * A;
          D(jj, jl) += -1.0 / d2 + gth / (2.0 * dth_);
          D(jj, jr) += -1.0 / d2 - gth / (2.0 * dth_);
          if (i == 0) {
            // Ghost point and g depend on the row mean.
            const double inv = 1.0 / static_cast<double>(J_);
            double coup = 2.0 * gcd / h_ - gp * gcd;
            for (Eigen::Index c = 0; c < Jn; ++c) D(jj, c) += coup * inv;
            Ud(jj) = -2.0 / h2;
          } else if (upwind_[i]) {
            D(jj, jj) -= gp / h_;
            Ld(jj) = -1.0 / h2 + gp / h_;
            Ud(jj) = -1.0 / h2;
          } else {
            Ld(jj) = -1.0 / h2 + gp / (2.0 * h_);
            Ud(jj) = -1.0 / h2 - gp / (2.0 * h_);
          }
        }
      }
      if (i > 0) {
        // D <- D - diag(Ld) X_{i-1}, rhs <- rhs - Ld .* y_{i-1}
        D.noalias() -= Ld.asDiagonal() * X[i - 1];
        rhs -= Ld.cwiseProduct(y[i - 1]);
      }
      Eigen::PartialPivLU<Mat> lu(D);
      y[i] = lu.solve(rhs);
      if (i + 1 < n_) {
        if (dense_upper)
          X[i] = lu.solve(U0);
        else
          X[i] = lu.solve(Mat(Ud.asDiagonal()));
      }
    }
    dx.assign(n_ * J_, 0.0);
    Vec x = y[n_ - 1];
    for (std::size_t j = 0; j < J_; ++j) dx[(n_ - 1) * J_ + j] = x(static_cast<Eigen::Index>(j));
    for (std::size_t i = n_ - 1; i-- > 0;) {
      x = y[i] - X[i] * x;
      for (std::size_t j = 0; j < J_; ++j) dx[i * J_ + j] = x(static_cast<Eigen::Index>(j));
    }
    for (double v : dx)
      if (!std::isfinite(v)) return false;
    return true;
  }

  std::vector<double> derivative(const std::vector<double>& w) const {
    std::vector<double> wt(n_ * J_);
    double gc = 0.0, gcd = 0.0;
    if (!cl_.inverted) cl_.eval(mean_row(w, 0), gc, gcd);
    for (std::size_t j = 0; j < J_; ++j) {
      auto W = [&](std::size_t i) { return w[i * J_ + j]; };
      wt[j] = cl_.inverted ? (-3.0 * W(0) + 4.0 * W(1) - W(2)) / (2.0 * h_) : gc;
      for (std::size_t i = 1; i + 1 < n_; ++i) wt[i * J_ + j] = (W(i + 1) - W(i - 1)) / (2.0 * h_);
      std::size_t k = n_ - 1;
      wt[k * J_ + j] = (3.0 * W(k) - 4.0 * W(k - 1) + W(k - 2)) / (2.0 * h_);
    }
    return wt;
  }

 private:
  ProblemParams p_;
  Branch br_;
  Boundary phi_;
  SolverConfig cfg_;
  detail::Closure cl_;
  std::size_t n_, J_;
  double h_, dth_;
  std::vector<double> t_, Sp_, Spp_, E_, ge_;
  std::vector<char> upwind_;
};

double scaled_inf(const std::vector<double>& R, const std::vector<double>& sc) {
  double m = 0.0;
  for (std::size_t i = 0; i < R.size(); ++i) m = std::max(m, std::fabs(R[i]) / sc[i]);
  return m;
}

double scaled_two(const std::vector<double>& R, const std::vector<double>& sc) {
  double s = 0.0;
  for (std::size_t i = 0; i < R.size(); ++i) s += (R[i] / sc[i]) * (R[i] / sc[i]);
  return std::sqrt(s);
}

}  // namespace

Field2D solve_nonradial(const ProblemParams& p, double gamma, const Boundary& phi, const SolverConfig& cfg, int n_theta,
                        const std::vector<double>* seed) {
  p.validate();
  cfg.validate();
  if (n_theta < 4 || (n_theta & (n_theta - 1)) != 0)
    throw Error(ErrorKind::InvalidParameter, "n_theta must be a power of two >= 4");
  if (phi.size() != static_cast<std::size_t>(n_theta))
    throw Error(ErrorKind::InvalidInput, "boundary table must have n_theta samples");
  double phibar = 0.0;
  for (double v : phi) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidInput, "boundary data must be finite");
    phibar += v;
  }
  phibar /= n_theta;

  // Branch and radial seed for the angular mean.
  RadialProfile rad;
  const double gmax = 2.0 / p.b;
  if (p.regime() == Regime::Subcritical) {
    if (!(gamma >= 0.0) || gamma > gmax * (1.0 + 1e-14))
      throw Error(ErrorKind::PreconditionViolation, "gamma must lie in [0, 2/b]");
    if (gamma == 0.0)
      rad = solve_regular(p, phibar, cfg);
    else if (std::fabs(gamma - gmax) <= 1e-14 * gmax)
      rad = solve_bvp_critical(p, phibar, cfg);
    else
      rad = solve_bvp_subcritical(p, gamma, phibar, cfg);
  } else {
    if (gamma == 0.0)
      rad = solve_regular(p, phibar, cfg);
    else if (std::fabs(gamma - p.q / p.b) <= 1e-12 * p.q / p.b)
      rad = solve_supercritical_singular(p, phibar, cfg);
    else
      throw Error(ErrorKind::PreconditionViolation, "for q > 2 gamma must be 0 (regular) or q/b (singular)");
  }

  Grid2D grid(p, rad.branch, phi, cfg, n_theta);
  const std::size_t n = grid.n(), J = grid.J();
  std::vector<double> w(n * J);
  if (seed) {
    if (seed->size() != w.size()) throw Error(ErrorKind::InvalidInput, "seed has the wrong size");
    w = *seed;
  } else {
    // Harmonic continuation of each boundary mode decays like e^{|k| t}; e^t
    // is a serviceable seed for the whole oscillating part.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < J; ++j)
        w[i * J + j] = rad.w[i] + (phi[j] - phibar) * std::exp(grid.t()[i]);
  }

  std::vector<double> R, sc, fl, dx, trial(w.size()), Rt;
  int it = 0;
  double rinf = 0.0;
  bool converged = false;
  for (; it <= cfg.newton_max_iter; ++it) {
    grid.residual(w, R, &sc, &fl);
    rinf = scaled_inf(R, sc);
    if (!std::isfinite(rinf)) break;
    double floor = 0.0;
    for (std::size_t k = 0; k < fl.size(); ++k) floor = std::max(floor, fl[k] / sc[k]);
    if (rinf <= std::max(cfg.newton_tol, floor)) {
      converged = true;
      break;
    }
    if (it == cfg.newton_max_iter) break;
    if (!grid.newton_step(w, R, dx)) break;
    double f0 = scaled_two(R, sc), alpha = 1.0;
    bool accepted = false;
    while (alpha > 1e-10) {
      for (std::size_t k = 0; k < w.size(); ++k) trial[k] = w[k] + alpha * dx[k];
      grid.residual(trial, Rt, nullptr);
      double f1 = scaled_two(Rt, sc);
      if (std::isfinite(f1) && f1 <= (1.0 - 1e-4 * alpha) * f0) {
        accepted = true;
        break;
      }
      alpha *= cfg.damping;
    }
    if (!accepted) break;
    w.swap(trial);
  }
  if (!converged)
    throw Error(ErrorKind::NoConvergence, "2-D Newton did not converge (scaled residual " + std::to_string(rinf) + ")",
                rinf);

  Field2D f;
  f.t = grid.t();
  f.n_theta = n_theta;
  f.w_t = grid.derivative(w);
  f.w = std::move(w);
  f.branch = rad.branch;
  f.params = p;
  f.iterations = it;
  f.residual = rinf;
  if (p.regime() == Regime::Supercritical && gamma > 0.0) {
    auto wm = f.mean_w();
    double winf = eikonal_constant(p);
    for (std::size_t i = 0; i < wm.size() / 3; ++i)
      if (wm[i] < winf - 2.0) throw Error(ErrorKind::BranchCollapse, "2-D solution left the singular branch", f.t[i]);
  }
  return f;
}

ModeDecay fourier_mode_norms(const Field2D& f, int K, std::optional<FitWindow> window) {
  f.check();
  const int n = f.n_theta;
  if (K < 1 || K > n / 2) throw Error(ErrorKind::InvalidParameter, "mode count must lie in [1, n_theta/2]");
  ModeDecay md;
  md.t = f.t;
  md.K = K;
  md.window = window.value_or(default_window(f.t));
  const std::size_t nt = f.n_t();
  md.norms.assign(static_cast<std::size_t>(K), std::vector<double>(nt));
  md.norms_t.assign(static_cast<std::size_t>(K), std::vector<double>(nt));
  md.row_norm.resize(nt);
  md.parseval_gap.resize(nt);
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> cs(static_cast<std::size_t>(n) * static_cast<std::size_t>(n / 2 + 1)),
      sn(cs.size());
  for (int k = 0; k <= n / 2; ++k)
    for (int j = 0; j < n; ++j) {
      double a = two_pi * k * j / n;
      cs[static_cast<std::size_t>(k * n + j)] = std::cos(a);
      sn[static_cast<std::size_t>(k * n + j)] = std::sin(a);
    }
  // ||mode k||^2 on S^1: 2 pi |c_0|^2, 4 pi |c_k|^2 for 0 < k < n/2, 2 pi |c_{n/2}|^2.
  auto mode_sq = [&](const double* row, int k) {
    double re = 0.0, im = 0.0;
    for (int j = 0; j < n; ++j) {
      re += row[j] * cs[static_cast<std::size_t>(k * n + j)];
      im -= row[j] * sn[static_cast<std::size_t>(k * n + j)];
    }
    re /= n;
    im /= n;
    double c2 = re * re + im * im;
    return (k == 0 || 2 * k == n) ? two_pi * c2 : 2.0 * two_pi * c2;
  };
  for (std::size_t i = 0; i < nt; ++i) {
    const double* row = &f.w[i * static_cast<std::size_t>(n)];
    const double* rowt = &f.w_t[i * static_cast<std::size_t>(n)];
    double total = 0.0, star = 0.0, direct = 0.0;
    for (int k = 0; k <= n / 2; ++k) {
      double s = mode_sq(row, k);
      total += s;
      if (k >= 1) star += s;
      if (k >= 1 && k <= K) {
        md.norms[static_cast<std::size_t>(k - 1)][i] = std::sqrt(s);
        md.norms_t[static_cast<std::size_t>(k - 1)][i] = std::sqrt(mode_sq(rowt, k));
      }
    }
    for (int j = 0; j < n; ++j) direct += row[j] * row[j];
    direct *= two_pi / n;
    md.row_norm[i] = std::sqrt(star);
    md.parseval_gap[i] = direct > 0.0 ? std::fabs(total - direct) / direct : std::fabs(total - direct);
  }
  auto rate = [&](const std::vector<double>& s) -> std::optional<double> {
    for (std::size_t i = 0; i < nt; ++i) {
      if (f.t[i] < md.window.t_lo || f.t[i] > md.window.t_hi) continue;
      if (!(s[i] > 1e-300)) return std::nullopt;
    }
    try {
      DecayFit d = fit_decay(f.t, s, md.window, DecayLimit::Zero);
      if (d.envelope) return std::nullopt;
      // Relative residual: rms of the log residual over the log range.
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (std::size_t i = 0; i < nt; ++i)
        if (f.t[i] >= md.window.t_lo && f.t[i] <= md.window.t_hi) {
          lo = std::min(lo, std::log(s[i]));
          hi = std::max(hi, std::log(s[i]));
        }
      if (!(hi > lo) || d.residual / (hi - lo) >= 0.2) return std::nullopt;
      return d.beta_hat;
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  for (int k = 0; k < K; ++k) {
    md.beta_hat.push_back(rate(md.norms[static_cast<std::size_t>(k)]));
    md.beta_hat_t.push_back(rate(md.norms_t[static_cast<std::size_t>(k)]));
  }
  return md;
}

AngularVariation angular_variation(const Field2D& f, std::optional<FitWindow> window) {
  f.check();
  AngularVariation av;
  av.window = window.value_or(default_window(f.t));
  av.oscillation.resize(f.n_t());
  for (std::size_t i = 0; i < f.n_t(); ++i) {
    double lo = f.at(i, 0), hi = lo;
    for (int j = 1; j < f.n_theta; ++j) {
      lo = std::min(lo, f.at(i, j));
      hi = std::max(hi, f.at(i, j));
    }
    av.oscillation[i] = hi - lo;
    if (f.t[i] >= av.window.t_lo && f.t[i] <= av.window.t_hi) av.sup_inner = std::max(av.sup_inner, hi - lo);
  }
  return av;
}

}  // namespace isosing
