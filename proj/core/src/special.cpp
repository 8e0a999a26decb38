#include "isosing/special.hpp"

#include <cmath>
#include <string>

#include "isosing/error.hpp"

namespace isosing {

namespace {

// sum_k (-1)^k (x/2)^{2k+nu} / (k! (k+nu)!) for nu in {0,1}
double bessel_series(double x, int nu) {
  double h = 0.5 * x;
  double h2 = h * h;
  double term = nu == 0 ? 1.0 : h;
  double sum = term;
  double scale = std::fabs(term);
  for (int k = 1; k < 200; ++k) {
    term *= -h2 / (double(k) * double(k + nu));
    scale = std::fmax(scale, std::fabs(term));
    sum += term;
    if (std::fabs(term) < 1e-17 * scale) break;
  }
  return sum;
}

}  // namespace

double bessel_j0(double x) { return bessel_series(x, 0); }
double bessel_j1(double x) { return bessel_series(x, 1); }

double j01() {
  static const double root = [] {
    double lo = 2.0, hi = 3.0;
    double flo = bessel_j0(lo);
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      double fm = bessel_j0(mid);
      if ((fm > 0.0) == (flo > 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }();
  return root;
}

double EigenData::phi1(double r) const { return bessel_j0(j01 * r); }
double EigenData::phi1_r(double r) const { return -j01 * bessel_j1(j01 * r); }

// From the Bessel equation: phi'' = -phi'/r - lambda1 phi; at r = 0 the limit
// is -lambda1/2.
double EigenData::phi1_rr(double r) const {
  if (r == 0.0) return -0.5 * lambda1;
  return -phi1_r(r) / r - lambda1 * phi1(r);
}

const EigenData& eigen_data() {
  static const EigenData e{j01(), j01() * j01()};
  return e;
}

double bessel_phi1(double r) { return eigen_data().phi1(r); }

TruncatedPower truncated_power_lower(double xi, double q) {
  if (xi <= 0.0) return {0.0, 0.0, 0.0};
  double v = std::pow(xi, 0.5 * q);
  return {v, 0.5 * q * v / xi, 0.5 * q * (0.5 * q - 1.0) * v / (xi * xi)};
}

TruncatedPower truncated_power_upper(double xi, double s, double q) {
  double c1 = 0.5 * q * (q - 1.0) * std::pow(s, q - 2.0);
  double c2 = q * (2.0 - q) * std::pow(s, q - 1.0);
  double c3 = 0.5 * (q * q - 3.0 * q + 2.0) * std::pow(s, q);
  double rt = std::sqrt(xi);
  return {c1 * xi + c2 * rt + c3, c1 + 0.5 * c2 / rt, -0.25 * c2 / (rt * xi)};
}

TruncatedPower truncated_power_eval(double xi, double s, double q) {
  if (!(q > 2.0))
    throw Error(ErrorKind::PreconditionViolation, "truncated_power requires q > 2");
  if (!(s > 0.0)) throw Error(ErrorKind::PreconditionViolation, "threshold s must be positive");
  if (xi < 0.0) throw Error(ErrorKind::PreconditionViolation, "xi must be nonnegative");
  return xi <= s * s ? truncated_power_lower(xi, q) : truncated_power_upper(xi, s, q);
}

double truncated_power(double xi, double s, double q) { return truncated_power_eval(xi, s, q).value; }

}  // namespace isosing
