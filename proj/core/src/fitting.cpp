#include "isosing/fitting.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
// Boost 1.74's pchip header calls isnan unqualified without including a
// declaration for it.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/tools/minima.hpp>

#include "isosing/error.hpp"

namespace isosing {

std::vector<double> least_squares(const std::vector<std::vector<double>>& columns, std::span<const double> y,
                                  double* rms_residual) {
  const Eigen::Index n = static_cast<Eigen::Index>(y.size());
  const Eigen::Index k = static_cast<Eigen::Index>(columns.size());
  if (k == 0 || n < k) throw Error(ErrorKind::InvalidWindow, "not enough samples for the regression");
  Eigen::MatrixXd X(n, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    if (columns[j].size() != y.size()) throw Error(ErrorKind::InvalidInput, "regressor length mismatch");
    for (Eigen::Index i = 0; i < n; ++i) X(i, j) = columns[j][i];
  }
  Eigen::Map<const Eigen::VectorXd> Y(y.data(), n);
  // Column equilibration keeps the rank test meaningful for mixed scales.
  Eigen::VectorXd scale = X.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < k; ++j) {
    if (scale(j) == 0.0) throw Error(ErrorKind::InvalidWindow, "regressor vanishes on the window");
    X.col(j) /= scale(j);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(1e-12);
  if (qr.rank() < k) throw Error(ErrorKind::InvalidWindow, "regressors are collinear on the window");
  Eigen::VectorXd c = qr.solve(Y);
  if (rms_residual) *rms_residual = (X * c - Y).norm() / std::sqrt(static_cast<double>(n));
  std::vector<double> out(static_cast<std::size_t>(k));
  for (Eigen::Index j = 0; j < k; ++j) out[static_cast<std::size_t>(j)] = c(j) / scale(j);
  return out;
}

std::pair<std::size_t, std::size_t> window_indices(std::span<const double> t, double lo, double hi) {
  auto b = std::lower_bound(t.begin(), t.end(), lo);
  auto e = std::upper_bound(t.begin(), t.end(), hi);
  return {static_cast<std::size_t>(b - t.begin()), static_cast<std::size_t>(e - t.begin())};
}

double brent_minimize(const std::function<double(double)>& f, double lo, double hi, double* fmin) {
  auto r = boost::math::tools::brent_find_minima(f, lo, hi, 52);
  if (fmin) *fmin = r.second;
  return r.first;
}

std::vector<double> pchip(std::span<const double> x, std::span<const double> y, std::span<const double> xq) {
  if (x.size() != y.size() || x.size() < 4) throw Error(ErrorKind::InvalidInput, "pchip needs >= 4 matching samples");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) throw Error(ErrorKind::InvalidInput, "pchip abscissae must increase");
  std::vector<double> xs(x.begin(), x.end()), ys(y.begin(), y.end());
  const double lo = xs.front(), hi = xs.back();
  boost::math::interpolators::pchip<std::vector<double>> ip(std::move(xs), std::move(ys));
  std::vector<double> out(xq.size());
  for (std::size_t i = 0; i < xq.size(); ++i) {
    if (xq[i] < lo || xq[i] > hi) throw Error(ErrorKind::InvalidInput, "pchip query outside the data range");
    out[i] = ip(xq[i]);
  }
  return out;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

}  // namespace isosing
