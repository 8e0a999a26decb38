#pragma once

#include <functional>
#include <span>
#include <vector>

namespace isosing {

// Ordinary least squares y ~ X c, X given column by column. Returns the
// coefficients; `rms_residual` receives sqrt(mean(res^2)).
std::vector<double> least_squares(const std::vector<std::vector<double>>& columns, std::span<const double> y,
                                  double* rms_residual = nullptr);

// Indices i with lo <= t[i] <= hi.
std::pair<std::size_t, std::size_t> window_indices(std::span<const double> t, double lo, double hi);

// Minimum of f on [lo, hi] by Brent's method; returns the abscissa.
double brent_minimize(const std::function<double(double)>& f, double lo, double hi, double* fmin = nullptr);

// Monotone (Fritsch-Carlson) cubic interpolation of (x, y) at xq; x must be
// strictly increasing and xq inside [x.front(), x.back()].
std::vector<double> pchip(std::span<const double> x, std::span<const double> y, std::span<const double> xq);

double trapezoid(std::span<const double> x, std::span<const double> y);

}  // namespace isosing
