#include "revsurf/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace revsurf {

MonotoneCubic::MonotoneCubic(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
  if (x_.size() != y_.size()) throw std::invalid_argument("MonotoneCubic: size mismatch");
  if (x_.size() < 4) throw std::invalid_argument("MonotoneCubic: need at least 4 samples");
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1])) {
      throw std::invalid_argument("MonotoneCubic: abscissae must be strictly increasing");
    }
  }

  const std::size_t n = x_.size();
  std::vector<double> h(n - 1);
  std::vector<double> secant(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    secant[i] = (y_[i + 1] - y_[i]) / h[i];
  }

  slope_.assign(n, 0.0);
  // Interior: derivative of the parabola through three neighbouring nodes.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (secant[i - 1] * secant[i] <= 0.0) {
      slope_[i] = 0.0;
    } else {
      slope_[i] = (h[i] * secant[i - 1] + h[i - 1] * secant[i]) / (h[i - 1] + h[i]);
    }
  }
  // Ends: one-sided three-point formula.
  slope_[0] = ((2.0 * h[0] + h[1]) * secant[0] - h[0] * secant[1]) / (h[0] + h[1]);
  if (slope_[0] * secant[0] <= 0.0) slope_[0] = 0.0;
  const std::size_t m = n - 2;
  slope_[n - 1] = ((2.0 * h[m] + h[m - 1]) * secant[m] - h[m] * secant[m - 1]) / (h[m] + h[m - 1]);
  if (slope_[n - 1] * secant[m] <= 0.0) slope_[n - 1] = 0.0;

  // Fritsch-Carlson limiter.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (secant[i] == 0.0) {
      slope_[i] = 0.0;
      slope_[i + 1] = 0.0;
      continue;
    }
    const double alpha = slope_[i] / secant[i];
    const double beta = slope_[i + 1] / secant[i];
    const double r2 = alpha * alpha + beta * beta;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      slope_[i] = tau * alpha * secant[i];
      slope_[i + 1] = tau * beta * secant[i];
    }
  }
}

InterpolantValue MonotoneCubic::evaluate_in(std::size_t i, double x) const {
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double y0 = y_[i], y1 = y_[i + 1];
  const double d0 = slope_[i] * h, d1 = slope_[i + 1] * h;

  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  const double value = h00 * y0 + h10 * d0 + h01 * y1 + h11 * d1;

  const double g00 = 6 * t2 - 6 * t, g10 = 3 * t2 - 4 * t + 1;
  const double g01 = -6 * t2 + 6 * t, g11 = 3 * t2 - 2 * t;
  const double first = (g00 * y0 + g10 * d0 + g01 * y1 + g11 * d1) / h;

  const double s00 = 12 * t - 6, s10 = 6 * t - 4;
  const double s01 = -12 * t + 6, s11 = 6 * t - 2;
  const double second = (s00 * y0 + s10 * d0 + s01 * y1 + s11 * d1) / (h * h);
  return {value, first, second};
}

InterpolantValue MonotoneCubic::evaluate(double x) const {
  if (x < x_.front() || x > x_.back()) {
    throw std::out_of_range("MonotoneCubic: abscissa outside the tabulated range");
  }
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  if (it == x_.end()) return evaluate_in(x_.size() - 2, x);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  if (x == x_[i] && i > 0) {
    // Node: first derivative is continuous, second is not.
    const InterpolantValue left = evaluate_in(i - 1, x);
    const InterpolantValue right = evaluate_in(i, x);
    return {y_[i], slope_[i], 0.5 * (left.second + right.second)};
  }
  return evaluate_in(i, x);
}

}  // namespace revsurf
