#pragma once

#include <span>
#include <vector>

namespace revsurf {

struct InterpolantValue {
  double value;
  double first;
  double second;
};

/// Shape-preserving C1 cubic Hermite interpolant (Fritsch-Carlson limiter
/// applied to three-point node slopes). Derivatives are those of the
/// interpolant itself, so the second derivative is piecewise linear and
/// may jump at nodes; at a node the one-sided values are averaged.
class MonotoneCubic {
 public:
  MonotoneCubic(std::span<const double> x, std::span<const double> y);

  [[nodiscard]] InterpolantValue evaluate(double x) const;

  [[nodiscard]] double front() const { return x_.front(); }
  [[nodiscard]] double back() const { return x_.back(); }
  [[nodiscard]] const std::vector<double>& nodes() const { return x_; }
  [[nodiscard]] const std::vector<double>& values() const { return y_; }

 private:
  [[nodiscard]] InterpolantValue evaluate_in(std::size_t interval, double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> slope_;
};

}  // namespace revsurf
