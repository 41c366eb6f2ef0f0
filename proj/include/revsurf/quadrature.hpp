#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace revsurf {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

[[nodiscard]] GaussLegendreRule gauss_legendre(std::size_t order);

/// Integral of f over [lo, hi] with a fixed Gauss-Legendre rule.
template <class F>
double integrate(const GaussLegendreRule& rule, double lo, double hi, F&& f) {
  const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

/// Composite Simpson on uniformly spaced samples; needs an odd sample count >= 3.
[[nodiscard]] double simpson(std::span<const double> samples, double spacing);

}  // namespace revsurf
