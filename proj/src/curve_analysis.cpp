#include "revsurf/curve_analysis.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace revsurf {

namespace {

template <class Better>
std::vector<std::size_t> extrema(std::span<const double> y, Better better) {
  std::vector<std::size_t> out;
  const std::size_t n = y.size();
  std::size_t i = 1;
  while (i + 1 < n) {
    if (better(y[i], y[i - 1])) {
      std::size_t k = i;
      while (k + 1 < n && y[k + 1] == y[i]) ++k;
      if (k + 1 < n && better(y[i], y[k + 1])) out.push_back(i);
      i = k + 1;
    } else {
      ++i;
    }
  }
  return out;
}

}  // namespace

std::vector<std::size_t> local_maxima(std::span<const double> y) {
  return extrema(y, [](double a, double b) { return a > b; });
}

std::vector<std::size_t> local_minima(std::span<const double> y) {
  return extrema(y, [](double a, double b) { return a < b; });
}

double oscillation_amplitude(std::span<const double> y) {
  if (y.empty()) throw std::invalid_argument("oscillation_amplitude: empty curve");
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  return *hi - *lo;
}

double off_resonance_mean(std::span<const double> y) {
  const auto minima = local_minima(y);
  if (minima.empty()) return std::numeric_limits<double>::quiet_NaN();
  double sum = 0.0;
  for (std::size_t i : minima) sum += y[i];
  return sum / static_cast<double>(minima.size());
}

double prominence(std::span<const double> y, std::size_t peak) {
  if (peak >= y.size()) throw std::out_of_range("prominence: index out of range");
  const double top = y[peak];
  double left_base = top;
  for (std::size_t k = peak; k-- > 0;) {
    if (y[k] > top) break;
    left_base = std::min(left_base, y[k]);
  }
  double right_base = top;
  for (std::size_t k = peak + 1; k < y.size(); ++k) {
    if (y[k] > top) break;
    right_base = std::min(right_base, y[k]);
  }
  return top - std::max(left_base, right_base);
}

double max_prominence(std::span<const double> y) {
  double best = 0.0;
  for (std::size_t i : local_maxima(y)) best = std::max(best, prominence(y, i));
  return best;
}

}  // namespace revsurf
