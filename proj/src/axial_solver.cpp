#include "revsurf/axial_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "revsurf/errors.hpp"
#include "revsurf/surface_geometry.hpp"

namespace revsurf::axial {

namespace {

constexpr double kScanStep = 0.02;
constexpr double kScanCeiling = 2000.0;
constexpr double kRootTolerance = 1e-10;
constexpr int kMinSteps = 2000;
constexpr double kPhasePerStep = 0.01;

// Axial equation in x = z / rho with f = 1 + lambda x:
//   Z' = P / f,  P' = -(a0 / f + s (1 + lambda^2) f) Z,  a0 = 1/4 - eta^2 (1 + lambda^2).
struct AxialEquation {
  double lambda;
  double x_max;
  double a0;
  double slope_factor;  // 1 + lambda^2
  double s;

  AxialEquation(const ConeGeometry& cone, int eta, double c_squared)
      : lambda(cone.lambda()),
        x_max(cone.height_ratio()),
        a0(0.25 - static_cast<double>(eta) * eta * (1.0 + cone.lambda() * cone.lambda())),
        slope_factor(1.0 + cone.lambda() * cone.lambda()),
        s(c_squared) {}

  [[nodiscard]] double radius(double x) const { return 1.0 + lambda * x; }

  [[nodiscard]] int steps() const {
    const double k = std::sqrt(std::abs(s) * slope_factor + std::abs(a0));
    const double wanted = std::ceil(x_max * k / kPhasePerStep);
    return std::max(kMinSteps, static_cast<int>(std::min(wanted, 5.0e7)));
  }
};

// Fixed-step classical RK4 over [0, x_max] starting from Z = 0, P = 1.
// Extra quadrature channels are integrated alongside through `extra`,
// a callable (x, Z) -> std::array<double, K>. `observe(i, x, state)` sees
// every step boundary.
template <std::size_t K, class Extra, class Observe>
std::array<double, 2 + K> shoot(const AxialEquation& eq, int steps, Extra&& extra, Observe&& observe) {
  using State = std::array<double, 2 + K>;
  const double h = eq.x_max / steps;
  auto rhs = [&](double x, const State& y) {
    State d{};
    const double f = eq.radius(x);
    d[0] = y[1] / f;
    d[1] = -(eq.a0 / f + eq.s * eq.slope_factor * f) * y[0];
    if constexpr (K > 0) {
      const auto e = extra(x, y[0]);
      for (std::size_t k = 0; k < K; ++k) d[2 + k] = e[k];
    }
    return d;
  };
  auto axpy = [](const State& y, double a, const State& d) {
    State r;
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = y[k] + a * d[k];
    return r;
  };

  State y{};
  y[1] = 1.0;
  observe(0, 0.0, y);
  for (int i = 0; i < steps; ++i) {
    const double x = i * h;
    const State k1 = rhs(x, y);
    const State k2 = rhs(x + 0.5 * h, axpy(y, 0.5 * h, k1));
    const State k3 = rhs(x + 0.5 * h, axpy(y, 0.5 * h, k2));
    const State k4 = rhs(x + h, axpy(y, h, k3));
    for (std::size_t k = 0; k < y.size(); ++k) y[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
    if (!std::isfinite(y[0]) || !std::isfinite(y[1])) {
      std::ostringstream os;
      os << "axial integration produced a non-finite state at x = " << (i + 1) * h << " (c^2 = " << eq.s << ")";
      throw IntegrationError(os.str());
    }
    observe(i + 1, (i + 1) * h, y);
  }
  return y;
}

struct NoExtra {
  std::array<double, 0> operator()(double, double) const { return {}; }
};

struct NoObserve {
  template <class S>
  void operator()(int, double, const S&) const {}
};

double end_value(const AxialEquation& eq, int steps) { return shoot<0>(eq, steps, NoExtra{}, NoObserve{})[0]; }

int interior_zero_count(const AxialEquation& eq, int steps) {
  int changes = 0;
  double previous = 0.0;
  shoot<0>(eq, steps, NoExtra{}, [&](int i, double, const auto& y) {
    if (i == 0) return;
    if (previous != 0.0 && ((previous < 0.0) != (y[0] < 0.0)) && y[0] != 0.0) ++changes;
    if (y[0] != 0.0) previous = y[0];
  });
  return changes;
}

// Bisection down to a small bracket, then Illinois-modified regula falsi.
template <class G>
double refine_root(G&& g, double lo, double hi, double g_lo, double g_hi, double tol) {
  const double switch_width = 1e-3 * (hi - lo);
  while (hi - lo > switch_width) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = gm;
    } else {
      hi = mid;
      g_hi = gm;
    }
  }
  int stale_side = 0;
  double x_prev = std::numeric_limits<double>::quiet_NaN();
  for (int iter = 0; iter < 200; ++iter) {
    double x = (lo * g_hi - hi * g_lo) / (g_hi - g_lo);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    const double gx = g(x);
    if (gx == 0.0 || hi - lo < tol || std::abs(x - x_prev) < 0.1 * tol) return x;
    x_prev = x;
    if ((gx < 0.0) == (g_lo < 0.0)) {
      lo = x;
      g_lo = gx;
      if (stale_side == -1) g_hi *= 0.5;
      stale_side = -1;
    } else {
      hi = x;
      g_hi = gx;
      if (stale_side == 1) g_lo *= 0.5;
      stale_side = 1;
    }
  }
  return 0.5 * (lo + hi);
}

double lowest_possible_level(const AxialEquation& eq) {
  // Rayleigh bound: s (1 + lambda^2) >= min over f in [1, f_max] of -a0 / f^2.
  const double f_max = eq.radius(eq.x_max);
  const double bound = eq.a0 > 0.0 ? -eq.a0 : -eq.a0 / (f_max * f_max);
  return bound / eq.slope_factor - 1e-9;
}

double refine_level_in_c(const ConeGeometry& cone, int eta, double c_lo, double c_hi) {
  const int steps = AxialEquation(cone, eta, c_hi * c_hi).steps();
  auto g = [&](double c) { return end_value(AxialEquation(cone, eta, c * c), steps); };
  const double c = refine_root(g, c_lo, c_hi, g(c_lo), g(c_hi), kRootTolerance);
  return c * c;
}

double refine_level_in_s(const ConeGeometry& cone, int eta, double s_lo, double s_hi) {
  const int steps = AxialEquation(cone, eta, s_lo).steps();
  auto g = [&](double s) { return end_value(AxialEquation(cone, eta, s), steps); };
  return refine_root(g, s_lo, s_hi, g(s_lo), g(s_hi), kRootTolerance);
}

}  // namespace

ConeGeometry::ConeGeometry(double rho, double lambda, double z_max) : rho_(rho), lambda_(lambda), z_max_(z_max) {
  if (!(rho > 0.0) || !(lambda > 0.0) || !(z_max > 0.0)) {
    throw std::invalid_argument("ConeGeometry: rho, lambda and z_max must all be positive");
  }
}

std::complex<double> order_delta(int eta, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("order_delta: lambda must be positive");
  const double e2 = static_cast<double>(eta) * eta;
  const double radicand = e2 * (1.0 + lambda * lambda) - 0.25;
  if (radicand >= 0.0) return {std::sqrt(radicand) / lambda, 0.0};
  return {0.0, std::sqrt(-radicand) / lambda};
}

ChannelIndex channel(int eta, double lambda) { return {eta, order_delta(eta, lambda)}; }

double AxialMode::c_value() const {
  return c_squared > 0.0 ? std::sqrt(c_squared) : std::numeric_limits<double>::quiet_NaN();
}

double AxialMode::omega(const ConeGeometry& cone, const EffectiveMass& mass) const {
  return mass.kinetic_scale() * c_squared / (cone.rho() * cone.rho());
}

double axial_residual_level(const ConeGeometry& cone, int eta, double c_squared) {
  const AxialEquation eq(cone, std::abs(eta), c_squared);
  // Z'(0) = 1 in physical units means dZ/dx = rho.
  return cone.rho() * end_value(eq, eq.steps());
}

double axial_residual(const ConeGeometry& cone, int eta, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("axial_residual: c must be positive");
  return axial_residual_level(cone, eta, c * c);
}

int levels_below(const ConeGeometry& cone, int eta, double c_squared) {
  const AxialEquation eq(cone, std::abs(eta), c_squared);
  return interior_zero_count(eq, eq.steps());
}

std::vector<double> find_levels(const ConeGeometry& cone, int eta, int count) {
  if (count < 1) throw std::invalid_argument("find_levels: count must be >= 1");
  eta = std::abs(eta);
  std::vector<double> levels;
  levels.reserve(static_cast<std::size_t>(count));

  // Levels at or below zero: isolate each by bisection on the zero count.
  const int below_zero = levels_below(cone, eta, 0.0);
  if (below_zero > 0) {
    const double floor = lowest_possible_level(AxialEquation(cone, eta, 0.0));
    for (int n = 0; n < std::min(below_zero, count); ++n) {
      double lo = floor, hi = 0.0;
      for (int iter = 0; iter < 200; ++iter) {
        const int at_lo = levels_below(cone, eta, lo);
        const int at_hi = levels_below(cone, eta, hi);
        if (at_lo == n && at_hi == n + 1) break;
        const double mid = 0.5 * (lo + hi);
        if (levels_below(cone, eta, mid) <= n) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      levels.push_back(refine_level_in_s(cone, eta, lo, hi));
    }
  }

  // Positive levels: scan c with a fixed step; split any interval that
  // holds more than one root.
  struct Interval {
    double lo, hi;
    int n_lo, n_hi;
  };
  double c_prev = 0.0;
  int n_prev = below_zero;
  while (static_cast<int>(levels.size()) < count) {
    const double c_next = c_prev + kScanStep;
    if (c_next > kScanCeiling) {
      std::ostringstream os;
      os << "find_eigenvalues: bracketed only " << levels.size() << " of " << count << " roots below c = "
         << kScanCeiling;
      throw BracketError(os.str());
    }
    const int n_next = levels_below(cone, eta, c_next * c_next);
    std::vector<Interval> pending{{c_prev, c_next, n_prev, n_next}};
    std::vector<Interval> brackets;
    while (!pending.empty()) {
      const Interval iv = pending.back();
      pending.pop_back();
      const int jump = iv.n_hi - iv.n_lo;
      if (jump == 1) {
        brackets.push_back(iv);
      } else if (jump > 1) {
        if (iv.hi - iv.lo < 1e-12) throw BracketError("find_eigenvalues: roots closer than 1e-12 cannot be separated");
        const double mid = 0.5 * (iv.lo + iv.hi);
        const int n_mid = levels_below(cone, eta, mid * mid);
        pending.push_back({mid, iv.hi, n_mid, iv.n_hi});
        pending.push_back({iv.lo, mid, iv.n_lo, n_mid});
      }
    }
    std::sort(brackets.begin(), brackets.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (const Interval& iv : brackets) {
      if (static_cast<int>(levels.size()) >= count) break;
      levels.push_back(refine_level_in_c(cone, eta, iv.lo, iv.hi));
    }
    c_prev = c_next;
    n_prev = n_next;
  }
  return levels;
}

std::vector<double> find_eigenvalues(const ConeGeometry& cone, int eta, int count) {
  const std::vector<double> levels = find_levels(cone, eta, count);
  std::vector<double> roots;
  roots.reserve(levels.size());
  for (std::size_t n = 0; n < levels.size(); ++n) {
    if (!(levels[n] > 0.0)) {
      std::ostringstream os;
      os << "level " << n << " has c^2 = " << levels[n] << " <= 0; no real c exists";
      throw NonPositiveLevelError(os.str());
    }
    roots.push_back(std::sqrt(levels[n]));
  }
  return roots;
}

std::vector<double> uniform_grid(const ConeGeometry& cone, std::size_t points) {
  if (points < 3) throw std::invalid_argument("uniform_grid: need at least 3 points");
  std::vector<double> grid(points);
  const double h = cone.z_max() / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = h * static_cast<double>(i);
  grid.back() = cone.z_max();
  return grid;
}

AxialMode eigenfunction(const ConeGeometry& cone, int eta, double c_squared, std::span<const double> grid) {
  if (grid.size() < 3) throw std::invalid_argument("eigenfunction: grid needs at least 3 points");
  const double scale = cone.z_max();
  if (std::abs(grid.front()) > 1e-12 * scale || std::abs(grid.back() - cone.z_max()) > 1e-12 * scale) {
    throw std::invalid_argument("eigenfunction: grid must span [0, z_max]");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("eigenfunction: grid must be strictly increasing");
  }

  const AxialEquation eq(cone, std::abs(eta), c_squared);
  const int base_steps = eq.steps();
  const double rho = cone.rho();

  // Walk the grid interval by interval so that every sample is a step boundary.
  std::vector<double> z_scaled(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) z_scaled[i] = grid[i] / rho;
  z_scaled.back() = eq.x_max;

  std::vector<double> values(grid.size(), 0.0);
  double norm = 0.0;
  double Z = 0.0, P = 1.0;
  auto rhs = [&](double x, const std::array<double, 3>& y) {
    const double f = eq.radius(x);
    return std::array<double, 3>{y[1] / f, -(eq.a0 / f + eq.s * eq.slope_factor * f) * y[0], y[0] * y[0] * f};
  };
  std::array<double, 3> y{Z, P, 0.0};
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double x0 = z_scaled[i], x1 = z_scaled[i + 1];
    const int sub = std::max(1, static_cast<int>(std::ceil(base_steps * (x1 - x0) / eq.x_max)));
    const double h = (x1 - x0) / sub;
    for (int k = 0; k < sub; ++k) {
      const double x = x0 + k * h;
      auto step = [&](const std::array<double, 3>& base, double a, const std::array<double, 3>& d) {
        return std::array<double, 3>{base[0] + a * d[0], base[1] + a * d[1], base[2] + a * d[2]};
      };
      const auto k1 = rhs(x, y);
      const auto k2 = rhs(x + 0.5 * h, step(y, 0.5 * h, k1));
      const auto k3 = rhs(x + 0.5 * h, step(y, 0.5 * h, k2));
      const auto k4 = rhs(x + h, step(y, h, k3));
      for (int c = 0; c < 3; ++c) y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    }
    if (!std::isfinite(y[0]) || !std::isfinite(y[2])) throw IntegrationError("eigenfunction: non-finite state");
    values[i + 1] = y[0];
  }
  norm = y[2];

  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  if (std::abs(values.back()) > 1e-5 * peak) {
    std::ostringstream os;
    os << "eigenfunction: c^2 = " << c_squared << " does not satisfy the far-rim condition";
    throw std::invalid_argument(os.str());
  }

  // Physical Z(z) = A Z~(z/rho); int Z^2 (rho + lambda z) sqrt(1+lambda^2) dz
  //   = A^2 rho^2 sqrt(1+lambda^2) int Z~^2 f dx.
  const double physical_norm = rho * rho * std::sqrt(eq.slope_factor) * norm;
  if (!std::isfinite(physical_norm) || !(physical_norm > 0.0)) {
    throw NormalizationError("eigenfunction: normalization integral is not finite and positive");
  }
  const double amplitude = 1.0 / std::sqrt(physical_norm);

  AxialMode mode;
  mode.channel = channel(eta, cone.lambda());
  mode.c_squared = c_squared;
  mode.z_grid.assign(grid.begin(), grid.end());
  mode.samples.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) mode.samples[i] = amplitude * values[i];
  mode.samples.front() = 0.0;
  mode.samples.back() = 0.0;

  int nodes = 0;
  for (std::size_t i = 2; i + 1 < mode.samples.size(); ++i) {
    if ((mode.samples[i] < 0.0) != (mode.samples[i - 1] < 0.0) && mode.samples[i] != 0.0) ++nodes;
  }
  mode.index_n = nodes;
  return mode;
}

AxialMode eigenfunction(const ConeGeometry& cone, int eta, double c_squared) {
  const std::vector<double> grid = uniform_grid(cone);
  return eigenfunction(cone, eta, c_squared, grid);
}

double gp_expectation(const ConeGeometry& cone, const AxialMode& mode, const EffectiveMass& mass) {
  const AxialEquation eq(cone, std::abs(mode.channel.eta), mode.c_squared);
  const Generatrix gen = Generatrix::cone(cone.rho(), cone.lambda());
  const double rho = cone.rho();
  auto extra = [&](double x, double z_value) {
    const double weight = z_value * z_value * eq.radius(x);
    const double u = geometric_potential_at(gen, x * rho, mass).U;
    return std::array<double, 2>{weight, u * weight};
  };
  const auto y = shoot<2>(eq, eq.steps(), extra, NoObserve{});
  if (!(y[2] > 0.0) || !std::isfinite(y[3])) throw NormalizationError("gp_expectation: quadrature failed");
  return y[3] / y[2];
}

}  // namespace revsurf::axial
