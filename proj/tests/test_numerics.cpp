#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "revsurf/contour.hpp"
#include "revsurf/curve_analysis.hpp"
#include "revsurf/errors.hpp"
#include "revsurf/interpolation.hpp"
#include "revsurf/parallel.hpp"
#include "revsurf/quadrature.hpp"
#include "revsurf/tridiagonal.hpp"

using namespace revsurf;

TEST(Quadrature, GaussLegendreIsExactForPolynomials) {
  for (std::size_t order : {1u, 2u, 4u, 8u, 20u}) {
    const auto rule = gauss_legendre(order);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    EXPECT_NEAR(wsum, 2.0, 1e-14);
    const int degree = static_cast<int>(2 * order - 1);
    const double value = integrate(rule, 0.0, 2.0, [&](double x) { return std::pow(x, degree); });
    EXPECT_NEAR(value, std::pow(2.0, degree + 1) / (degree + 1), 1e-12 * std::pow(2.0, degree + 1));
  }
}

TEST(Quadrature, Simpson) {
  std::vector<double> s(101);
  for (int i = 0; i <= 100; ++i) s[static_cast<std::size_t>(i)] = std::sin(M_PI * i / 100.0);
  EXPECT_NEAR(simpson(s, M_PI / 100.0), 2.0, 1e-7);
  std::vector<double> even(4, 1.0);
  EXPECT_THROW((void)simpson(even, 1.0), std::invalid_argument);
}

TEST(Interpolation, ReproducesLinearDataAndDerivatives) {
  std::vector<double> x{0, 0.5, 1.5, 2, 3}, y;
  for (double v : x) y.push_back(3 * v - 1);
  MonotoneCubic f(x, y);
  for (double t : {0.0, 0.25, 1.0, 1.7, 3.0}) {
    const auto v = f.evaluate(t);
    EXPECT_NEAR(v.value, 3 * t - 1, 1e-14);
    EXPECT_NEAR(v.first, 3.0, 1e-14);
    EXPECT_NEAR(v.second, 0.0, 1e-12);
  }
  EXPECT_THROW((void)f.evaluate(3.1), std::out_of_range);
}

TEST(Interpolation, PreservesMonotonicity) {
  std::vector<double> x{0, 1, 2, 3, 4, 5}, y{0, 0, 0, 1, 1, 1};
  MonotoneCubic f(x, y);
  double prev = -1.0;
  for (double t = 0.0; t <= 5.0; t += 0.01) {
    const double v = f.evaluate(t).value;
    EXPECT_GE(v, prev - 1e-15);
    EXPECT_GE(v, -1e-15);
    EXPECT_LE(v, 1.0 + 1e-15);
    prev = v;
  }
}

TEST(Interpolation, RejectsBadTables) {
  std::vector<double> x{0, 1, 1, 2}, y{0, 1, 2, 3};
  EXPECT_THROW(MonotoneCubic(x, y), std::invalid_argument);
  std::vector<double> x3{0, 1, 2}, y3{0, 1, 2};
  EXPECT_THROW(MonotoneCubic(x3, y3), std::invalid_argument);
}

TEST(Tridiagonal, SolvesComplexSystemWithPivoting) {
  using c = std::complex<double>;
  // first pivot is zero: needs row exchange
  std::vector<c> lower{c(1, 0), c(2, -1), c(1, 1)};
  std::vector<c> diag{c(0, 0), c(4, 0), c(3, 1), c(5, 0)};
  std::vector<c> upper{c(2, 0), c(1, 0), c(-1, 2)};
  const std::vector<c> x{c(1, 2), c(-1, 0), c(0.5, -0.5), c(2, 1)};
  std::vector<c> b(4);
  for (std::size_t i = 0; i < 4; ++i) {
    b[i] = diag[i] * x[i];
    if (i > 0) b[i] += lower[i - 1] * x[i - 1];
    if (i < 3) b[i] += upper[i] * x[i + 1];
  }
  solve_tridiagonal(lower, diag, upper, std::span<c>(b));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_LT(std::abs(b[i] - x[i]), 1e-13);
}

TEST(Tridiagonal, ReportsSingularSystem) {
  std::vector<double> lower{1.0}, diag{1.0, 1.0}, upper{1.0}, rhs{1.0, 2.0};
  try {
    solve_tridiagonal(lower, diag, upper, std::span<double>(rhs));
    FAIL() << "expected SingularSystemError";
  } catch (const SingularSystemError& e) {
    EXPECT_GT(e.condition_estimate(), 1e15);
  }
}

TEST(CurveAnalysis, ExtremaAndAmplitude) {
  const std::vector<double> y{0.0, 1.0, 0.2, 0.2, 0.9, 0.1, 0.5, 0.5, 0.3};
  EXPECT_EQ(local_maxima(y), (std::vector<std::size_t>{1, 4, 6}));
  EXPECT_EQ(local_minima(y), (std::vector<std::size_t>{2, 5}));
  EXPECT_DOUBLE_EQ(oscillation_amplitude(y), 1.0);
  EXPECT_DOUBLE_EQ(off_resonance_mean(y), 0.15);
  EXPECT_TRUE(std::isnan(off_resonance_mean(std::vector<double>{1, 2, 3})));
}

TEST(CurveAnalysis, Prominence) {
  const std::vector<double> y{0.0, 1.0, 0.4, 0.6, 0.5, 2.0, 0.0};
  EXPECT_NEAR(prominence(y, 1), 0.6, 1e-15);  // base is the 0.4 col before the higher peak
  EXPECT_NEAR(prominence(y, 3), 0.1, 1e-15);
  EXPECT_DOUBLE_EQ(prominence(y, 5), 2.0);
  EXPECT_DOUBLE_EQ(max_prominence(y), 2.0);
  EXPECT_EQ(max_prominence(std::vector<double>{1, 2, 3}), 0.0);
}

namespace {

GridSurface plane(std::size_t nx, std::size_t ny) {
  GridSurface s;
  for (std::size_t i = 0; i < nx; ++i) s.x.push_back(static_cast<double>(i) / (nx - 1));
  for (std::size_t j = 0; j < ny; ++j) s.y.push_back(2.0 * static_cast<double>(j) / (ny - 1));
  for (double x : s.x) {
    for (std::size_t j = 0; j < ny; ++j) s.values.push_back(x);
  }
  return s;
}

}  // namespace

TEST(Contour, PlaneGivesVerticalLine) {
  const auto lines = contour_extract(plane(11, 7), 0.55);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines.front().size(), 7u);
  double ymin = 1e9, ymax = -1e9;
  for (const auto& p : lines.front()) {
    EXPECT_NEAR(p.x, 0.55, 1e-14);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  EXPECT_DOUBLE_EQ(ymin, 0.0);
  EXPECT_DOUBLE_EQ(ymax, 2.0);
}

TEST(Contour, ConstantAndOutOfRangeAreEmpty) {
  auto s = plane(5, 5);
  std::fill(s.values.begin(), s.values.end(), 0.3);
  EXPECT_TRUE(contour_extract(s, 0.2).empty());
  EXPECT_TRUE(contour_extract(s, 0.4).empty());
  EXPECT_TRUE(contour_extract(plane(5, 5), 3.0).empty());
}

TEST(Contour, CircleIsClosedLoop) {
  GridSurface s;
  const std::size_t n = 41;
  for (std::size_t i = 0; i < n; ++i) {
    s.x.push_back(-1.0 + 2.0 * i / (n - 1));
    s.y.push_back(-1.0 + 2.0 * i / (n - 1));
  }
  for (double x : s.x) {
    for (double y : s.y) s.values.push_back(x * x + y * y);
  }
  const auto lines = contour_extract(s, 0.25);
  ASSERT_EQ(lines.size(), 1u);
  const auto& loop = lines.front();
  EXPECT_DOUBLE_EQ(loop.front().x, loop.back().x);
  EXPECT_DOUBLE_EQ(loop.front().y, loop.back().y);
  for (const auto& p : loop) EXPECT_NEAR(std::hypot(p.x, p.y), 0.5, 0.01);
}

TEST(Contour, SkipsNonFiniteCells) {
  auto s = plane(6, 6);
  s.values[2 * 6 + 3] = std::nan("");
  const auto lines = contour_extract(s, 0.5);
  for (const auto& l : lines) {
    for (const auto& p : l) EXPECT_TRUE(std::isfinite(p.x) && std::isfinite(p.y));
  }
  EXPECT_GE(lines.size(), 1u);
}

TEST(Parallel, VisitsEachIndexOnceAndRethrows) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, 3,
                            [](std::size_t i) {
                              if (i == 7) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

TEST(Parallel, DefaultWorkersFromEnvironment) {
  setenv("REVSURF_WORKERS", "3", 1);
  EXPECT_EQ(default_workers(), 3u);
  unsetenv("REVSURF_WORKERS");
  EXPECT_GE(default_workers(), 1u);
}
