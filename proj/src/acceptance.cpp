#include "revsurf/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "revsurf/axial_solver.hpp"
#include "revsurf/curve_analysis.hpp"
#include "revsurf/experiments.hpp"
#include "revsurf/fd_oracle.hpp"
#include "revsurf/parallel.hpp"
#include "revsurf/transport.hpp"

namespace revsurf::acceptance {

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string num(double v, int digits = 7) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

CriterionResult timed(std::string id, std::string description, const std::function<Outcome()>& check,
                      double time_limit = 0.0) {
  CriterionResult r{std::move(id), std::move(description), false, "", 0.0};
  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome o = check();
    r.passed = o.passed;
    r.detail = o.detail;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit > 0.0 && r.seconds > time_limit) {
    r.passed = false;
    r.detail += "; took " + num(r.seconds, 3) + " s, limit " + num(time_limit, 3) + " s";
  }
  return r;
}

Outcome table1() {
  const std::array<std::pair<double, std::array<double, 3>>, 2> cases{{{1.5, {1.451, 2.946, 4.432}},
                                                                        {4.0, {0.5233, 1.091, 1.652}}}};
  Outcome o{true, ""};
  for (const auto& [zm, expected] : cases) {
    const auto c = axial::find_eigenvalues(axial::ConeGeometry(1.0, 1.0, zm), 0, 3);
    o.detail += "zmax=" + num(zm, 3) + ": ";
    for (std::size_t n = 0; n < 3; ++n) {
      o.passed = o.passed && std::abs(c[n] - expected[n]) <= 1e-3 * expected[n];
      o.detail += num(c[n]) + " ";
    }
  }
  return o;
}

Outcome oracle_equivalence(unsigned workers) {
  const auto lambdas = linspace(0.3, 2.0, 5);
  const auto heights = linspace(1.5, 4.0, 5);
  std::vector<double> worst(25, 0.0);
  parallel_for(25, workers, [&](std::size_t k) {
    const axial::ConeGeometry cone(1.0, lambdas[k / 5], heights[k % 5]);
    const auto shoot = axial::find_eigenvalues(cone, 0, 3);
    const auto fd = axial::fd_spectrum_oracle(cone, 0, 4000, 3);
    for (std::size_t n = 0; n < 3; ++n) worst[k] = std::max(worst[k], std::abs(shoot[n] - fd[n]) / fd[n]);
  });
  const double w = *std::max_element(worst.begin(), worst.end());
  return {w < 1e-4, "max relative difference " + num(w, 3) + " over 25 cones x 3 modes"};
}

Outcome cylinder_limit() {
  Outcome o{true, ""};
  double worst = 0.0;
  for (double zm : {1.5, 4.0}) {
    for (int eta : {0, 1}) {
      const auto c = axial::find_eigenvalues(axial::ConeGeometry(1.0, 1e-6, zm), eta, 3);
      for (int n = 1; n <= 3; ++n) {
        const double k = n * M_PI / zm;
        const double expected = std::sqrt(k * k - 0.25 + eta * eta);
        worst = std::max(worst, std::abs(c[n - 1] - expected) / expected);
      }
    }
  }
  o.passed = worst < 1e-3;
  o.detail = "max relative deviation " + num(worst, 3) + " (zmax 1.5 and 4, eta 0 and 1)";
  return o;
}

Outcome pd_shape() {
  const axial::ConeGeometry cone(1.0, 1.0, 1.5);
  const auto level = axial::find_levels(cone, 0, 1).front();
  const auto mode = axial::eigenfunction(cone, 0, level);
  std::vector<double> pd(mode.samples.size());
  std::transform(mode.samples.begin(), mode.samples.end(), pd.begin(), [](double z) { return z * z; });
  const auto peaks = local_maxima(pd);
  if (peaks.size() != 1) return {false, std::to_string(peaks.size()) + " PD peaks, expected 1"};
  const double z = mode.z_grid[peaks.front()];
  return {z < 0.75, "peak at z/rho = " + num(z, 5) + " (half height 0.75)"};
}

Outcome monotone_trends(unsigned workers) {
  Outcome o{true, ""};
  const auto lambdas = linspace(0.3, 2.0, 18);
  for (double zm : {2.5, 4.0}) {
    std::vector<std::vector<double>> c(lambdas.size());
    parallel_for(lambdas.size(), workers, [&](std::size_t i) {
      c[i] = axial::find_eigenvalues(axial::ConeGeometry(1.0, lambdas[i], zm), 0, 3);
    });
    for (std::size_t n = 0; n < 3; ++n) {
      std::vector<double> curve;
      for (const auto& row : c) curve.push_back(row[n]);
      const bool ok = strictly_decreasing(curve);
      o.passed = o.passed && ok;
      if (!ok) o.detail += "c" + std::to_string(n + 1) + "(lambda) not decreasing at zmax=" + num(zm, 3) + "; ";
    }
  }
  const auto heights = linspace(1.0, 6.0, 21);
  for (double lambda : {0.3, 0.8, 1.5, 2.0}) {
    std::vector<double> ground(heights.size());
    parallel_for(heights.size(), workers, [&](std::size_t i) {
      ground[i] = axial::find_eigenvalues(axial::ConeGeometry(1.0, lambda, heights[i]), 0, 1).front();
    });
    const bool ok = strictly_decreasing(ground);
    o.passed = o.passed && ok;
    if (!ok) o.detail += "c1(zmax) not decreasing at lambda=" + num(lambda, 3) + "; ";
  }
  if (o.passed) o.detail = "c1..c3 vs lambda (zmax 2.5, 4) and c1 vs zmax (lambda 0.3, 0.8, 1.5, 2) strictly decreasing";
  return o;
}

struct Shift {
  double omega;
  double expected_u;
};

Shift gaas_shift(double rho, double lambda, double zm, const EffectiveMass& mass) {
  const axial::ConeGeometry cone(rho, lambda, zm * rho);
  const double level = axial::find_levels(cone, 0, 1).front();
  const auto mode = axial::eigenfunction(cone, 0, level, axial::uniform_grid(cone, 201));
  return {mode.omega(cone, mass), axial::gp_expectation(cone, mode, mass)};
}

Outcome gaas_ratio(const AcceptanceOptions& opt) {
  const EffectiveMass mass{kGaAsMassRatio, opt.hbar2_over_2me};
  const Shift s = gaas_shift(10.0, 0.1, 2.0, mass);
  const double ratio = std::abs(s.expected_u) / s.omega;
  const auto lambdas = linspace(0.1, 2.0, 20);
  std::vector<double> along(lambdas.size());
  parallel_for(lambdas.size(), opt.workers, [&](std::size_t i) {
    const Shift t = gaas_shift(10.0, lambdas[i], 2.0, mass);
    along[i] = t.omega > 0.0 ? std::abs(t.expected_u) / t.omega : std::nan("");
  });
  const bool monotone = strictly_decreasing(along);
  return {std::abs(ratio - 0.10) <= 0.03 && monotone,
          "ratio " + num(ratio, 4) + " (target 0.10 +- 0.03); " + (monotone ? "" : "not ") +
              "decreasing in lambda at zmax/rho=2 (" + num(along.front(), 4) + " -> " + num(along.back(), 4) + ")"};
}

Outcome gaas_energy_scale(const AcceptanceOptions& opt) {
  // The same state in units of hbar^2/(2 m rho^2), converted with CODATA constants.
  const double rho = 10.0;
  const Shift s = gaas_shift(rho, 0.1, 2.0, EffectiveMass{kGaAsMassRatio, opt.hbar2_over_2me});
  const Shift unit = gaas_shift(1.0, 0.1, 2.0, EffectiveMass{1.0, 1.0});
  const double scale = codata_hbar2_over_2me() / (kGaAsMassRatio * rho * rho);
  const double dev_u = std::abs(s.expected_u / (unit.expected_u * scale) - 1.0);
  const double dev_w = std::abs(s.omega / (unit.omega * scale) - 1.0);
  return {dev_u < 1e-4 && dev_w < 1e-4, "<U> = " + num(s.expected_u, 6) + " meV, omega0 = " + num(s.omega, 6) +
                                            " meV; relative deviation from CODATA scale " +
                                            num(std::max(dev_u, dev_w), 3)};
}

transport::ScatterConfig transport_config(const AcceptanceOptions& opt) {
  transport::ScatterConfig c;
  c.grid_points = opt.transport_grid_points;
  c.hbar2_over_2me = opt.hbar2_over_2me;
  c.validate_solver();
  return c;
}

struct RandomJunction {
  JunctionGeometry geometry;
  double E_l;
};

std::vector<RandomJunction> random_junctions(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> r2(1.0, 5.0), ratio(2.0, 20.0), a(5.0, 20.0), frac(0.2, 0.8),
      energy(0.5, 50.0);
  std::vector<RandomJunction> out;
  for (std::size_t i = 0; i < count; ++i) {
    const double R2 = r2(rng), R1 = R2 * ratio(rng), half = a(rng);
    double f = frac(rng);
    if (f == 0.2) f = 0.5;  // open interval
    out.push_back({JunctionGeometry(R1, R2, half, f * half), energy(rng)});
  }
  return out;
}

std::string describe(const JunctionGeometry& j, double E) {
  return "R1=" + num(j.R1(), 5) + " R2=" + num(j.R2(), 5) + " a=" + num(j.a(), 5) + " eps=" + num(j.epsilon(), 5) +
         " E=" + num(E, 5);
}

Outcome unitarity(const AcceptanceOptions& opt) {
  auto config = transport_config(opt);
  const auto cases = random_junctions(opt.seed, 100);
  std::vector<double> dev(cases.size());
  parallel_for(cases.size(), opt.workers, [&](std::size_t i) {
    auto c = config;
    c.E_l = cases[i].E_l;
    const auto s = transport::solve_scattering(cases[i].geometry, c);
    dev[i] = std::abs(s.R_coeff + s.T - 1.0);
  });
  const auto worst = std::max_element(dev.begin(), dev.end());
  const auto& w = cases[static_cast<std::size_t>(worst - dev.begin())];
  return {*worst < 1e-6, "max |R+T-1| = " + num(*worst, 3) + " at " + describe(w.geometry, w.E_l)};
}

Outcome trivial_junction(const AcceptanceOptions& opt) {
  auto config = transport_config(opt);
  double worst = 0.0;
  for (double R : {2.0, 7.5}) {
    for (double E : {0.1, 1.0, 10.0, 25.0, 50.0}) {
      config.E_l = E;
      const auto s = transport::solve_scattering(JunctionGeometry(R, R, 10.0, 2.0), config);
      worst = std::max(worst, std::abs(s.T - 1.0));
    }
  }
  return {worst < 1e-8, "max |T-1| = " + num(worst, 3) + " for R1 = R2 in {2, 7.5} nm, E_l in [0.1, 50] meV"};
}

Outcome reciprocity(const AcceptanceOptions& opt) {
  auto config = transport_config(opt);
  const auto cases = random_junctions(opt.seed ^ 0x9e3779b97f4a7c15ull, 20);
  std::vector<double> dev(cases.size());
  parallel_for(cases.size(), opt.workers, [&](std::size_t i) {
    auto c = config;
    c.E_l = cases[i].E_l;
    const double E = transport::total_energy(c, cases[i].geometry);
    const auto left = transport::solve_at_total_energy(cases[i].geometry, E, c, transport::InjectionSide::from_R1);
    const auto right = transport::solve_at_total_energy(cases[i].geometry, E, c, transport::InjectionSide::from_R2);
    dev[i] = std::abs(left.T - right.T);
  });
  const double worst = *std::max_element(dev.begin(), dev.end());
  return {worst < 1e-6, "max |T_left - T_right| = " + num(worst, 3) + " over 20 configurations"};
}

Outcome experiment_anchors(experiments::ExperimentId id, const AcceptanceOptions& opt,
                           const std::vector<std::string>& required) {
  auto spec = experiments::default_spec(id);
  spec.transport_grid_points = opt.transport_grid_points;
  spec.hbar2_over_2me = opt.hbar2_over_2me;
  spec.workers = opt.workers;
  transport_config(opt);
  const auto summary = experiments::run_experiment(spec);
  Outcome o{true, ""};
  for (const auto& name : required) {
    const auto it = std::find_if(summary.anchors.begin(), summary.anchors.end(),
                                 [&](const experiments::AnchorResult& a) { return a.name == name; });
    if (it == summary.anchors.end()) {
      o.passed = false;
      o.detail += name + ": missing; ";
      continue;
    }
    o.passed = o.passed && it->passed;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += (it->passed ? "" : "FAILED ") + it->detail;
  }
  if (!summary.failures.empty()) {
    o.passed = false;
    o.detail += "; " + std::to_string(summary.failures.size()) + " point failures, first: " + summary.failures.front().message;
  }
  return o;
}

Outcome convergence(const AcceptanceOptions& opt) {
  auto config = transport_config(opt);
  const JunctionGeometry j(40.0, 2.0, 10.0, 2.0);
  config.E_l = 10.0;
  std::array<double, 3> T{};
  for (int k = 0; k < 3; ++k) {
    auto c = config;
    c.grid_points = config.grid_points << k;
    T[static_cast<std::size_t>(k)] = transport::solve_scattering(j, c).T;
  }
  const double d1 = std::abs(T[0] - T[1]), d2 = std::abs(T[1] - T[2]);
  const double order = std::log2(d1 / d2);
  const std::string detail = "T = " + num(T[0], 9) + ", " + num(T[1], 9) + ", " + num(T[2], 9) + " at " +
                             std::to_string(config.grid_points) + "/x2/x4 points; change " + num(d1, 3) +
                             ", observed order " + num(order, 3);
  return {d1 < 1e-4 && std::abs(order - 2.0) < 0.4, detail};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
  using experiments::ExperimentId;
  std::vector<CriterionResult> out;
  out.push_back(timed("table1_eigenvalues", "Table I roots for zmax/rho = 1.5 and 4 within 1e-3, under 5 s", table1, 5.0));
  out.push_back(timed("oracle_equivalence", "shooting vs finite-difference spectrum within 1e-4 on a 5x5 grid",
                      [&] { return oracle_equivalence(opt.workers); }, 120.0));
  out.push_back(timed("cylinder_limit", "lambda = 1e-6 reproduces the cylinder closed form within 1e-3", cylinder_limit));
  out.push_back(timed("pd_shape", "ground-state density of (lambda=1, zmax/rho=1.5) peaks below zmax/2", pd_shape));
  out.push_back(timed("monotone_level_trends", "levels decrease with lambda and with cone height",
                      [&] { return monotone_trends(opt.workers); }));
  out.push_back(timed("gaas_ratio", "GaAs |<U>|/omega0 = 0.10 +- 0.03 at (0.1, 2) and decreasing in lambda",
                      [&] { return gaas_ratio(opt); }));
  out.push_back(timed("gaas_energy_scale", "GaAs <U> and omega0 in meV match the CODATA hbar^2/2m_e scale",
                      [&] { return gaas_energy_scale(opt); }));
  out.push_back(timed("unitarity", "|R+T-1| < 1e-6 for 100 random junctions", [&] { return unitarity(opt); }));
  out.push_back(timed("trivial_junction", "R1 = R2 transmits fully within 1e-8", [&] { return trivial_junction(opt); }));
  out.push_back(timed("reciprocity", "left and right injection agree within 1e-6 at equal total energy",
                      [&] { return reciprocity(opt); }));
  out.push_back(timed("fig6_property", "oscillation amplitude grows and off-resonance mean falls with R1", [&] {
    return experiment_anchors(ExperimentId::fig6_T_vs_E, opt,
                              {"fig6 oscillation amplitude grows with R1", "fig6 off-resonance mean falls with R1"});
  }));
  out.push_back(timed("fig7_property", "smaller eps raises resonance amplitude, peaks move less than a spacing", [&] {
    return experiment_anchors(ExperimentId::fig7_T_vs_E_eps, opt,
                              {"fig7 amplitude grows as eps shrinks", "fig7 peaks of eps=1 within one spacing",
                               "fig7 peaks of eps=0.5 within one spacing"});
  }));
  out.push_back(timed("fig8_property", "T(R1) amplitude grows with R1; a=20 peaks less prominent than a=5", [&] {
    return experiment_anchors(ExperimentId::fig8_T_vs_R1, opt,
                              {"fig8 a=5 amplitude grows with R1", "fig8 peaks less pronounced for a=20 than a=5"});
  }));
  out.push_back(timed("transport_convergence", "T changes < 1e-4 from N to 2N grid points, order near 2",
                      [&] { return convergence(opt); }));
  return out;
}

std::string format_report(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) {
    os << (r.passed ? "PASS " : "FAIL ") << r.id << " (" << num(r.seconds, 3) << " s): " << r.detail << '\n';
  }
  return os.str();
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.passed; });
}

}  // namespace revsurf::acceptance
