#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "revsurf/errors.hpp"
#include "revsurf/surface_geometry.hpp"
#include "revsurf/transport.hpp"

using namespace revsurf;
using namespace revsurf::transport;
using cplx = std::complex<double>;

namespace {

constexpr double kC = 38.0998 / 0.173;  // hbar^2/2m for the junction mass, meV nm^2

ScatterConfig config_at(double E_l, int grid = 4000) {
  ScatterConfig c;
  c.E_l = E_l;
  c.grid_points = grid;
  return c;
}

// Continuum transmission by integrating (p phi')' + w q phi = 0 from the
// transmitted wave at z = a back to z = -a with classical RK4, one segment
// per smooth branch.
double continuum_T(const JunctionGeometry& j, double E_l, bool gp = true, int n = 0, int steps_per_nm = 400) {
  const double R1 = j.R1(), R2 = j.R2();
  const double g1 = gp ? 0.25 / (R1 * R1) : 0.0, g2 = gp ? 0.25 / (R2 * R2) : 0.0;
  const double E = E_l + kC * n * n / (R1 * R1) - kC * g1;  // total energy
  const double k1 = std::sqrt(E / kC - n * n / (R1 * R1) + g1);
  const double k2 = std::sqrt(E / kC - n * n / (R2 * R2) + g2);
  // state (phi, P = p phi')
  auto rhs = [&](double z, const std::array<cplx, 2>& y) {
    const auto s = junction_profile(j, z);
    const double root = std::sqrt(1.0 + s.fz * s.fz);
    const double p = s.f / root, w = s.f * root;
    const double G = gp ? geometric_potential_reduced(s) : 0.0;
    const double q = E / kC + G - n * n / (s.f * s.f);
    return std::array<cplx, 2>{y[1] / p, -w * q * y[0]};
  };
  const double a = j.a();
  std::array<cplx, 2> y{std::exp(cplx(0, k2 * a)), R2 * cplx(0, k2) * std::exp(cplx(0, k2 * a))};
  const auto bp = j.breakpoints();
  const std::array<double, 5> knots{a, bp[2], bp[1], bp[0], -a};
  for (std::size_t s = 0; s + 1 < knots.size(); ++s) {
    const double z0 = knots[s], z1 = knots[s + 1];
    if (z0 == z1) continue;
    const int m = std::max(4, static_cast<int>(std::ceil(std::abs(z1 - z0) * steps_per_nm)));
    const double h = (z1 - z0) / m;
    // evaluate strictly inside the segment so the branch is unambiguous
    for (int i = 0; i < m; ++i) {
      const double z = z0 + i * h;
      auto add = [](const std::array<cplx, 2>& u, const std::array<cplx, 2>& v, double f) {
        return std::array<cplx, 2>{u[0] + f * v[0], u[1] + f * v[1]};
      };
      const double zs = (i == 0) ? z + 1e-12 * h : z;
      const double ze = (i == m - 1) ? z + h - 1e-12 * h : z + h;
      const auto k_1 = rhs(zs, y);
      const auto k_2 = rhs(z + 0.5 * h, add(y, k_1, 0.5 * h));
      const auto k_3 = rhs(z + 0.5 * h, add(y, k_2, 0.5 * h));
      const auto k_4 = rhs(ze, add(y, k_3, h));
      for (int c = 0; c < 2; ++c) y[c] += h / 6.0 * (k_1[c] + 2.0 * k_2[c] + 2.0 * k_3[c] + k_4[c]);
    }
  }
  // at z = -a: phi = A e^{ik1 z} + B e^{-ik1 z}, p = R1
  const cplx dphi = y[1] / R1;
  const cplx A = 0.5 * (y[0] + dphi / cplx(0, k1)) * std::exp(cplx(0, k1 * a));
  return (k2 * R2) / (k1 * R1) / std::norm(A);
}

}  // namespace

TEST(TotalEnergy, Examples) {
  const JunctionGeometry j(40, 2, 10, 2);
  EXPECT_NEAR(total_energy(config_at(10.0), j), 10.0 - kC / 6400.0, 1e-12);
  EXPECT_NEAR(total_energy(config_at(10.0), j), 9.9656, 1e-4);
  EXPECT_NEAR(total_energy(config_at(7.0), JunctionGeometry(1e6, 2, 10, 2)), 7.0, 1e-9);
  auto c = config_at(5.0);
  c.mode = 1;
  EXPECT_NEAR(total_energy(c, JunctionGeometry(10, 2, 10, 2)), 5.0 + kC / 100.0 - kC / 400.0, 1e-12);
}

TEST(LeadWavenumbers, Examples) {
  const JunctionGeometry j(40, 2, 10, 2);
  const EffectiveMass m{0.173};
  const double E = total_energy(config_at(10.0), j);
  const auto k = lead_wavenumbers(j, E, 0, m);
  EXPECT_NEAR(k.k1, std::sqrt(10.0 / kC), 1e-12);
  EXPECT_NEAR(k.k1, 0.2131, 1e-4);
  EXPECT_NEAR(k.k2, std::sqrt((E + kC / 16.0) / kC), 1e-12);
  EXPECT_GT(k.k2, k.k1);
  EXPECT_TRUE(k.outgoing_open);

  const JunctionGeometry sym(5, 5, 10, 2);
  const auto s = lead_wavenumbers(sym, 3.0, 0, m);
  EXPECT_DOUBLE_EQ(s.k1, s.k2);
}

TEST(LeadWavenumbers, ClosedInjectionChannelRejected) {
  const JunctionGeometry j(40, 2, 10, 2);
  const EffectiveMass m{0.173};
  // n = 1 threshold in the R1 lead is kC (1/1600 - 1/6400)
  EXPECT_THROW((void)lead_wavenumbers(j, 0.05, 1, m), ClosedChannelError);
  EXPECT_THROW((void)lead_wavenumbers(j, -1.0, 0, m), ClosedChannelError);
}

TEST(Scattering, UniformCylinderTransmitsFully) {
  for (double R : {2.0, 5.0, 30.0}) {
    for (double E : {0.05, 1.0, 12.5, 49.0}) {
      for (int n : {0, 1}) {
        for (bool gp : {true, false}) {
          auto c = config_at(E);
          c.mode = n;
          c.include_gp = gp;
          const auto s = solve_scattering(JunctionGeometry(R, R, 10, 2), c);
          EXPECT_NEAR(s.T, 1.0, 1e-8);
          EXPECT_LT(std::abs(s.r), 1e-8);
        }
      }
    }
  }
}

TEST(Scattering, CurrentConservationRandom) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double R2 = 1.0 + 4.0 * u(rng), R1 = R2 * (2.0 + 18.0 * u(rng)), a = 5.0 + 15.0 * u(rng);
    const double eps = a * (0.2 + 0.6 * u(rng));
    const double E = 0.5 + 49.5 * u(rng);
    const auto s = solve_scattering(JunctionGeometry(R1, R2, a, eps), config_at(E));
    EXPECT_NEAR(s.R_coeff + s.T, 1.0, 1e-6);
    EXPECT_GE(s.T, 0.0);
    EXPECT_LE(s.T, 1.0 + 1e-6);
  }
}

TEST(Scattering, Reciprocity) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double R2 = 1.0 + 4.0 * u(rng), R1 = R2 * (2.0 + 18.0 * u(rng)), a = 5.0 + 15.0 * u(rng);
    const JunctionGeometry j(R1, R2, a, a * (0.2 + 0.6 * u(rng)));
    const auto c = config_at(0.5 + 49.5 * u(rng));
    const double E = total_energy(c, j);
    const auto left = solve_at_total_energy(j, E, c, InjectionSide::from_R1);
    const auto right = solve_at_total_energy(j, E, c, InjectionSide::from_R2);
    EXPECT_NEAR(left.T, right.T, 1e-6);
    EXPECT_EQ(right.side, InjectionSide::from_R2);
  }
}

TEST(Scattering, MatchesContinuumIntegration) {
  struct Case {
    double R1, R2, a, eps, E;
  };
  for (const Case& k : {Case{40, 2, 10, 2, 10}, Case{20, 2, 10, 2, 3.3}, Case{30, 3, 10, 0.5, 27}, Case{12, 4, 5, 3, 45},
                        Case{10, 2, 20, 2, 0.7}}) {
    const JunctionGeometry j(k.R1, k.R2, k.a, k.eps);
    const double reference = continuum_T(j, k.E);
    const double T = solve_scattering(j, config_at(k.E, 16000)).T;
    EXPECT_NEAR(T, reference, 1e-5) << "R1=" << k.R1 << " E=" << k.E;
  }
}

TEST(Scattering, SecondOrderGridConvergence) {
  const JunctionGeometry j(40, 2, 10, 2);
  const double t1 = solve_scattering(j, config_at(10.0, 2000)).T;
  const double t2 = solve_scattering(j, config_at(10.0, 4000)).T;
  const double t3 = solve_scattering(j, config_at(10.0, 8000)).T;
  EXPECT_LT(std::abs(t2 - t3), 1e-4);
  EXPECT_NEAR(std::log2(std::abs(t1 - t2) / std::abs(t2 - t3)), 2.0, 0.2);
}

TEST(Scattering, NodeOnBranchPointIsStable) {
  const JunctionGeometry j(40, 2, 10, 2);
  // 3999 interior nodes put a node exactly on every branch point (spacing 20/4000); 4000 do not.
  for (double E : {2.0, 10.0, 31.0}) {
    const double on = solve_scattering(j, config_at(E, 3999)).T;
    const double off = solve_scattering(j, config_at(E, 4000)).T;
    EXPECT_LT(std::abs(on - off), 1e-4 * on);
  }
}

TEST(Scattering, GeometricPotentialSwitch) {
  const JunctionGeometry j(40, 2, 10, 2);
  auto with = config_at(10.0);
  auto without = with;
  without.include_gp = false;
  const double t_gp = solve_scattering(j, with).T;
  const double t_flat = solve_scattering(j, without).T;
  EXPECT_GT(std::abs(t_gp - t_flat), 1e-3);
  EXPECT_NEAR(t_flat, continuum_T(j, 10.0, false), 1e-5);
}

TEST(Scattering, LowEnergyIsMismatchDominated) {
  const auto s = solve_scattering(JunctionGeometry(40, 2, 10, 2), config_at(0.01));
  EXPECT_LT(s.T, 0.1);
}

TEST(Scattering, EvanescentOutgoingChannel) {
  // n = 1 opens in the R2 lead only above kC (1/4 - 1/16) which exceeds the injected energy
  auto c = config_at(10.0);
  c.mode = 1;
  const auto s = solve_scattering(JunctionGeometry(40, 2, 10, 2), c);
  EXPECT_FALSE(s.outgoing_open);
  EXPECT_EQ(s.T, 0.0);
  const double E = total_energy(c, JunctionGeometry(40, 2, 10, 2));
  EXPECT_NEAR(s.kappa, std::sqrt(1.0 / 4.0 - 1.0 / 16.0 - E / kC), 1e-12);
  EXPECT_NEAR(s.R_coeff, 1.0, 1e-8);
  for (const auto& v : s.phi) EXPECT_TRUE(std::isfinite(std::abs(v)));
}

TEST(Scattering, SolutionLayout) {
  const auto s = solve_scattering(JunctionGeometry(40, 2, 10, 2), config_at(10.0, 1000));
  ASSERT_EQ(s.z.size(), s.phi.size());
  EXPECT_DOUBLE_EQ(s.z.front(), -10.0);
  EXPECT_DOUBLE_EQ(s.z.back(), 10.0);
  EXPECT_NEAR(s.E_total, 9.9656, 1e-4);
  EXPECT_NEAR(s.k1, 0.2131, 1e-4);
}

TEST(Scattering, RejectsInvalidConfig) {
  const JunctionGeometry j(40, 2, 10, 2);
  EXPECT_THROW((void)solve_scattering(j, config_at(10.0, 50)), std::invalid_argument);
  EXPECT_THROW((void)solve_scattering(j, config_at(0.0)), std::invalid_argument);
  auto c = config_at(1.0);
  c.mass_ratio = -1;
  EXPECT_THROW((void)solve_scattering(j, c), std::invalid_argument);
}

TEST(Sweeps, EnergyTableAndValidation) {
  const JunctionGeometry j(40, 2, 10, 2);
  const std::vector<double> energies{0.1, 5.0, 10.0, 20.0};
  const auto serial = transmission_vs_energy(j, energies, config_at(1.0), 1);
  const auto threaded = transmission_vs_energy(j, energies, config_at(1.0), 3);
  ASSERT_EQ(serial.T.size(), 4u);
  EXPECT_TRUE(serial.failures.empty());
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(serial.T[i], threaded.T[i]);
    EXPECT_EQ(serial.T[i], solve_scattering(j, config_at(energies[i])).T);
  }
  const std::vector<double> bad{1.0, 1.0};
  EXPECT_THROW((void)transmission_vs_energy(j, bad, config_at(1.0)), std::invalid_argument);
}

TEST(Sweeps, RadiusTable) {
  const std::vector<double> radii{2.05, 10.0, 30.0};
  const auto t = transmission_vs_R1(radii, 5.0, FixedJunctionParams{}, config_at(1.0));
  ASSERT_EQ(t.T.size(), 3u);
  EXPECT_GT(t.T.front(), 0.99);  // vanishing junction
  EXPECT_EQ(t.T[1], solve_scattering(JunctionGeometry(10.0, 2.0, 5.0, 2.0), config_at(10.0)).T);
  const std::vector<double> bad{2.0};
  EXPECT_THROW((void)transmission_vs_R1(bad, 5.0, FixedJunctionParams{}, config_at(1.0)), std::invalid_argument);
}
