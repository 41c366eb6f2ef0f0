#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "revsurf/errors.hpp"
#include "revsurf/surface_geometry.hpp"
#include "revsurf/units.hpp"

using namespace revsurf;

namespace {

const EffectiveMass kUnit{1.0, 1.0};  // hbar^2/2m = 1

}  // namespace

TEST(Units, KineticConstantMatchesCodata) {
  // 38.0998 to five significant digits
  EXPECT_NEAR(codata_hbar2_over_2me(), kHbar2Over2Me, 0.0005);
  EXPECT_NEAR(EffectiveMass{0.173}.kinetic_scale(), 220.230, 0.001);
}

TEST(Metric, Examples) {
  const auto cyl = metric_at(Generatrix::cylinder(1.0), 0.0);
  EXPECT_DOUBLE_EQ(cyl.g_theta_theta, 1.0);
  EXPECT_DOUBLE_EQ(cyl.g_zz, 1.0);

  const auto cone = metric_at(Generatrix::cone(1.0, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(cone.g_theta_theta, 9.0);
  EXPECT_DOUBLE_EQ(cone.g_zz, 2.0);
  EXPECT_DOUBLE_EQ(cone.sqrt_g, 3.0 * std::sqrt(2.0));

  const auto junction = metric_at(Generatrix::junction(JunctionGeometry(40, 2, 10, 2)), -11.0);
  EXPECT_DOUBLE_EQ(junction.g_theta_theta, 1600.0);
  EXPECT_DOUBLE_EQ(junction.g_zz, 1.0);
}

TEST(Curvature, Examples) {
  const auto cyl = curvature_at(Generatrix::cylinder(2.0), 3.7);
  EXPECT_DOUBLE_EQ(cyl.alpha_11, 0.5);
  EXPECT_DOUBLE_EQ(cyl.alpha_22, 0.0);
  EXPECT_DOUBLE_EQ(cyl.mean, 0.25);
  EXPECT_DOUBLE_EQ(cyl.gauss, 0.0);

  const auto cone = curvature_at(Generatrix::cone(1.0, 1.0), 0.0);
  EXPECT_NEAR(cone.alpha_11, 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(cone.alpha_22, 0.0);
  EXPECT_EQ(cone.gauss, 0.0);
}

TEST(GeometricPotential, CylinderMatchesLeadTerm) {
  const EffectiveMass m{0.173};
  for (double R : {1.0, 2.0, 40.0}) {
    const double U = geometric_potential_at(Generatrix::cylinder(R), 0.3, m).U;
    EXPECT_NEAR(U, -m.kinetic_scale() / (4.0 * R * R), 1e-14 * m.kinetic_scale());
  }
}

TEST(GeometricPotential, ConeAtOriginInReducedUnits) {
  EXPECT_NEAR(geometric_potential_at(Generatrix::cone(1.0, 1.0), 0.0, kUnit).U, -0.125, 1e-15);
}

TEST(GeometricPotential, ConeClosedForm) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> rho(0.5, 20.0), lambda(0.01, 3.0), z(0.0, 30.0);
  const EffectiveMass m{0.067};
  for (int i = 0; i < 200; ++i) {
    const double r = rho(rng), l = lambda(rng), zz = z(rng);
    const double f = r + l * zz;
    const double expected = -m.kinetic_scale() / (4.0 * f * f * (1.0 + l * l));
    const double U = geometric_potential_at(Generatrix::cone(r, l), zz, m).U;
    EXPECT_NEAR(U, expected, 1e-12 * std::abs(expected));
  }
}

TEST(GeometricPotential, JunctionLinearSegment) {
  const JunctionGeometry j(40, 2, 10, 2);
  const auto gen = Generatrix::junction(j);
  const double slope = 2.0 * j.epsilon() * j.xi();
  for (double z : {-7.9, -3.0, 0.0, 5.5, 7.99}) {
    const double rho = junction_profile(j, z).f;
    const double expected = -1.0 / (4.0 * rho * rho * (1.0 + slope * slope));
    EXPECT_NEAR(geometric_potential_at(gen, z, kUnit).U, expected, 1e-14);
  }
}

TEST(GeometricPotential, NeverPositiveOnRandomGeneratrices) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const double R2 = 0.5 + 5 * u(rng), R1 = R2 * (1 + 10 * u(rng)), a = 2 + 20 * u(rng);
    const double eps = a * (0.05 + 0.9 * u(rng));
    const auto gen = Generatrix::junction(JunctionGeometry(R1, R2, a, eps));
    const double z = -1.5 * a + 3.0 * a * u(rng);
    EXPECT_LE(geometric_potential_at(gen, z, EffectiveMass{0.173}).U, 0.0);

    // random positive sample triples, including concave and convex profiles
    const ProfileSample p{0.1 + 10 * u(rng), -5 + 10 * u(rng), -5 + 10 * u(rng)};
    EXPECT_GE(geometric_potential_reduced(p), 0.0);
  }
}

TEST(GeometricPotential, CurvatureCrossCheck) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const ProfileSample p{std::abs(u(rng)) + 0.05, u(rng), u(rng)};
    const auto k = curvature_from(p);
    const double from_tensor = 0.25 * std::pow(k.alpha_11 + k.alpha_22, 2) - k.alpha_11 * k.alpha_22;
    const double direct = geometric_potential_reduced(p);
    EXPECT_NEAR(from_tensor, direct, 1e-12 * std::max(1.0, direct));
    // M^2 - K is the squared half-difference of the principal curvatures
    EXPECT_NEAR(k.mean * k.mean - k.gauss, 0.25 * std::pow(k.alpha_11 - k.alpha_22, 2), 1e-12 * std::max(1.0, direct));
  }
}

TEST(Junction, PublishedBranchValues) {
  const JunctionGeometry j(40, 2, 10, 2);
  EXPECT_NEAR(j.xi(), 38.0 / 72.0, 1e-15);
  const auto left = junction_profile(j, -10.0);
  EXPECT_DOUBLE_EQ(left.f, 40.0);
  EXPECT_DOUBLE_EQ(left.fz, 0.0);
  const auto mid = junction_profile(j, 0.0);
  EXPECT_NEAR(mid.f, 21.0, 1e-13);
  EXPECT_NEAR(mid.fz, -2.0 * 2.0 * 38.0 / 72.0, 1e-14);
  EXPECT_EQ(mid.fzz, 0.0);
  EXPECT_DOUBLE_EQ(junction_profile(j, 12.0).f, 2.0);
}

TEST(Junction, EqualRadiiIsFlat) {
  const JunctionGeometry j(5, 5, 10, 2);
  for (double z = -15.0; z <= 15.0; z += 0.37) {
    const auto p = junction_profile(j, z);
    EXPECT_DOUBLE_EQ(p.f, 5.0);
    EXPECT_DOUBLE_EQ(p.fz, 0.0);
    EXPECT_DOUBLE_EQ(p.fzz, 0.0);
  }
}

TEST(Junction, ContinuityAtBranchPoints) {
  const JunctionGeometry j(40, 2, 10, 2);
  const double xi = j.xi();
  const std::vector<double> expected_left_fzz{0.0, -2 * xi, 0.0, 2 * xi};
  const std::vector<double> expected_right_fzz{-2 * xi, 0.0, 2 * xi, 0.0};
  const auto bp = j.breakpoints();
  for (std::size_t k = 0; k < 4; ++k) {
    const double z = bp[k];
    const double dz = 1e-9 * std::max(1.0, std::abs(z));
    const auto below = junction_profile(j, std::nextafter(z, -1e9));
    const auto at = junction_profile(j, z);
    const auto above = junction_profile(j, std::nextafter(z, 1e9));
    EXPECT_NEAR(below.f, above.f, 1e-12);
    EXPECT_NEAR(below.fz, above.fz, 1e-12);
    EXPECT_NEAR(at.fzz, expected_left_fzz[k], 1e-15);  // closed on the right
    EXPECT_NEAR(junction_profile(j, z + dz).fzz, expected_right_fzz[k], 1e-15);
  }
}

TEST(Junction, RejectsDegenerateTransition) {
  EXPECT_THROW(JunctionGeometry(40, 2, 10, 10), std::invalid_argument);
  EXPECT_THROW(JunctionGeometry(40, 2, 10, 12), std::invalid_argument);
  EXPECT_THROW(JunctionGeometry(40, 2, 10, 0), std::invalid_argument);
  EXPECT_THROW(JunctionGeometry(-1, 2, 10, 2), std::invalid_argument);
}

TEST(Generatrix, DomainAndRadiusErrors) {
  std::vector<double> z{0, 1, 2, 3}, f{1, 2, 3, 4};
  const auto tab = Generatrix::tabulated(z, f);
  EXPECT_THROW((void)metric_at(tab, 3.5), OutOfDomainError);
  EXPECT_THROW((void)metric_at(Generatrix::cone(1.0, 1.0), -2.0), NonPositiveRadiusError);
  std::vector<double> short_z{0, 1, 2}, short_f{1, 1, 1};
  EXPECT_THROW((void)Generatrix::tabulated(short_z, short_f), std::invalid_argument);
}

namespace {

// Unit-sphere patch tabulated on [-0.6, 0.6]; max deviation of M and K from 1 over a dense sample of [-0.3, 0.3].
double sphere_error(int n) {
  std::vector<double> z(n), f(n);
  for (int i = 0; i < n; ++i) {
    z[i] = -0.6 + 1.2 * i / (n - 1);
    f[i] = std::sqrt(1.0 - z[i] * z[i]);
  }
  const auto gen = Generatrix::tabulated(z, f);
  double err = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const auto k = curvature_at(gen, -0.3 + 0.6 * i / 1000.0);
    err = std::max({err, std::abs(k.mean - 1.0), std::abs(k.gauss - 1.0)});
  }
  return err;
}

}  // namespace

TEST(Generatrix, TabulatedSphereConverges) {
  double previous = sphere_error(25);
  EXPECT_LT(previous, 0.1);
  for (int n : {49, 97, 193}) {
    const double e = sphere_error(n);
    const double order = std::log2(previous / e);
    // C1 cubic: f'' and hence K converge at first order
    EXPECT_NEAR(order, 1.0, 0.15) << "n=" << n;
    previous = e;
  }
  EXPECT_LT(previous, 1e-2);
}
