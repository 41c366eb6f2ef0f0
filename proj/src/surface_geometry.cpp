#include "revsurf/surface_geometry.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "revsurf/errors.hpp"

namespace revsurf {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string describe(double z) {
  std::ostringstream os;
  os.precision(17);
  os << z;
  return os.str();
}

}  // namespace

JunctionGeometry::JunctionGeometry(double R1, double R2, double a, double epsilon)
    : R1_(R1), R2_(R2), a_(a), epsilon_(epsilon) {
  if (!(R1 > 0.0) || !(R2 > 0.0)) {
    throw std::invalid_argument("JunctionGeometry: radii must be positive");
  }
  if (!(epsilon > 0.0)) throw std::invalid_argument("JunctionGeometry: epsilon must be positive");
  if (!(epsilon < a)) {
    throw std::invalid_argument("JunctionGeometry: smooth-transition length epsilon must be < a");
  }
  xi_ = (R1_ - R2_) / (4.0 * epsilon_ * a_ - 2.0 * epsilon_ * epsilon_);
}

std::array<double, 4> JunctionGeometry::breakpoints() const {
  return {-a_, -a_ + epsilon_, a_ - epsilon_, a_};
}

ProfileSample junction_profile(const JunctionGeometry& j, double z) {
  const double a = j.a(), eps = j.epsilon(), xi = j.xi();
  if (z <= -a) return {j.R1(), 0.0, 0.0};
  if (z <= -a + eps) {
    const double u = z + a;
    return {-xi * u * u + j.R1(), -2.0 * xi * u, -2.0 * xi};
  }
  if (z <= a - eps) return {-2.0 * eps * xi * z + 0.5 * (j.R1() + j.R2()), -2.0 * eps * xi, 0.0};
  if (z <= a) {
    const double u = z - a;
    return {xi * u * u + j.R2(), 2.0 * xi * u, 2.0 * xi};
  }
  return {j.R2(), 0.0, 0.0};
}

Generatrix Generatrix::cone(double rho, double lambda) {
  if (!(rho > 0.0) || !(lambda > 0.0)) {
    throw std::invalid_argument("cone generatrix needs rho > 0 and lambda > 0");
  }
  return Generatrix(ConeProfile{rho, lambda});
}

Generatrix Generatrix::cylinder(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("cylinder radius must be positive");
  return Generatrix(CylinderProfile{radius});
}

Generatrix Generatrix::junction(const JunctionGeometry& j) { return Generatrix(j); }

Generatrix Generatrix::tabulated(std::span<const double> z, std::span<const double> f) {
  for (double v : f) {
    if (!(v > 0.0)) throw std::invalid_argument("tabulated generatrix samples must be positive");
  }
  return Generatrix(TabulatedProfile{MonotoneCubic(z, f)});
}

std::pair<double, double> Generatrix::domain() const {
  static constexpr double inf = std::numeric_limits<double>::infinity();
  return std::visit(overloaded{
                        [](const TabulatedProfile& t) { return std::pair{t.curve.front(), t.curve.back()}; },
                        [](const auto&) { return std::pair{-inf, inf}; },
                    },
                    shape_);
}

ProfileSample Generatrix::profile(double z) const {
  const auto [lo, hi] = domain();
  if (!(z >= lo && z <= hi)) throw OutOfDomainError("z = " + describe(z) + " is outside the generatrix domain");
  const ProfileSample p = std::visit(
      overloaded{
          [z](const ConeProfile& c) { return ProfileSample{c.rho + c.lambda * z, c.lambda, 0.0}; },
          [](const CylinderProfile& c) { return ProfileSample{c.radius, 0.0, 0.0}; },
          [z](const JunctionGeometry& j) { return junction_profile(j, z); },
          [z](const TabulatedProfile& t) {
            const InterpolantValue v = t.curve.evaluate(z);
            return ProfileSample{v.value, v.first, v.second};
          },
      },
      shape_);
  if (!(p.f > 0.0)) throw NonPositiveRadiusError("f(z) <= 0 at z = " + describe(z));
  return p;
}

MetricSample metric_from(const ProfileSample& p) {
  const double gzz = 1.0 + p.fz * p.fz;
  return {p.f * p.f, gzz, p.f * std::sqrt(gzz)};
}

CurvatureSample curvature_from(const ProfileSample& p) {
  const double s = 1.0 + p.fz * p.fz;
  const double root = std::sqrt(s);
  const double k1 = 1.0 / (p.f * root);
  const double k2 = -p.fzz / (s * root);
  return {k1, k2, 0.5 * (k1 + k2), k1 * k2};
}

double geometric_potential_reduced(const ProfileSample& p) {
  const double s = 1.0 + p.fz * p.fz;
  const double num = s + p.f * p.fzz;
  return num * num / (4.0 * p.f * p.f * s * s * s);
}

MetricSample metric_at(const Generatrix& gen, double z) { return metric_from(gen.profile(z)); }

CurvatureSample curvature_at(const Generatrix& gen, double z) { return curvature_from(gen.profile(z)); }

GeometricPotentialSample geometric_potential_at(const Generatrix& gen, double z, const EffectiveMass& mass) {
  return {-mass.kinetic_scale() * geometric_potential_reduced(gen.profile(z))};
}

}  // namespace revsurf
