#pragma once

#include <array>
#include <span>
#include <utility>
#include <variant>

#include "revsurf/interpolation.hpp"
#include "revsurf/units.hpp"

namespace revsurf {

/// Radius profile f(z) of a surface of revolution and its first two derivatives.
struct ProfileSample {
  double f;
  double fz;
  double fzz;
};

/// Cone-like junction joining a cylinder of radius R1 (z <= -a) to one of
/// radius R2 (z > a): a linear middle section with parabolic caps of
/// length epsilon at both ends. The cap coefficient xi makes the slope
/// continuous; the second derivative jumps at the four branch points.
class JunctionGeometry {
 public:
  JunctionGeometry(double R1, double R2, double a, double epsilon);

  [[nodiscard]] double R1() const { return R1_; }
  [[nodiscard]] double R2() const { return R2_; }
  [[nodiscard]] double a() const { return a_; }
  [[nodiscard]] double epsilon() const { return epsilon_; }
  [[nodiscard]] double xi() const { return xi_; }

  /// {-a, -a + eps, a - eps, a}
  [[nodiscard]] std::array<double, 4> breakpoints() const;

 private:
  double R1_;
  double R2_;
  double a_;
  double epsilon_;
  double xi_;
};

/// rho(z), rho'(z), rho''(z) of the junction; defined for every real z.
/// Branch intervals are closed on the right, so rho'' at a branch point
/// is the value of the branch to its left.
[[nodiscard]] ProfileSample junction_profile(const JunctionGeometry& j, double z);

struct ConeProfile {
  double rho;
  double lambda;
};

struct CylinderProfile {
  double radius;
};

struct TabulatedProfile {
  MonotoneCubic curve;
};

class Generatrix {
 public:
  using Variant = std::variant<ConeProfile, CylinderProfile, JunctionGeometry, TabulatedProfile>;

  static Generatrix cone(double rho, double lambda);
  static Generatrix cylinder(double radius);
  static Generatrix junction(const JunctionGeometry& j);
  static Generatrix tabulated(std::span<const double> z, std::span<const double> f);

  /// Throws OutOfDomainError outside domain() and NonPositiveRadiusError where f <= 0.
  [[nodiscard]] ProfileSample profile(double z) const;

  /// Closed z-range on which the generatrix is declared.
  [[nodiscard]] std::pair<double, double> domain() const;

  [[nodiscard]] const Variant& variant() const { return shape_; }

 private:
  explicit Generatrix(Variant shape) : shape_(std::move(shape)) {}
  Variant shape_;
};

struct MetricSample {
  double g_theta_theta;  // nm^2
  double g_zz;
  double sqrt_g;  // nm
};

struct CurvatureSample {
  double alpha_11;  // azimuthal principal curvature, 1/nm
  double alpha_22;  // meridional principal curvature, 1/nm
  double mean;      // M = tr(alpha)/2
  double gauss;     // K = det(alpha)
};

struct GeometricPotentialSample {
  double U;  // meV
};

[[nodiscard]] MetricSample metric_at(const Generatrix& gen, double z);
[[nodiscard]] CurvatureSample curvature_at(const Generatrix& gen, double z);
[[nodiscard]] GeometricPotentialSample geometric_potential_at(const Generatrix& gen, double z,
                                                              const EffectiveMass& mass);

[[nodiscard]] MetricSample metric_from(const ProfileSample& p);
[[nodiscard]] CurvatureSample curvature_from(const ProfileSample& p);

/// (1 + f_z^2 + f f_zz)^2 / (4 f^2 (1 + f_z^2)^3), i.e. M^2 - K. The
/// geometric potential is -hbar^2/(2m) times this.
[[nodiscard]] double geometric_potential_reduced(const ProfileSample& p);

}  // namespace revsurf
