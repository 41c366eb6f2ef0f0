#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "revsurf/units.hpp"

namespace revsurf::axial {

/// Truncated cone f(z) = rho + lambda z, 0 <= z <= z_max, hard walls at both rims.
/// rho is the smaller rim radius and lambda = tan(beta) with beta the
/// half-opening angle. Lengths in nm (or in units of rho when rho = 1).
class ConeGeometry {
 public:
  ConeGeometry(double rho, double lambda, double z_max);

  [[nodiscard]] double rho() const { return rho_; }
  [[nodiscard]] double lambda() const { return lambda_; }
  [[nodiscard]] double z_max() const { return z_max_; }
  /// z_max / rho
  [[nodiscard]] double height_ratio() const { return z_max_ / rho_; }

 private:
  double rho_;
  double lambda_;
  double z_max_;
};

struct ChannelIndex {
  int eta;
  std::complex<double> order_delta;
};

/// Order of the cylinder functions solving the axial equation:
/// sqrt(eta^2 (1 + lambda^2) - 1/4) / lambda, imaginary for eta = 0.
[[nodiscard]] std::complex<double> order_delta(int eta, double lambda);

[[nodiscard]] ChannelIndex channel(int eta, double lambda);

/// One hard-wall bound state. Energies are carried as the signed spectral
/// value s = c^2 = 2 m omega rho^2 / hbar^2, which is negative when the
/// attractive geometric potential pulls a level below zero.
struct AxialMode {
  ChannelIndex channel;
  int index_n = 0;                // interior node count
  double c_squared = 0.0;
  std::vector<double> z_grid;     // nm
  std::vector<double> samples;    // normalized Z(z), 1/nm

  /// c = rho sqrt(2 m omega)/hbar; NaN when c_squared <= 0.
  [[nodiscard]] double c_value() const;
  /// omega = hbar^2 c^2 / (2 m rho^2) in meV.
  [[nodiscard]] double omega(const ConeGeometry& cone, const EffectiveMass& mass) const;
};

/// Shooting mismatch Z(z_max) for Z(0) = 0, Z'(0) = 1 at spectral value c^2.
/// Zeros in c are the roots of the Bessel cross-product secular equation.
[[nodiscard]] double axial_residual(const ConeGeometry& cone, int eta, double c);

/// Same mismatch as a function of the signed spectral value s = c^2.
[[nodiscard]] double axial_residual_level(const ConeGeometry& cone, int eta, double c_squared);

/// Number of eigenvalues strictly below the spectral value s (interior
/// zero count of the shooting solution).
[[nodiscard]] int levels_below(const ConeGeometry& cone, int eta, double c_squared);

/// Lowest `count` spectral values c_n^2, ascending; negative entries allowed.
[[nodiscard]] std::vector<double> find_levels(const ConeGeometry& cone, int eta, int count);

/// Lowest `count` roots c_n, ascending. Throws NonPositiveLevelError if one
/// of the requested levels is not above zero.
[[nodiscard]] std::vector<double> find_eigenvalues(const ConeGeometry& cone, int eta, int count);

/// Uniform grid of `points` samples on [0, z_max].
[[nodiscard]] std::vector<double> uniform_grid(const ConeGeometry& cone, std::size_t points = 2001);

/// Eigenfunction for a validated level, normalized with weight
/// w(z) = (rho + lambda z) sqrt(1 + lambda^2). Rim values are exactly zero
/// and Z'(0) > 0.
[[nodiscard]] AxialMode eigenfunction(const ConeGeometry& cone, int eta, double c_squared,
                                      std::span<const double> grid);
[[nodiscard]] AxialMode eigenfunction(const ConeGeometry& cone, int eta, double c_squared);

/// <Z|U|Z> in meV with U the geometric potential of the cone.
[[nodiscard]] double gp_expectation(const ConeGeometry& cone, const AxialMode& mode, const EffectiveMass& mass);

}  // namespace revsurf::axial
