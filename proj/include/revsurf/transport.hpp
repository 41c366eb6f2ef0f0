#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "revsurf/surface_geometry.hpp"
#include "revsurf/units.hpp"

namespace revsurf::transport {

struct ScatterConfig {
  double E_l = 10.0;                     // longitudinal injection energy, meV
  double mass_ratio = kJunctionMassRatio;
  int mode = 0;                          // transverse (azimuthal) mode n
  int grid_points = 4000;                // interior nodes on [-a, a]
  bool include_gp = true;                // false replaces U by 0 everywhere
  double hbar2_over_2me = kHbar2Over2Me;

  [[nodiscard]] EffectiveMass mass() const { return {mass_ratio, hbar2_over_2me}; }
  void validate() const;
  /// Checks everything except E_l.
  void validate_solver() const;
};

enum class InjectionSide { from_R1, from_R2 };

struct LeadWavenumbers {
  double k1 = 0.0;            // R1 lead, 1/nm
  double k2 = 0.0;            // R2 lead, 1/nm (0 when evanescent)
  bool outgoing_open = true;
  double kappa = 0.0;         // decay constant of a closed outgoing lead
};

struct ScatteringSolution {
  std::complex<double> r;
  std::complex<double> t;
  double T = 0.0;
  double R_coeff = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  bool outgoing_open = true;
  double kappa = 0.0;
  double E_total = 0.0;  // meV
  InjectionSide side = InjectionSide::from_R1;
  std::vector<double> z;                     // nm, nodes on [-a, a]
  std::vector<std::complex<double>> phi;
};

/// E = E_l + hbar^2 n^2 / (2 m R1^2) + U_in with U_in = -hbar^2 / (8 m R1^2).
[[nodiscard]] double total_energy(const ScatterConfig& config, const JunctionGeometry& j);

/// k_i^2 = 2m (E - hbar^2 n^2/(2 m R_i^2) + hbar^2/(8 m R_i^2)) / hbar^2 in the
/// leads. The injection lead is R1 unless `side` says otherwise; a closed
/// injection lead throws ClosedChannelError, a closed outgoing lead is flagged.
[[nodiscard]] LeadWavenumbers lead_wavenumbers(const JunctionGeometry& j, double E, int n, const EffectiveMass& mass,
                                               bool include_gp = true,
                                               InjectionSide side = InjectionSide::from_R1);

/// Open-boundary scattering of channel `config.mode` through the junction,
/// injected from the R1 cylinder with longitudinal energy config.E_l.
[[nodiscard]] ScatteringSolution solve_scattering(const JunctionGeometry& j, const ScatterConfig& config);

/// Scattering at a prescribed total energy from either side (config.E_l is ignored).
[[nodiscard]] ScatteringSolution solve_at_total_energy(const JunctionGeometry& j, double E, const ScatterConfig& config,
                                                       InjectionSide side);

struct PointFailure {
  std::size_t index;
  std::string message;
};

struct TransmissionTable {
  std::vector<double> x;  // E_l in meV or R1 in nm
  std::vector<double> T;  // NaN where the point failed
  std::vector<PointFailure> failures;
};

/// T(E_l) over a strictly increasing energy grid.
[[nodiscard]] TransmissionTable transmission_vs_energy(const JunctionGeometry& j, std::span<const double> energies,
                                                       const ScatterConfig& config, unsigned workers = 1);

struct FixedJunctionParams {
  double R2 = 2.0;
  double epsilon = 2.0;
  double E_l = 10.0;
};

/// T(R1) at fixed E_l; every R1 must exceed R2.
[[nodiscard]] TransmissionTable transmission_vs_R1(std::span<const double> R1_values, double a,
                                                   const FixedJunctionParams& fixed, const ScatterConfig& config,
                                                   unsigned workers = 1);

}  // namespace revsurf::transport
