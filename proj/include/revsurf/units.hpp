#pragma once

// Unit conventions: lengths in nm, energies in meV.

namespace revsurf {

/// hbar^2 / (2 m_e) in meV nm^2.
inline constexpr double kHbar2Over2Me = 38.0998;

// CODATA 2018 values, SI.
inline constexpr double kCodataHbar = 1.054571817e-34;          // J s
inline constexpr double kCodataElectronMass = 9.1093837015e-31;  // kg
inline constexpr double kCodataElementaryCharge = 1.602176634e-19;  // C

/// hbar^2 / (2 m_e) in meV nm^2 recomputed from the SI constants.
constexpr double codata_hbar2_over_2me() {
  const double joule_m2 = kCodataHbar * kCodataHbar / (2.0 * kCodataElectronMass);
  return joule_m2 / (kCodataElementaryCharge * 1e-3) * 1e18;
}

inline constexpr double kGaAsMassRatio = 0.067;
inline constexpr double kJunctionMassRatio = 0.173;

/// Effective mass m = ratio * m_e. Carries the kinetic constant so that
/// callers can run with a substituted value of hbar^2/(2 m_e).
struct EffectiveMass {
  double ratio = 1.0;
  double hbar2_over_2me = kHbar2Over2Me;

  /// hbar^2 / (2 m) in meV nm^2.
  [[nodiscard]] double kinetic_scale() const { return hbar2_over_2me / ratio; }
};

}  // namespace revsurf
