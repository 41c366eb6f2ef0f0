#include "revsurf/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "revsurf/errors.hpp"
#include "revsurf/parallel.hpp"
#include "revsurf/quadrature.hpp"
#include "revsurf/tridiagonal.hpp"

namespace revsurf::transport {

namespace {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

// Squared lead wavenumber for a cylinder of radius R.
double lead_k_squared(double E, double R, int n, double kinetic, bool include_gp) {
  const double gp = include_gp ? 0.25 : 0.0;
  return E / kinetic + (gp - static_cast<double>(n) * n) / (R * R);
}

// Discrete lead: exact plane waves of the three-point stencil satisfy
// cos(K h) = 1 - k^2 h^2 / 2. Returns exp(i K h) and the discrete velocity
// factor sin(K h) (zero for an evanescent lead).
struct DiscreteLead {
  cplx phase;
  double sine;
  bool open;
};

DiscreteLead discrete_lead(double k_squared, double h) {
  const double c = 1.0 - 0.5 * k_squared * h * h;
  if (k_squared > 0.0) {
    if (c <= -1.0) throw std::invalid_argument("grid too coarse to resolve the lead wavelength");
    const double K = std::acos(c);
    return {std::exp(I * K), std::sin(K), true};
  }
  return {std::exp(-std::acosh(c)), 0.0, false};
}

}  // namespace

void ScatterConfig::validate() const {
  if (!(E_l > 0.0)) throw std::invalid_argument("ScatterConfig: E_l must be positive");
  validate_solver();
}

void ScatterConfig::validate_solver() const {
  if (!(mass_ratio > 0.0)) throw std::invalid_argument("ScatterConfig: mass_ratio must be positive");
  if (mode < 0) throw std::invalid_argument("ScatterConfig: mode must be >= 0");
  if (grid_points < 500) {
    throw std::invalid_argument("ScatterConfig: grid_points = " + std::to_string(grid_points) +
                                " is below the minimum of 500");
  }
}

double total_energy(const ScatterConfig& config, const JunctionGeometry& j) {
  const double kinetic = config.mass().kinetic_scale();
  const double R1 = j.R1();
  const double transverse = kinetic * config.mode * config.mode / (R1 * R1);
  const double u_in = config.include_gp ? -kinetic / (4.0 * R1 * R1) : 0.0;
  return config.E_l + transverse + u_in;
}

LeadWavenumbers lead_wavenumbers(const JunctionGeometry& j, double E, int n, const EffectiveMass& mass,
                                 bool include_gp, InjectionSide side) {
  const double kinetic = mass.kinetic_scale();
  const double k1sq = lead_k_squared(E, j.R1(), n, kinetic, include_gp);
  const double k2sq = lead_k_squared(E, j.R2(), n, kinetic, include_gp);
  const double in_sq = side == InjectionSide::from_R1 ? k1sq : k2sq;
  const double out_sq = side == InjectionSide::from_R1 ? k2sq : k1sq;
  if (!(in_sq > 0.0)) {
    std::ostringstream os;
    os << "injection channel n = " << n << " is closed at E = " << E << " meV";
    throw ClosedChannelError(os.str());
  }
  LeadWavenumbers out;
  out.k1 = k1sq > 0.0 ? std::sqrt(k1sq) : 0.0;
  out.k2 = k2sq > 0.0 ? std::sqrt(k2sq) : 0.0;
  out.outgoing_open = out_sq > 0.0;
  out.kappa = out.outgoing_open ? 0.0 : std::sqrt(-out_sq);
  return out;
}

ScatteringSolution solve_at_total_energy(const JunctionGeometry& j, double E, const ScatterConfig& config,
                                         InjectionSide side) {
  config.validate_solver();
  const EffectiveMass mass = config.mass();
  const double kinetic = mass.kinetic_scale();
  const int n = config.mode;
  const LeadWavenumbers leads = lead_wavenumbers(j, E, n, mass, config.include_gp, side);

  const double a = j.a();
  const std::size_t intervals = static_cast<std::size_t>(config.grid_points) + 1;
  const std::size_t nodes = intervals + 1;
  const double h = 2.0 * a / static_cast<double>(intervals);
  auto z_at = [&](double idx) { return -a + idx * h; };

  // (p phi')' + w (E/C + G - n^2/rho^2) phi = 0 with p = rho/sqrt(1+rho'^2),
  // w = rho sqrt(1+rho'^2), G the reduced geometric potential.
  const double gp = config.include_gp ? 1.0 : 0.0;
  auto weighted_q = [&](double z) {
    const ProfileSample s = junction_profile(j, z);
    const double w = s.f * std::sqrt(1.0 + s.fz * s.fz);
    const double q = E / kinetic + gp * geometric_potential_reduced(s) - static_cast<double>(n) * n / (s.f * s.f);
    return w * q;
  };
  auto stiffness = [&](double z) {
    const ProfileSample s = junction_profile(j, z);
    return s.f / std::sqrt(1.0 + s.fz * s.fz);
  };

  // Cell averages of w q, split at the profile's branch points so that the
  // jumps of rho'' are integrated exactly wherever the nodes fall.
  static const GaussLegendreRule rule = gauss_legendre(4);
  const auto breaks = j.breakpoints();
  std::vector<double> cell(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double lo = z_at(static_cast<double>(i) - 0.5), hi = z_at(static_cast<double>(i) + 0.5);
    double left = lo, sum = 0.0;
    for (double b : breaks) {
      if (b > left && b < hi) {
        sum += integrate(rule, left, b, weighted_q);
        left = b;
      }
    }
    sum += integrate(rule, left, hi, weighted_q);
    cell[i] = sum / h;
  }

  std::vector<double> p_half(intervals);
  for (std::size_t i = 0; i < intervals; ++i) p_half[i] = stiffness(z_at(static_cast<double>(i) + 0.5));

  const double R1 = j.R1(), R2 = j.R2();
  const double k1sq = lead_k_squared(E, R1, n, kinetic, config.include_gp);
  const double k2sq = lead_k_squared(E, R2, n, kinetic, config.include_gp);
  const DiscreteLead lead1 = discrete_lead(k1sq, h);
  const DiscreteLead lead2 = discrete_lead(k2sq, h);

  std::vector<cplx> lower(nodes - 1), diag(nodes), upper(nodes - 1), rhs(nodes, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < nodes; ++i) {
    const double p_left = i == 0 ? R1 : p_half[i - 1];
    const double p_right = i + 1 == nodes ? R2 : p_half[i];
    diag[i] = -(p_left + p_right) + h * h * cell[i];
    if (i + 1 < nodes) {
      upper[i] = p_half[i];
      lower[i] = p_half[i];
    }
  }
  // Ghost nodes outside [-a, a] are eliminated with the lead solutions:
  // phi_{-1} = phi_0 e^{iK1h} - 2i sin(K1h) A_in, and the mirror relation at z = a.
  const double z_left = -a, z_right = a;
  diag.front() += R1 * lead1.phase;
  diag.back() += R2 * lead2.phase;
  cplx incoming_left{0.0, 0.0}, incoming_right{0.0, 0.0};
  if (side == InjectionSide::from_R1) {
    const double K1 = std::arg(lead1.phase) / h;
    incoming_left = std::exp(I * K1 * z_left);
    rhs.front() = R1 * 2.0 * I * lead1.sine * incoming_left;
  } else {
    const double K2 = std::arg(lead2.phase) / h;
    incoming_right = std::exp(-I * K2 * z_right);
    rhs.back() = R2 * 2.0 * I * lead2.sine * incoming_right;
  }

  solve_tridiagonal<cplx>(std::move(lower), std::move(diag), std::move(upper), rhs);

  ScatteringSolution sol;
  sol.side = side;
  sol.E_total = E;
  sol.k1 = leads.k1;
  sol.k2 = leads.k2;
  sol.outgoing_open = leads.outgoing_open;
  sol.kappa = leads.kappa;
  sol.z.resize(nodes);
  for (std::size_t i = 0; i < nodes; ++i) sol.z[i] = z_at(static_cast<double>(i));
  sol.z.back() = a;

  const double K1 = lead1.open ? std::arg(lead1.phase) / h : 0.0;
  const double K2 = lead2.open ? std::arg(lead2.phase) / h : 0.0;
  if (side == InjectionSide::from_R1) {
    sol.r = (rhs.front() - incoming_left) * std::exp(I * K1 * z_left);
    sol.t = rhs.back() * std::exp(-I * K2 * z_right);
    sol.R_coeff = std::norm(sol.r);
    sol.T = lead2.open ? R2 * lead2.sine * std::norm(sol.t) / (R1 * lead1.sine) : 0.0;
  } else {
    sol.r = (rhs.back() - incoming_right) * std::exp(-I * K2 * z_right);
    sol.t = rhs.front() * std::exp(I * K1 * z_left);
    sol.R_coeff = std::norm(sol.r);
    sol.T = lead1.open ? R1 * lead1.sine * std::norm(sol.t) / (R2 * lead2.sine) : 0.0;
  }
  sol.phi = std::move(rhs);
  return sol;
}

ScatteringSolution solve_scattering(const JunctionGeometry& j, const ScatterConfig& config) {
  config.validate();
  return solve_at_total_energy(j, total_energy(config, j), config, InjectionSide::from_R1);
}

TransmissionTable transmission_vs_energy(const JunctionGeometry& j, std::span<const double> energies,
                                         const ScatterConfig& config, unsigned workers) {
  if (energies.empty()) throw std::invalid_argument("transmission_vs_energy: empty energy grid");
  for (std::size_t i = 1; i < energies.size(); ++i) {
    if (!(energies[i] > energies[i - 1])) {
      throw std::invalid_argument("transmission_vs_energy: energies must be strictly increasing");
    }
  }
  TransmissionTable table;
  table.x.assign(energies.begin(), energies.end());
  table.T.assign(energies.size(), std::numeric_limits<double>::quiet_NaN());
  std::vector<std::string> errors(energies.size());
  parallel_for(energies.size(), workers, [&](std::size_t i) {
    try {
      ScatterConfig point = config;
      point.E_l = energies[i];
      table.T[i] = solve_scattering(j, point).T;
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) table.failures.push_back({i, errors[i]});
  }
  return table;
}

TransmissionTable transmission_vs_R1(std::span<const double> R1_values, double a, const FixedJunctionParams& fixed,
                                     const ScatterConfig& config, unsigned workers) {
  if (R1_values.empty()) throw std::invalid_argument("transmission_vs_R1: empty R1 grid");
  for (double R1 : R1_values) {
    if (!(R1 > fixed.R2)) throw std::invalid_argument("transmission_vs_R1: every R1 must exceed R2");
  }
  TransmissionTable table;
  table.x.assign(R1_values.begin(), R1_values.end());
  table.T.assign(R1_values.size(), std::numeric_limits<double>::quiet_NaN());
  std::vector<std::string> errors(R1_values.size());
  parallel_for(R1_values.size(), workers, [&](std::size_t i) {
    try {
      const JunctionGeometry j(R1_values[i], fixed.R2, a, fixed.epsilon);
      ScatterConfig point = config;
      point.E_l = fixed.E_l;
      table.T[i] = solve_scattering(j, point).T;
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) table.failures.push_back({i, errors[i]});
  }
  return table;
}

}  // namespace revsurf::transport
