#pragma once

#include <vector>

#include "revsurf/axial_solver.hpp"

namespace revsurf::axial {

/// Lowest `count` spectral values c^2 of the second-order self-adjoint
/// finite-difference discretization of the axial equation,
///   -(f Z')' - (1/4 - eta^2 (1+lambda^2)) Z / f = c^2 (1+lambda^2) f Z,
/// on n_points interior nodes with Dirichlet rims. Independent of the
/// shooting path; used to cross-check it.
[[nodiscard]] std::vector<double> fd_levels(const ConeGeometry& cone, int eta, int n_points, int count);

/// Same, returned as c values. Throws NonPositiveLevelError for levels <= 0.
[[nodiscard]] std::vector<double> fd_spectrum_oracle(const ConeGeometry& cone, int eta, int n_points, int count);

}  // namespace revsurf::axial
