#include "revsurf/fd_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "revsurf/errors.hpp"

namespace revsurf::axial {

std::vector<double> fd_levels(const ConeGeometry& cone, int eta, int n_points, int count) {
  if (n_points < 200) throw std::invalid_argument("fd_spectrum_oracle: n_points must be >= 200");
  if (count < 1 || count > n_points) throw std::invalid_argument("fd_spectrum_oracle: bad count");

  const double lambda = cone.lambda();
  const double slope_factor = 1.0 + lambda * lambda;
  const double a0 = 0.25 - static_cast<double>(eta) * eta * slope_factor;
  const double x_max = cone.height_ratio();
  const double h = x_max / (n_points + 1);
  auto f = [lambda](double x) { return 1.0 + lambda * x; };

  // A Z = s B Z with B diagonal; symmetrize as B^{-1/2} A B^{-1/2}.
  const auto n = static_cast<Eigen::Index>(n_points);
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n - 1);
  Eigen::VectorXd inv_sqrt_b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = h * static_cast<double>(i + 1);
    diag(i) = (f(x - 0.5 * h) + f(x + 0.5 * h)) / (h * h) - a0 / f(x);
    inv_sqrt_b(i) = 1.0 / std::sqrt(slope_factor * f(x));
  }
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const double x_half = h * (static_cast<double>(i + 1) + 0.5);
    sub(i) = -f(x_half) / (h * h) * inv_sqrt_b(i) * inv_sqrt_b(i + 1);
  }
  for (Eigen::Index i = 0; i < n; ++i) diag(i) *= inv_sqrt_b(i) * inv_sqrt_b(i);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw EigenSolverError("fd_spectrum_oracle: tridiagonal QR did not converge");

  std::vector<double> levels(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) levels[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
  return levels;
}

std::vector<double> fd_spectrum_oracle(const ConeGeometry& cone, int eta, int n_points, int count) {
  std::vector<double> levels = fd_levels(cone, eta, n_points, count);
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (!(levels[k] > 0.0)) {
      std::ostringstream os;
      os << "fd level " << k << " has c^2 = " << levels[k] << " <= 0";
      throw NonPositiveLevelError(os.str());
    }
    levels[k] = std::sqrt(levels[k]);
  }
  return levels;
}

}  // namespace revsurf::axial
