#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "revsurf/errors.hpp"

namespace revsurf {

/// Solves a tridiagonal system in place by Gaussian elimination with
/// partial pivoting (same elimination order as LAPACK ?gtsv).
/// `lower` and `upper` have n-1 entries; `rhs` is overwritten with the
/// solution. Throws SingularSystemError on a zero or non-finite pivot or
/// when the pivot spread exceeds 1e15.
template <class T>
void solve_tridiagonal(std::vector<T> lower, std::vector<T> diag, std::vector<T> upper, std::span<T> rhs) {
  using std::abs;
  const std::size_t n = diag.size();
  if (n == 0) return;
  if (lower.size() + 1 != n || upper.size() + 1 != n || rhs.size() != n) {
    throw std::invalid_argument("solve_tridiagonal: inconsistent sizes");
  }
  if (n == 1) {
    if (abs(diag[0]) == 0.0) throw SingularSystemError("solve_tridiagonal: zero pivot", std::numeric_limits<double>::infinity());
    rhs[0] /= diag[0];
    return;
  }

  auto fail = [](std::size_t at) {
    throw SingularSystemError("solve_tridiagonal: singular pivot at row " + std::to_string(at),
                              std::numeric_limits<double>::infinity());
  };

  // lower[i] is reused for the second superdiagonal created by row swaps.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (abs(diag[i]) >= abs(lower[i])) {
      if (abs(diag[i]) == 0.0) fail(i);
      const T fact = lower[i] / diag[i];
      diag[i + 1] -= fact * upper[i];
      rhs[i + 1] -= fact * rhs[i];
      lower[i] = T(0);
    } else {
      const T fact = diag[i] / lower[i];
      diag[i] = lower[i];
      const T temp = diag[i + 1];
      diag[i + 1] = upper[i] - fact * temp;
      if (i + 2 < n) {
        lower[i] = upper[i + 1];
        upper[i + 1] = -fact * lower[i];
      } else {
        lower[i] = T(0);
      }
      upper[i] = temp;
      const T b = rhs[i];
      rhs[i] = rhs[i + 1];
      rhs[i + 1] = b - fact * rhs[i + 1];
    }
  }

  double largest = 0.0, smallest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double m = static_cast<double>(abs(diag[i]));
    if (!std::isfinite(m)) fail(i);
    largest = std::max(largest, m);
    smallest = std::min(smallest, m);
  }
  if (smallest == 0.0 || largest / smallest > 1e15) {
    throw SingularSystemError("solve_tridiagonal: numerically singular (pivot spread " +
                                  std::to_string(smallest == 0.0 ? std::numeric_limits<double>::infinity()
                                                                 : largest / smallest) +
                                  ")",
                              smallest == 0.0 ? std::numeric_limits<double>::infinity() : largest / smallest);
  }

  rhs[n - 1] /= diag[n - 1];
  rhs[n - 2] = (rhs[n - 2] - upper[n - 2] * rhs[n - 1]) / diag[n - 2];
  for (std::size_t k = n - 2; k-- > 0;) {
    rhs[k] = (rhs[k] - upper[k] * rhs[k + 1] - lower[k] * rhs[k + 2]) / diag[k];
  }
}

}  // namespace revsurf
