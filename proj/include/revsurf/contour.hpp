#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace revsurf {

/// Scalar field sampled on a rectangular grid; value(ix, iy) = values[ix * y.size() + iy].
struct GridSurface {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> values;

  [[nodiscard]] double at(std::size_t ix, std::size_t iy) const { return values[ix * y.size() + iy]; }
};

struct ContourPoint {
  double x;
  double y;
};

using Polyline = std::vector<ContourPoint>;

/// Marching-squares iso-lines at `level`, chained into polylines. Closed
/// loops repeat their first point at the end. Saddle cells are resolved
/// with the cell-centre average. Cells with a non-finite corner are skipped.
[[nodiscard]] std::vector<Polyline> contour_extract(const GridSurface& surface, double level);

}  // namespace revsurf
