#include "revsurf/contour.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>

namespace revsurf {

namespace {

// Edge identity shared between neighbouring cells: horizontal edges run
// from (i, j) to (i+1, j), vertical edges from (i, j) to (i, j+1).
using EdgeKey = std::uint64_t;

EdgeKey horizontal(std::size_t i, std::size_t j) { return (std::uint64_t{0} << 62) | (std::uint64_t(i) << 31) | j; }
EdgeKey vertical(std::size_t i, std::size_t j) { return (std::uint64_t{1} << 62) | (std::uint64_t(i) << 31) | j; }

ContourPoint edge_point(const GridSurface& s, EdgeKey key, double level) {
  const bool is_vertical = (key >> 62) != 0;
  const std::size_t i = (key >> 31) & 0x7fffffff;
  const std::size_t j = key & 0x7fffffff;
  const std::size_t i2 = is_vertical ? i : i + 1;
  const std::size_t j2 = is_vertical ? j + 1 : j;
  const double v1 = s.at(i, j), v2 = s.at(i2, j2);
  const double t = (v1 == v2) ? 0.5 : (level - v1) / (v2 - v1);
  return {s.x[i] + t * (s.x[i2] - s.x[i]), s.y[j] + t * (s.y[j2] - s.y[j])};
}

}  // namespace

std::vector<Polyline> contour_extract(const GridSurface& surface, double level) {
  const std::size_t nx = surface.x.size(), ny = surface.y.size();
  if (nx < 2 || ny < 2 || surface.values.size() != nx * ny) {
    throw std::invalid_argument("contour_extract: surface must be a rectangular grid of at least 2x2");
  }

  std::vector<std::pair<EdgeKey, EdgeKey>> segments;
  for (std::size_t i = 0; i + 1 < nx; ++i) {
    for (std::size_t j = 0; j + 1 < ny; ++j) {
      const std::array<double, 4> v{surface.at(i, j), surface.at(i + 1, j), surface.at(i + 1, j + 1),
                                    surface.at(i, j + 1)};
      if (!std::isfinite(v[0]) || !std::isfinite(v[1]) || !std::isfinite(v[2]) || !std::isfinite(v[3])) continue;
      int index = 0;
      for (int c = 0; c < 4; ++c) {
        if (v[c] >= level) index |= 1 << c;
      }
      if (index == 0 || index == 15) continue;
      const std::array<EdgeKey, 4> e{horizontal(i, j), vertical(i + 1, j), horizontal(i, j + 1), vertical(i, j)};
      const bool centre_above = 0.25 * (v[0] + v[1] + v[2] + v[3]) >= level;
      auto add = [&](int a, int b) { segments.emplace_back(e[a], e[b]); };
      switch (index) {
        case 1: case 14: add(3, 0); break;
        case 2: case 13: add(0, 1); break;
        case 3: case 12: add(3, 1); break;
        case 4: case 11: add(1, 2); break;
        case 6: case 9: add(0, 2); break;
        case 7: case 8: add(2, 3); break;
        case 5:
          if (centre_above) { add(0, 1); add(2, 3); } else { add(3, 0); add(1, 2); }
          break;
        case 10:
          if (centre_above) { add(3, 0); add(1, 2); } else { add(0, 1); add(2, 3); }
          break;
        default: break;
      }
    }
  }

  std::map<EdgeKey, std::vector<std::size_t>> incident;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    incident[segments[s].first].push_back(s);
    incident[segments[s].second].push_back(s);
  }
  std::vector<bool> used(segments.size(), false);

  auto walk = [&](EdgeKey start) {
    std::vector<EdgeKey> chain{start};
    EdgeKey current = start;
    for (;;) {
      std::size_t next = segments.size();
      for (std::size_t s : incident[current]) {
        if (!used[s]) {
          next = s;
          break;
        }
      }
      if (next == segments.size()) break;
      used[next] = true;
      current = segments[next].first == current ? segments[next].second : segments[next].first;
      chain.push_back(current);
    }
    Polyline line;
    line.reserve(chain.size());
    for (EdgeKey k : chain) line.push_back(edge_point(surface, k, level));
    return line;
  };

  std::vector<Polyline> lines;
  for (const auto& [key, segs] : incident) {
    if (segs.size() == 1 && !used[segs[0]]) lines.push_back(walk(key));
  }
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (!used[s]) lines.push_back(walk(segments[s].first));
  }
  return lines;
}

}  // namespace revsurf
