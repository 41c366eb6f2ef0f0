#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace revsurf {

/// Interior local maxima (plateaus report their first index).
[[nodiscard]] std::vector<std::size_t> local_maxima(std::span<const double> y);
[[nodiscard]] std::vector<std::size_t> local_minima(std::span<const double> y);

/// max(y) - min(y).
[[nodiscard]] double oscillation_amplitude(std::span<const double> y);

/// Mean of y over its interior local minima; NaN if there are none.
[[nodiscard]] double off_resonance_mean(std::span<const double> y);

/// Topographic prominence of the local maximum at `peak`.
[[nodiscard]] double prominence(std::span<const double> y, std::size_t peak);

/// Largest prominence over all interior maxima; 0 if there are none.
[[nodiscard]] double max_prominence(std::span<const double> y);

}  // namespace revsurf
