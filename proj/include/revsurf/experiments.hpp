#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revsurf/contour.hpp"
#include "revsurf/transport.hpp"
#include "revsurf/units.hpp"

namespace revsurf::experiments {

inline constexpr std::string_view kCodeVersion = "0.1.0";

enum class ExperimentId {
  table1,
  fig2_gp,
  fig3_pd,
  fig4a_levels_vs_lambda,
  fig4b_ground_vs_height,
  fig5_gaas,
  fig6_T_vs_E,
  fig7_T_vs_E_eps,
  fig8_T_vs_R1,
};

[[nodiscard]] std::string_view to_string(ExperimentId id);
[[nodiscard]] std::optional<ExperimentId> parse_experiment_id(std::string_view name);
[[nodiscard]] const std::vector<ExperimentId>& all_experiments();

/// Parameter grids for one reproduction. Meaning of the grids per id:
///   table1   primary = z_max/rho values
///   fig2_gp  primary = z/rho samples, series = lambda values
///   fig3_pd  series = z_max/rho values
///   fig4a    primary = lambda grid, series = z_max/rho values
///   fig4b    primary = z_max/rho grid, series = lambda values
///   fig5     primary = lambda grid, secondary = z_max/rho grid
///   fig6     primary = E_l grid (meV), series = R1 values (nm)
///   fig7     primary = E_l grid (meV), series = epsilon values (nm)
///   fig8     primary = R1 grid (nm), series = a values (nm)
struct SweepSpec {
  ExperimentId id = ExperimentId::table1;
  std::vector<double> primary;
  std::vector<double> secondary;
  std::vector<double> series;
  int transport_grid_points = 4000;
  double hbar2_over_2me = kHbar2Over2Me;
  unsigned workers = 1;
  std::filesystem::path output_dir;  // empty: compute and check only

  void validate() const;
  /// Canonical text used for the output-file hash.
  [[nodiscard]] std::string canonical() const;
};

/// Default grids reproducing the published configurations.
[[nodiscard]] SweepSpec default_spec(ExperimentId id);

struct AnchorResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct PointIssue {
  std::string where;
  std::string message;
};

struct ExperimentSummary {
  ExperimentId id = ExperimentId::table1;
  std::vector<std::filesystem::path> files;
  std::vector<AnchorResult> anchors;
  std::vector<PointIssue> failures;

  [[nodiscard]] bool passed() const;
};

[[nodiscard]] ExperimentSummary run_experiment(const SweepSpec& spec);

/// 64-bit FNV-1a, hex encoded.
[[nodiscard]] std::string content_hash(std::string_view text);

}  // namespace revsurf::experiments
