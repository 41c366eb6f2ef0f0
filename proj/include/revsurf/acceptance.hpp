#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "revsurf/units.hpp"

namespace revsurf::acceptance {

struct CriterionResult {
  std::string id;
  std::string description;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  double hbar2_over_2me = kHbar2Over2Me;
  int transport_grid_points = 4000;
  unsigned workers = 1;
  std::uint64_t seed = 20240917;  // random transport configurations
};

/// Runs every acceptance check. Solver exceptions become failed criteria.
[[nodiscard]] std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// One "PASS|FAIL id: detail" line per criterion.
[[nodiscard]] std::string format_report(const std::vector<CriterionResult>& results);

[[nodiscard]] bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace revsurf::acceptance
