#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clt/config.hpp"
#include "clt/metrics.hpp"

namespace clt {

struct MetricStats {
  double mean{0.0};
  double se{0.0};  // standard error of the mean; 0 for a single run
};

struct CellResult {
  ScenarioConfig config;  // seed field is the first seed of the cell
  std::string label;      // e.g. "CVIM/VCL/L"
  std::size_t runs{0};
  MetricStats d, d_n, beta, tension, jerk;
  std::vector<MetricsReport> per_run;
  std::size_t diverged{0};
};

MetricStats mean_se(const std::vector<double>& x);

std::string cell_label(const ScenarioConfig& c);

/// The 2 x 2 x 2 grid (method x cable x stiffness) built on a base config.
std::vector<ScenarioConfig> factor_grid(const ScenarioConfig& base);

/// Runs every cell for every seed. Diverged runs are counted and left out of
/// the statistics.
std::vector<CellResult> comparison_matrix(const std::vector<ScenarioConfig>& cells,
                                          const std::vector<std::uint64_t>& seeds);

std::vector<std::uint64_t> seed_range(std::uint64_t first, std::size_t count);

}  // namespace clt
