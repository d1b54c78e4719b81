#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "clt/config.hpp"
#include "clt/geometry.hpp"
#include "clt/scenario.hpp"

namespace clt {

/// Normalizer of the traversed distance for the transporting task.
inline constexpr double kPrescribedPathLength = 2.15;

struct MetricsReport {
  double d{0.0};                 // traversed distance, m
  std::optional<double> d_n;     // d / 2.15, transporting only
  double beta_mean{0.0};         // rad
  double tension_mean{0.0};      // N
  double jerk_mean{0.0};         // m/s^3
  std::uint64_t config_hash{0};
  std::uint64_t seed{0};
};

/// Uniformly sampled quantities at spacing h. d, beta and tension means use
/// the trapezoid rule; jerk is the mean norm of the second central
/// difference of velocity over h^2 at the interior samples.
MetricsReport compute_metrics(const std::vector<Vec3>& velocity, const std::vector<double>& beta,
                              const std::vector<double>& tension, double h, Task task);

MetricsReport compute_metrics(const RunLog& log, Task task);
inline MetricsReport compute_metrics(const RunLog& log) { return compute_metrics(log, log.config.task); }

}  // namespace clt
