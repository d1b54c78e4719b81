#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "clt/config.hpp"
#include "clt/reference.hpp"
#include "clt/stability.hpp"

namespace clt {

/// One logged controller-rate sample; field order is the CSV column order.
struct LogRow {
  double t{0.0};
  Vec3 xq{Vec3::Zero()};
  Vec3 vq{Vec3::Zero()};
  double alpha{0.0};
  double beta{0.0};
  double L{0.0};
  double L_dot{0.0};
  Vec3 Fc{Vec3::Zero()};
  Vec3 Fc_hat{Vec3::Zero()};
  double f_T{0.0};
  double f_T_hat{0.0};
  Vec3 xqd{Vec3::Zero()};
  double L_d{0.0};
  double e_ac_norm{0.0};
  double dzeta_beta{0.0};
  double dzeta_L{0.0};
  double T_thrust{0.0};
};

/// Online checks evaluated while the run executes.
struct RunChecks {
  double max_contact_force{0.0};
  bool contact_force_bounded{true};
  double max_beta{0.0};
  bool beta_below_horizontal{true};
  int slack_steps{0};
  int length_limited_steps{0};
  int thrust_saturated_steps{0};
  double max_tracking_error{0.0};
  bool finite{true};
};

struct RunLog {
  ScenarioConfig config;  // as run, operator jitter applied
  std::uint64_t config_hash{0};
  std::uint64_t seed{0};
  std::vector<LogRow> rows;
  std::vector<Vec3> hook_path;
  std::vector<Vec3> reference_path;
  /// Shaping inputs and outputs at each controller step, for later replay.
  std::vector<Vec3> shaping_in_position;
  std::vector<double> shaping_in_length;
  std::vector<Vec3> shaping_out_position;
  std::vector<double> shaping_out_length;
  /// CVIM impedance state and forcing (empty for SVIM runs).
  std::vector<TrajectoryPoint> impedance;
  RunChecks checks;
};

class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Virtual reference the task prescribes for this config.
std::unique_ptr<VirtualReference> make_reference(const ScenarioConfig& c);

/// Closed loop: plant at dt, admittance and position tracking at the control
/// period, attitude loop every plant step, load cell at its own period.
/// Throws std::invalid_argument for invalid configs and DivergenceError when
/// the vehicle leaves the enlarged workspace.
RunLog run_scenario(const ScenarioConfig& config);

}  // namespace clt
