#pragma once

#include <cstdint>
#include <string>

#include "clt/admittance.hpp"
#include "clt/estimation.hpp"
#include "clt/operator_model.hpp"
#include "clt/plant.hpp"
#include "clt/tracking.hpp"

namespace clt {

enum class Task { loading_unloading_in_place, transporting };
enum class Controller { CVIM, SVIM };
enum class CableMode { VCL, CCL };
enum class StiffnessLevel { L, H };

std::string to_string(Task v);
std::string to_string(Controller v);
std::string to_string(CableMode v);
std::string to_string(StiffnessLevel v);

/// Stiffness entries switched by the L/H level. These are chosen values,
/// not experimental ones: H = 4 x L. The CVIM inclination channel is driven
/// by M_q M_h L g sin(beta) for a hanging hook, the SVIM translation by
/// f_T sin(beta); K' = K_beta (M_h + m_load) / (M_q M_h L^2) gives both the
/// same static inclination-to-displacement gain with the default payload.
struct StiffnessPreset {
  double k_beta{0.2};
  double k_length{1.0};
  Vec4 svim_stiffness{1.333, 1.333, 1.333, 1.0};
};

struct EstimationSettings {
  NoiseLevels noise;
  std::size_t window{25};
  std::size_t lag{2};
  TensionModel tension_model;
  /// Feed the admittance loop with truth instead of the estimate.
  bool truth_force{false};
};

struct Workspace {
  Vec3 center{0.0, 0.0, 1.4};
  Vec3 size{3.5, 3.5, 2.8};
  /// Divergence is declared outside scale x the cage.
  double divergence_scale{10.0};
};

struct ScenarioConfig {
  static constexpr int kSchemaVersion = 1;
  int schema_version{kSchemaVersion};

  Task task{Task::loading_unloading_in_place};
  Controller controller{Controller::CVIM};
  CableMode cable_mode{CableMode::VCL};
  StiffnessLevel stiffness_level{StiffnessLevel::L};

  PlantParams plant;
  StiffnessPreset preset_low;
  StiffnessPreset preset_high{0.8, 4.0, Vec4(5.333, 5.333, 5.333, 4.0)};
  ShapingGains cvim_shaping;
  ShapingGains svim_shaping;
  TrackingGains tracking;
  CablePidGains cable_pid;
  double winch_accel_limit{5.0};  // m/s^2

  EstimationSettings estimation;
  OperatorParams op;

  Vec3 start_position{0.0, 0.0, 1.5};
  double neutral_length{0.5};
  double ccl_length{0.55};
  double line_length{2.15};
  double line_speed{0.15};
  double line_blend{1.0};
  double line_start_time{3.0};

  double t0{0.0};
  double tf{20.0};
  double dt{1e-3};
  double control_period{0.01};
  double loadcell_period{0.1};
  std::uint64_t seed{1};
  /// Multiplicative operator jitter applied per seed; 0 disables it.
  double operator_jitter{0.1};
  Workspace workspace;

  /// Throws std::invalid_argument when a constraint is violated.
  void validate() const;

  const StiffnessPreset& preset() const {
    return stiffness_level == StiffnessLevel::H ? preset_high : preset_low;
  }
  /// Effective controller parameters (preset applied, CCL forcing xi3 = xi4 = 0).
  CvimParams cvim_params() const;
  SvimParams svim_params() const;
  /// L^v of the run: neutral length (VCL) or the CCL length.
  double reference_length() const;
  int control_divider() const;
  int loadcell_divider() const;
};

/// Default run for a task; the line reference sets the transporting duration.
ScenarioConfig default_config(Task task);

std::string serialize_config(const ScenarioConfig& c);
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);
void save_config(const ScenarioConfig& c, const std::string& path);

/// FNV-1a over the canonical serialization.
std::uint64_t config_hash(const ScenarioConfig& c);
std::string hash_hex(std::uint64_t h);

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b);

}  // namespace clt
