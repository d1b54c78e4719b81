#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clt/admittance.hpp"
#include "clt/config.hpp"
#include "clt/stability.hpp"

namespace clt {

/// Seeded bounded forcing trial for the CVIM impedance model: a sum of
/// sinusoids below max_frequency, scaled so ||tau|| <= force_bound, applied
/// until force_off, with L^v sweeping [Lv_min, Lv_max] at rate <= V_L.
struct TrialOptions {
  double force_bound{2.0};
  double max_frequency{2.0};  // Hz
  int harmonics{3};
  double force_off{20.0};     // T_c
  double t_end{30.0};
  double dt{0.01};
  Vec2 initial_zeta{0.05, 0.02};
};

std::vector<TrajectoryPoint> bounded_force_trial(const CertificationInputs& in,
                                                 const ShapingGains& shaping, std::uint64_t seed,
                                                 const TrialOptions& opt = {});

struct TrialVerdict {
  std::uint64_t seed{0};
  double min_margin{0.0};
  bool envelope_pass{false};
  double decay_rate{0.0};
  bool decay_pass{false};
  ShapingBoundReport shaping;
};

struct CertificationReport {
  LyapunovSetup setup;
  bool recheck{false};
  std::vector<TrialVerdict> trials;
  std::size_t envelope_passes{0};
  std::size_t decay_passes{0};
  std::size_t shaping_passes{0};
  double min_decay_rate{0.0};
  bool pass{false};
};

/// Feasibility, then the envelope, decay and shaping checks on n seeded trials.
CertificationReport certify_cvim(const CertificationInputs& in, const ShapingGains& shaping,
                                 std::size_t n_seeds, std::uint64_t first_seed = 1,
                                 const TrialOptions& opt = {});

std::string certificate_json(const CertificationReport& r);

/// Masses and the active CVIM stiffness of a scenario; the L^v band keeps its default.
CertificationInputs certification_inputs(const ScenarioConfig& c);

}  // namespace clt
