#pragma once

#include <array>
#include <complex>

#include "clt/geometry.hpp"
#include "clt/plant.hpp"

namespace clt {

struct TrackingGains {
  double k_x{16.0};
  double k_v{8.0};
  /// Integral action on position; zero gives the plain cascade.
  double k_i{4.0};
  double integral_limit{0.5};
  /// Attitude gains: tau = -k_R e_R - k_Omega e_Omega + Omega x J Omega.
  double k_R{30.0};
  double k_Omega{5.0};
  bool cable_feedforward{true};
  double max_thrust{50.0};

  void validate() const;
};

struct TrackingTarget {
  Vec3 position{Vec3::Zero()};
  Vec3 velocity{Vec3::Zero()};
  Vec3 acceleration{Vec3::Zero()};
  double yaw{0.0};
};

/// Measured cable quantities used to cancel the hook coupling in the
/// translational channel. contact_force is the (estimated) hook force.
struct CableFeedforward {
  Vec3 e_l{0.0, 0.0, -1.0};
  Vec3 omega{Vec3::Zero()};
  double length{0.5};
  double length_accel{0.0};
  Vec3 contact_force{Vec3::Zero()};
};

/// Translational stage output: the thrust vector F_t to realize.
struct ForceCommand {
  Vec3 thrust_vector{Vec3::Zero()};
  Vec3 position_error{Vec3::Zero()};
};

struct TrackingOutput {
  double thrust{0.0};
  Vec3 torque{Vec3::Zero()};
  Mat3 desired_attitude{Mat3::Identity()};
  Vec3 attitude_error{Vec3::Zero()};
  bool thrust_saturated{false};
};

/// Thrust vector that makes the vehicle acceleration equal accel_cmd under
/// the coupled translational model with the given cable feedforward.
Vec3 thrust_for_acceleration(const Vec3& accel_cmd, const CableFeedforward& ff,
                             const PlantParams& params, bool use_feedforward);

/// Attitude stage: maps a thrust vector to (T, tau) for the current state.
TrackingOutput attitude_control(const QuadrotorState& state, const Vec3& thrust_vector,
                                double yaw, const PlantParams& params,
                                const TrackingGains& gains);

/// Position + attitude cascade evaluated in one call, no integral state.
TrackingOutput quad_tracking_control(const QuadrotorState& state, const TrackingTarget& target,
                                     const CableFeedforward& ff, const PlantParams& params,
                                     const TrackingGains& gains);

/// Stateful cascade: position stage at the controller rate, attitude stage
/// every plant step on the latest thrust vector.
class QuadTracker {
 public:
  QuadTracker(TrackingGains gains, PlantParams params);

  /// Position stage; returns the commanded thrust vector.
  const ForceCommand& update_position(const QuadrotorState& state, const TrackingTarget& target,
                                      const CableFeedforward& ff, double dt);
  TrackingOutput update_attitude(const QuadrotorState& state) const;

  const ForceCommand& last_command() const { return command_; }
  double yaw() const { return yaw_; }
  void reset();

 private:
  TrackingGains gains_;
  PlantParams params_;
  Vec3 integral_{Vec3::Zero()};
  ForceCommand command_;
  double yaw_{0.0};
};

struct CablePidGains {
  double K_P{25.0};
  double K_I{10.0};
  double K_D{10.0};
};

struct RouthHurwitzResult {
  bool stable{false};
  double margin{0.0};  // K_D K_P - K_I
};

RouthHurwitzResult routh_hurwitz_check(const CablePidGains& gains);

/// -K_D e_dot - K_P e - K_I int_e, clipped to +-accel_limit.
double cable_pid_control(double e_L, double e_integral, double e_rate, const CablePidGains& gains,
                         double accel_limit);

/// Roots of s^3 + K_D s^2 + K_P s + K_I.
std::array<std::complex<double>, 3> cable_characteristic_roots(const CablePidGains& gains);

class CablePid {
 public:
  CablePid(CablePidGains gains, double accel_limit, double min_length, double max_length);

  /// e_L = L - L_d. The rate error uses L_dot - L_dot_ff, so the derivative
  /// acts on the measurement rather than on steps of L_d.
  double update(double L, double L_dot, double L_d, double L_dot_ff, double dt);

  double integral() const { return integral_; }
  bool saturated() const { return saturated_; }
  void reset();

 private:
  CablePidGains gains_;
  double accel_limit_, min_length_, max_length_;
  double integral_{0.0};
  bool saturated_{false};
};

}  // namespace clt
