#pragma once

#include <functional>
#include <stdexcept>

#include "clt/geometry.hpp"

namespace clt {

struct QuadrotorState {
  Vec3 position{Vec3::Zero()};
  Vec3 velocity{Vec3::Zero()};
  Mat3 attitude{Mat3::Identity()};  // R: body frame {B} in inertial frame {I}
  Vec3 body_rate{Vec3::Zero()};     // Omega, expressed in {B}
};

struct PlantParams {
  double quad_mass{2.1};
  double hook_mass{0.012};
  Mat3 inertia{Vec3(0.03, 0.03, 0.05).asDiagonal()};
  Vec3 gravity{0.0, 0.0, -9.81};
  double min_length{0.1};
  double max_length{1.0};

  /// Throws std::invalid_argument on non-physical values.
  void validate() const;
  double total_mass() const { return quad_mass + hook_mass; }
};

struct PlantInputs {
  double thrust{0.0};
  Vec3 body_torque{Vec3::Zero()};
  /// Winch command, the cable length acceleration L_ddot.
  double cable_accel{0.0};
  Vec3 contact_force{Vec3::Zero()};
  /// Reaction torque of the winch on the body. Not modelled; kept at zero.
  Vec3 winch_torque{Vec3::Zero()};
};

/// Full plant state. The cable attitude is carried as a unit vector with its
/// angular velocity, which has no singularity at the vertical configuration;
/// cable() gives the (alpha, beta) view.
struct PlantState {
  QuadrotorState quad;
  Vec3 cable_dir{0.0, 0.0, -1.0};
  Vec3 cable_omega{Vec3::Zero()};
  double length{0.5};
  double length_rate{0.0};
  /// Last well-defined azimuth, used while the cable is vertical.
  double alpha_hint{0.0};

  CableState cable() const;
  Vec3 hook_position() const { return quad.position + length * cable_dir; }
  Vec3 hook_velocity() const;

  static PlantState hover(const Vec3& position, double length);
  static PlantState from_cable(const QuadrotorState& quad, const CableState& cable);
};

struct PlantStateDerivative {
  Vec3 position_dot{Vec3::Zero()};
  Vec3 velocity_dot{Vec3::Zero()};
  Mat3 attitude_dot{Mat3::Zero()};
  Vec3 body_rate_dot{Vec3::Zero()};
  Vec3 cable_dir_dot{Vec3::Zero()};
  Vec3 cable_omega_dot{Vec3::Zero()};
  double length_dot{0.0};
  double length_ddot{0.0};
  /// Constraint tension of the inextensible cable (may be negative: slack).
  double tension{0.0};
};

class SingularConfiguration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Time derivative of the coupled vehicle / winch / cable / hook system.
PlantStateDerivative coupled_derivative(const PlantState& state, const PlantInputs& inputs,
                                        const PlantParams& params);

/// (alpha_ddot, beta_ddot) implied by the cable angular acceleration.
/// Throws SingularConfiguration when the azimuth channel is needed at sin(beta) < 1e-6.
Vec2 angle_accelerations(const PlantState& state, const PlantStateDerivative& deriv);

Vec3 hook_acceleration(const PlantState& state, const PlantStateDerivative& deriv);

/// M_h a_h - F_c - M_h g + f_T e_l; zero when the hook balance holds.
Vec3 hook_dynamics_residual(const PlantState& state, const PlantInputs& inputs,
                            const PlantParams& params, double tension, const Vec3& hook_accel);

struct CableSubsystemAccel {
  double beta_ddot{0.0};
  double length_ddot{0.0};
};

/// Inclination/length accelerations from the projected cable equations.
/// Independent of coupled_derivative; used as a cross-check.
CableSubsystemAccel cable_subsystem_accel(const PlantState& state, const PlantInputs& inputs,
                                          const PlantParams& params, double tension);

/// Tension for which the axial cable equation reproduces the commanded L_ddot:
/// M_h (g . e_l - L_ddot) + F_c . e_l.
double axial_model_tension(const PlantState& state, const PlantInputs& inputs,
                           const PlantParams& params);

struct StepReport {
  bool length_limited{false};
  bool slack{false};
  double tension{0.0};  // constraint tension at the start of the step
};

using ContactForceFn = std::function<Vec3(double t, const PlantState& state)>;

/// One classical RK4 step with zero-order-hold inputs. Afterwards R is
/// re-orthonormalized, e_l renormalized, w_l projected onto the plane normal
/// to e_l, and L clamped to [L_min, L_max] (L_dot zeroed at a stop).
PlantState integrate_step(const PlantState& state, const PlantInputs& inputs,
                          const PlantParams& params, double dt, StepReport* report = nullptr);

/// Same, but the contact force is re-evaluated at every RK4 stage.
PlantState integrate_step(const PlantState& state, PlantInputs inputs, const PlantParams& params,
                          double dt, double t, const ContactForceFn& contact,
                          StepReport* report = nullptr);

}  // namespace clt
