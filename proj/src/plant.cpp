#include "clt/plant.hpp"

#include <cmath>

namespace clt {

void PlantParams::validate() const {
  if (!(quad_mass > 0.0) || !(hook_mass > 0.0)) {
    throw std::invalid_argument("plant masses must be positive");
  }
  if (!(min_length > 0.0) || !(min_length < max_length)) {
    throw std::invalid_argument("cable length limits must satisfy 0 < L_min < L_max");
  }
  if (!inertia.isApprox(inertia.transpose(), 1e-12)) {
    throw std::invalid_argument("inertia must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat3> eig(inertia);
  if (!(eig.eigenvalues().minCoeff() > 0.0)) {
    throw std::invalid_argument("inertia must be positive definite");
  }
  if (!gravity.allFinite()) {
    throw std::invalid_argument("gravity must be finite");
  }
}

CableState PlantState::cable() const {
  CableState c;
  c.attitude = attitude_from_direction(cable_dir, alpha_hint);
  c.attitude_rate = angle_rates_from_angular_velocity(c.attitude, cable_omega);
  c.length = length;
  c.length_rate = length_rate;
  return c;
}

Vec3 PlantState::hook_velocity() const {
  return quad.velocity + length_rate * cable_dir + length * cable_omega.cross(cable_dir);
}

PlantState PlantState::hover(const Vec3& position, double length) {
  PlantState s;
  s.quad.position = position;
  s.length = length;
  return s;
}

PlantState PlantState::from_cable(const QuadrotorState& quad, const CableState& cable) {
  PlantState s;
  s.quad = quad;
  s.cable_dir = cable_direction(cable.attitude);
  s.cable_omega = angle_rate_map(cable.attitude) * cable.attitude_rate;
  s.length = cable.length;
  s.length_rate = cable.length_rate;
  s.alpha_hint = cable.attitude.alpha;
  return s;
}

PlantStateDerivative coupled_derivative(const PlantState& s, const PlantInputs& in,
                                        const PlantParams& p) {
  const double mq = p.quad_mass, mh = p.hook_mass;
  const Vec3& e = s.cable_dir;
  const Vec3& w = s.cable_omega;
  const double len = s.length;
  const Mat3 e_hat = skew(e);
  const Mat3 e_hat2 = e_hat * e_hat;
  const Vec3 thrust_vec = in.thrust * (s.quad.attitude * Vec3::UnitZ());
  const Vec3& fc = in.contact_force;
  const double l_ddot = in.cable_accel;

  PlantStateDerivative d;
  d.position_dot = s.quad.velocity;
  // Translational balance of vehicle + hook; the centripetal term carries the
  // sign obtained from differentiating x_h = x_q + L e_l twice.
  const Vec3 force = (Mat3::Identity() - (mh / mq) * e_hat2) * thrust_vec - mh * l_ddot * e +
                     (Mat3::Identity() + e_hat2) * fc - mh * len * w.cross(w.cross(e));
  d.velocity_dot = p.gravity + force / p.total_mass();

  d.attitude_dot = s.quad.attitude * skew(s.quad.body_rate);
  const Vec3& om = s.quad.body_rate;
  d.body_rate_dot =
      p.inertia.ldlt().solve(-om.cross(p.inertia * om) + in.body_torque + in.winch_torque);

  // M_q L^2 w_dot = -2 M_q L L_dot w - L e x F_t + (M_q/M_h) L e x F_c
  d.cable_omega_dot = (-2.0 * mq * len * s.length_rate * w - len * e.cross(thrust_vec) +
                       (mq / mh) * len * e.cross(fc)) /
                      (mq * len * len);
  d.cable_dir_dot = w.cross(e);
  d.length_dot = s.length_rate;
  d.length_ddot = l_ddot;

  d.tension = e.dot(mq * (d.velocity_dot - p.gravity) - thrust_vec);
  return d;
}

Vec2 angle_accelerations(const PlantState& s, const PlantStateDerivative& d) {
  const CableState c = s.cable();
  const Mat32 e_dot = angle_rate_map_derivative(c.attitude, c.attitude_rate);
  const Vec3 rhs = d.cable_omega_dot - e_dot * c.attitude_rate;
  const double sb = std::sin(c.attitude.beta);
  const double beta_ddot = plane_normal(c.attitude).dot(rhs);
  const double u_comp = cable_direction_dbeta(c.attitude).dot(rhs);
  if (std::abs(sb) < kDegenerateSinBeta) {
    if (std::abs(u_comp) > 1e-12) {
      throw SingularConfiguration("azimuth acceleration requested with a vertical cable");
    }
    return Vec2(0.0, beta_ddot);
  }
  return Vec2(u_comp / sb, beta_ddot);
}

Vec3 hook_acceleration(const PlantState& s, const PlantStateDerivative& d) {
  const Vec3& e = s.cable_dir;
  const Vec3& w = s.cable_omega;
  return d.velocity_dot + d.length_ddot * e + 2.0 * s.length_rate * w.cross(e) +
         s.length * (d.cable_omega_dot.cross(e) + w.cross(w.cross(e)));
}

Vec3 hook_dynamics_residual(const PlantState& s, const PlantInputs& in, const PlantParams& p,
                            double tension, const Vec3& hook_accel) {
  return p.hook_mass * hook_accel - in.contact_force - p.hook_mass * p.gravity +
         tension * s.cable_dir;
}

CableSubsystemAccel cable_subsystem_accel(const PlantState& s, const PlantInputs& in,
                                          const PlantParams& p, double tension) {
  const double mq = p.quad_mass, mh = p.hook_mass;
  const CableState c = s.cable();
  const double len = c.length;
  const Vec3 e = cable_direction(c.attitude);
  const Vec3 n = plane_normal(c.attitude);
  const Mat32 e_map = angle_rate_map(c.attitude);
  const Mat32 e_map_dot = angle_rate_map_derivative(c.attitude, c.attitude_rate);
  const Vec3 thrust_vec = in.thrust * (s.quad.attitude * Vec3::UnitZ());
  const Mat3 e_hat = skew(e);

  const Vec3 rot = (-mq * mh * len * len * e_map_dot - 2.0 * mq * mh * len * c.length_rate * e_map) *
                       c.attitude_rate -
                   mh * len * e_hat * thrust_vec + mq * len * e_hat * in.contact_force;
  CableSubsystemAccel out;
  out.beta_ddot = rot.dot(n) / (mq * mh * len * len);
  out.length_ddot = (mh * p.gravity.dot(e) - tension + in.contact_force.dot(e)) / mh;
  return out;
}

double axial_model_tension(const PlantState& s, const PlantInputs& in, const PlantParams& p) {
  const Vec3& e = s.cable_dir;
  return p.hook_mass * (p.gravity.dot(e) - in.cable_accel) + in.contact_force.dot(e);
}

namespace {

PlantState advance(const PlantState& s, const PlantStateDerivative& d, double h) {
  PlantState o = s;
  o.quad.position += h * d.position_dot;
  o.quad.velocity += h * d.velocity_dot;
  o.quad.attitude += h * d.attitude_dot;
  o.quad.body_rate += h * d.body_rate_dot;
  o.cable_dir += h * d.cable_dir_dot;
  o.cable_omega += h * d.cable_omega_dot;
  o.length += h * d.length_dot;
  o.length_rate += h * d.length_ddot;
  return o;
}

PlantStateDerivative weighted(const PlantStateDerivative& k1, const PlantStateDerivative& k2,
                              const PlantStateDerivative& k3, const PlantStateDerivative& k4) {
  auto mix = [](const auto& a, const auto& b, const auto& c, const auto& d) {
    return (a + 2.0 * b + 2.0 * c + d) / 6.0;
  };
  PlantStateDerivative o;
  o.position_dot = mix(k1.position_dot, k2.position_dot, k3.position_dot, k4.position_dot);
  o.velocity_dot = mix(k1.velocity_dot, k2.velocity_dot, k3.velocity_dot, k4.velocity_dot);
  o.attitude_dot = mix(k1.attitude_dot, k2.attitude_dot, k3.attitude_dot, k4.attitude_dot);
  o.body_rate_dot = mix(k1.body_rate_dot, k2.body_rate_dot, k3.body_rate_dot, k4.body_rate_dot);
  o.cable_dir_dot = mix(k1.cable_dir_dot, k2.cable_dir_dot, k3.cable_dir_dot, k4.cable_dir_dot);
  o.cable_omega_dot =
      mix(k1.cable_omega_dot, k2.cable_omega_dot, k3.cable_omega_dot, k4.cable_omega_dot);
  o.length_dot = mix(k1.length_dot, k2.length_dot, k3.length_dot, k4.length_dot);
  o.length_ddot = mix(k1.length_ddot, k2.length_ddot, k3.length_ddot, k4.length_ddot);
  return o;
}

void project(PlantState& s, const PlantParams& p, StepReport* report) {
  s.quad.attitude = orthonormalize(s.quad.attitude);
  s.cable_dir.normalize();
  s.cable_omega -= s.cable_omega.dot(s.cable_dir) * s.cable_dir;
  bool limited = false;
  if (s.length > p.max_length) {
    s.length = p.max_length;
    s.length_rate = 0.0;
    limited = true;
  } else if (s.length < p.min_length) {
    s.length = p.min_length;
    s.length_rate = 0.0;
    limited = true;
  }
  s.alpha_hint = attitude_from_direction(s.cable_dir, s.alpha_hint).alpha;
  if (report) report->length_limited = limited;
}

void check_dt(double dt) {
  if (!(dt > 0.0) || dt > 0.01) {
    throw std::invalid_argument("integration step must lie in (0, 0.01] s");
  }
}

void fill_report(StepReport* report, const PlantStateDerivative& k1) {
  if (!report) return;
  report->tension = k1.tension;
  report->slack = k1.tension < 0.0;
}

}  // namespace

PlantState integrate_step(const PlantState& s, const PlantInputs& in, const PlantParams& p,
                          double dt, StepReport* report) {
  check_dt(dt);
  const auto k1 = coupled_derivative(s, in, p);
  const auto k2 = coupled_derivative(advance(s, k1, 0.5 * dt), in, p);
  const auto k3 = coupled_derivative(advance(s, k2, 0.5 * dt), in, p);
  const auto k4 = coupled_derivative(advance(s, k3, dt), in, p);
  PlantState out = advance(s, weighted(k1, k2, k3, k4), dt);
  fill_report(report, k1);
  project(out, p, report);
  return out;
}

PlantState integrate_step(const PlantState& s, PlantInputs in, const PlantParams& p, double dt,
                          double t, const ContactForceFn& contact, StepReport* report) {
  check_dt(dt);
  auto eval = [&](const PlantState& x, double tx) {
    in.contact_force = contact(tx, x);
    return coupled_derivative(x, in, p);
  };
  const auto k1 = eval(s, t);
  const auto k2 = eval(advance(s, k1, 0.5 * dt), t + 0.5 * dt);
  const auto k3 = eval(advance(s, k2, 0.5 * dt), t + 0.5 * dt);
  const auto k4 = eval(advance(s, k3, dt), t + dt);
  PlantState out = advance(s, weighted(k1, k2, k3, k4), dt);
  fill_report(report, k1);
  project(out, p, report);
  return out;
}

}  // namespace clt
