#include "clt/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace clt {

void TrackingGains::validate() const {
  if (!(k_x > 0.0 && k_v > 0.0 && k_R > 0.0 && k_Omega > 0.0 && max_thrust > 0.0) ||
      k_i < 0.0 || integral_limit < 0.0) {
    throw std::invalid_argument("tracking gains must be positive");
  }
  if (k_i > 0.0 && !(k_v * k_x > k_i)) {
    throw std::invalid_argument("position integral gain violates k_v k_x > k_i");
  }
}

Vec3 thrust_for_acceleration(const Vec3& a, const CableFeedforward& ff, const PlantParams& p,
                             bool use_ff) {
  const double mq = p.quad_mass, mh = p.hook_mass;
  if (!use_ff) return p.total_mass() * (a - p.gravity);
  const Vec3& e = ff.e_l;
  const Mat3 e_hat2 = skew(e) * skew(e);
  const Vec3 rhs = p.total_mass() * (a - p.gravity) + mh * ff.length_accel * e -
                   (Mat3::Identity() + e_hat2) * ff.contact_force +
                   mh * ff.length * ff.omega.cross(ff.omega.cross(e));
  // (I - r e^2)^-1 = (I + r e e^T) / (1 + r) for unit e.
  const double r = mh / mq;
  return (rhs + r * e * e.dot(rhs)) / (1.0 + r);
}

TrackingOutput attitude_control(const QuadrotorState& s, const Vec3& f, double yaw,
                                const PlantParams& p, const TrackingGains& g) {
  TrackingOutput out;
  const Mat3& R = s.attitude;
  const double fn = f.norm();
  Vec3 b3 = fn > 1e-9 ? Vec3(f / fn) : Vec3::UnitZ();
  const Vec3 b1c(std::cos(yaw), std::sin(yaw), 0.0);
  Vec3 b2 = b3.cross(b1c);
  if (b2.norm() < 1e-9) b2 = b3.cross(Vec3::UnitX());
  b2.normalize();
  const Vec3 b1 = b2.cross(b3);
  Mat3 Rd;
  Rd.col(0) = b1;
  Rd.col(1) = b2;
  Rd.col(2) = b3;
  out.desired_attitude = Rd;

  out.attitude_error = 0.5 * vee(Rd.transpose() * R - R.transpose() * Rd);
  const Vec3& om = s.body_rate;
  const Vec3 e_om = om;  // desired body rate taken as zero
  out.torque = -g.k_R * out.attitude_error - g.k_Omega * e_om + om.cross(p.inertia * om);

  double T = f.dot(R * Vec3::UnitZ());
  if (T < 0.0) T = 0.0;
  if (T > g.max_thrust) {
    T = g.max_thrust;
    out.thrust_saturated = true;
  }
  out.thrust = T;
  return out;
}

TrackingOutput quad_tracking_control(const QuadrotorState& s, const TrackingTarget& t,
                                     const CableFeedforward& ff, const PlantParams& p,
                                     const TrackingGains& g) {
  const Vec3 a = t.acceleration - g.k_x * (s.position - t.position) - g.k_v * (s.velocity - t.velocity);
  return attitude_control(s, thrust_for_acceleration(a, ff, p, g.cable_feedforward), t.yaw, p, g);
}

QuadTracker::QuadTracker(TrackingGains gains, PlantParams params)
    : gains_(std::move(gains)), params_(std::move(params)) {
  gains_.validate();
  params_.validate();
  command_.thrust_vector = -params_.total_mass() * params_.gravity;
}

const ForceCommand& QuadTracker::update_position(const QuadrotorState& s, const TrackingTarget& t,
                                                 const CableFeedforward& ff, double dt) {
  const Vec3 ex = s.position - t.position;
  const Vec3 ev = s.velocity - t.velocity;
  if (gains_.k_i > 0.0) {
    integral_ = (integral_ + dt * ex).cwiseMax(-gains_.integral_limit).cwiseMin(gains_.integral_limit);
  }
  const Vec3 a = t.acceleration - gains_.k_x * ex - gains_.k_v * ev - gains_.k_i * integral_;
  command_.thrust_vector = thrust_for_acceleration(a, ff, params_, gains_.cable_feedforward);
  command_.position_error = ex;
  yaw_ = t.yaw;
  return command_;
}

TrackingOutput QuadTracker::update_attitude(const QuadrotorState& s) const {
  return attitude_control(s, command_.thrust_vector, yaw_, params_, gains_);
}

void QuadTracker::reset() {
  integral_.setZero();
  command_ = {};
  command_.thrust_vector = -params_.total_mass() * params_.gravity;
}

RouthHurwitzResult routh_hurwitz_check(const CablePidGains& g) {
  RouthHurwitzResult r;
  r.margin = g.K_D * g.K_P - g.K_I;
  r.stable = g.K_P > 0.0 && g.K_I > 0.0 && g.K_D > 0.0 && r.margin > 0.0;
  return r;
}

double cable_pid_control(double e, double ie, double ed, const CablePidGains& g, double limit) {
  const double u = -g.K_D * ed - g.K_P * e - g.K_I * ie;
  return std::clamp(u, -limit, limit);
}

std::array<std::complex<double>, 3> cable_characteristic_roots(const CablePidGains& g) {
  Mat3 companion;
  companion << -g.K_D, -g.K_P, -g.K_I, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0;
  Eigen::EigenSolver<Mat3> es(companion, false);
  const auto ev = es.eigenvalues();
  return {ev(0), ev(1), ev(2)};
}

CablePid::CablePid(CablePidGains gains, double accel_limit, double min_length, double max_length)
    : gains_(gains), accel_limit_(accel_limit), min_length_(min_length), max_length_(max_length) {
  if (!routh_hurwitz_check(gains_).stable) {
    throw std::invalid_argument("cable PID gains fail the Routh-Hurwitz conditions");
  }
  if (!(accel_limit_ > 0.0)) throw std::invalid_argument("winch acceleration limit must be positive");
}

double CablePid::update(double L, double L_dot, double L_d, double L_dot_ff, double dt) {
  const double e = L - L_d;
  const double ed = L_dot - L_dot_ff;
  const double raw = -gains_.K_D * ed - gains_.K_P * e - gains_.K_I * integral_;
  const double u = std::clamp(raw, -accel_limit_, accel_limit_);
  saturated_ = u != raw;
  // Freeze the integral while saturated or sitting on a winch stop.
  const bool at_stop = (L <= min_length_ && u < 0.0) || (L >= max_length_ && u > 0.0);
  if (!saturated_ && !at_stop) integral_ += dt * e;
  return u;
}

void CablePid::reset() {
  integral_ = 0.0;
  saturated_ = false;
}

}  // namespace clt
