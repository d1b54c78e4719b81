#include "clt/operator_model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace clt {

namespace {
constexpr double kPi = 3.14159265358979323846;

double smooth5(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}
}  // namespace

std::string to_string(OperatorProfile p) {
  switch (p) {
    case OperatorProfile::none: return "none";
    case OperatorProfile::loading: return "loading";
    case OperatorProfile::transporting: return "transporting";
  }
  return "none";
}

OperatorProfile operator_profile_from_string(const std::string& s) {
  if (s == "none") return OperatorProfile::none;
  if (s == "loading") return OperatorProfile::loading;
  if (s == "transporting") return OperatorProfile::transporting;
  throw std::invalid_argument("unknown operator profile: " + s);
}

void OperatorParams::validate() const {
  if (!(stiffness >= 0.0 && damping >= 0.0 && max_force >= 0.0))
    throw std::invalid_argument("operator gains must be non-negative");
  if (!(load_mass >= 0.0)) throw std::invalid_argument("load mass must be non-negative");
  if (!(ramp > 0.0 && walk_speed > 0.0 && hold_time >= 0.0))
    throw std::invalid_argument("operator timing must be positive");
  if (!(obstacle_radius >= 0.0 && detour_width > 0.0 && influence_width >= detour_width))
    throw std::invalid_argument("obstacle window must contain the detour");
}

OperatorParams jitter_operator(const OperatorParams& p, std::uint64_t seed, double f) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> u(1.0 - f, 1.0 + f);
  OperatorParams q = p;
  q.stiffness *= u(rng);
  q.damping *= u(rng);
  q.max_force *= u(rng);
  q.reach *= u(rng);
  q.walk_speed *= u(rng);
  q.hold_time *= u(rng);
  q.detour *= u(rng);
  q.t_on *= u(rng);
  return q;
}

double c1_bump(double u) {
  if (std::abs(u) >= 1.0) return 0.0;
  const double c = std::cos(0.5 * kPi * u);
  return c * c;
}

double c1_ramp(double t, double a, double w) {
  if (t <= a) return 0.0;
  if (t >= a + w) return 1.0;
  return 0.5 - 0.5 * std::cos(kPi * (t - a) / w);
}

double payload_mass(const OperatorParams& p) {
  return p.profile == OperatorProfile::none ? 0.0 : p.load_mass;
}

OperatorModel::OperatorModel(OperatorParams params, Vec3 hook_rest,
                             const VirtualReference* reference, Vec3 gravity)
    : p_(std::move(params)), rest_(std::move(hook_rest)), ref_(reference), gravity_(gravity) {
  p_.validate();
  if (p_.profile == OperatorProfile::loading && p_.load_mass * gravity_.norm() > p_.max_force)
    throw std::invalid_argument("max force cannot hold the payload");
  if (p_.profile == OperatorProfile::transporting && !ref_)
    throw std::invalid_argument("transporting operator needs the reference path");
}

double OperatorModel::loading_end() const {
  const double leg = p_.reach.norm() / p_.walk_speed;
  return p_.t_on + p_.ramp + 2.0 * leg + 2.0 * p_.hold_time + p_.ramp;
}

Vec3 OperatorModel::loading_anchor(double t) const {
  const double leg = p_.reach.norm() / p_.walk_speed;
  const double t_out = p_.t_on + p_.ramp;
  const double t_back = t_out + leg + p_.hold_time;
  const double s = smooth5((t - t_out) / leg) - smooth5((t - t_back) / leg);
  return rest_ + s * p_.reach;
}

double OperatorModel::transport_along(double t) const {
  return ref_->at(t).position.x() - p_.obstacle.x();
}

Vec3 OperatorModel::transport_anchor(double t) const {
  const ReferenceSample r = ref_->at(t);
  Vec3 a = r.position + r.length * cable_direction(r.attitude);
  a.y() += p_.side * p_.detour * c1_bump((r.position.x() - p_.obstacle.x()) / p_.detour_width);
  return a;
}

Vec3 OperatorModel::anchor(double t) const {
  switch (p_.profile) {
    case OperatorProfile::loading: return loading_anchor(t);
    case OperatorProfile::transporting: return transport_anchor(t);
    case OperatorProfile::none: break;
  }
  return rest_;
}

Vec3 OperatorModel::anchor_velocity(double t) const {
  const double h = 1e-5;
  return (anchor(t + h) - anchor(t - h)) / (2.0 * h);
}

double OperatorModel::activation(double t) const {
  switch (p_.profile) {
    case OperatorProfile::loading: {
      const double t_end = loading_end();
      return c1_ramp(t, p_.t_on, p_.ramp) * (1.0 - c1_ramp(t, t_end - p_.ramp, p_.ramp));
    }
    case OperatorProfile::transporting:
      return c1_bump(transport_along(t) / p_.influence_width);
    case OperatorProfile::none: break;
  }
  return 0.0;
}

Vec3 OperatorModel::force(double t, const Vec3& x_h, const Vec3& v_h) const {
  const double a = activation(t);
  // While the pull is faded out in the loading task the hand holds the payload.
  const Vec3 hold = p_.profile == OperatorProfile::loading ? Vec3(-(1.0 - a) * p_.load_mass * gravity_)
                                                           : Vec3::Zero();
  if (a == 0.0) return hold;
  Vec3 f = p_.stiffness * (anchor(t) - x_h) + p_.damping * (anchor_velocity(t) - v_h);
  const double n = f.norm();
  if (n > p_.max_force) f *= p_.max_force / n;
  return a * f + hold;
}

}  // namespace clt
