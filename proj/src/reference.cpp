#include "clt/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace clt {

void fill_vertical_nominal(ReferenceSample& s, const NominalMasses& m) {
  const Vec3 e = cable_direction(s.attitude);
  s.tension = m.hook_mass * (m.gravity.dot(e) - s.length_accel);
  // Vehicle balance with the hook tension pulling along e.
  s.thrust = m.quad_mass * (s.acceleration - m.gravity) - s.tension * e;
}

HoverReference::HoverReference(Vec3 position, double length, NominalMasses masses)
    : position_(std::move(position)), length_(length), masses_(masses) {}

ReferenceSample HoverReference::at(double t) const {
  ReferenceSample s;
  s.t = t;
  s.position = position_;
  s.length = length_;
  fill_vertical_nominal(s, masses_);
  return s;
}

LineReference::LineReference(Profile profile, NominalMasses masses)
    : profile_(std::move(profile)), masses_(masses) {
  if (!(profile_.speed > 0.0) || !(profile_.length > 0.0) || profile_.blend_time < 0.0) {
    throw std::invalid_argument("line reference needs positive speed and length");
  }
  profile_.direction.normalize();
  // Each blend covers speed * blend_time / 2 of distance.
  const double blend_distance = profile_.speed * profile_.blend_time;
  if (blend_distance > profile_.length) {
    throw std::invalid_argument("line reference too short for its blend time");
  }
  cruise_time_ = (profile_.length - blend_distance) / profile_.speed;
}

double LineReference::end_time() const {
  return profile_.start_time + 2.0 * profile_.blend_time + cruise_time_;
}

namespace {

// Quintic smoothstep and its first two derivatives on [0, 1].
struct Smooth {
  double s, ds, dds;
};
Smooth smoothstep5(double x) {
  x = std::clamp(x, 0.0, 1.0);
  const double x2 = x * x, x3 = x2 * x;
  return {x3 * (10.0 - 15.0 * x + 6.0 * x2), 30.0 * x2 * (1.0 - x) * (1.0 - x),
          60.0 * x * (1.0 - x) * (1.0 - 2.0 * x)};
}

// Integral of smoothstep5 from 0 to x.
double smoothstep5_integral(double x) {
  x = std::clamp(x, 0.0, 1.0);
  const double x4 = x * x * x * x;
  return x4 * (2.5 - 3.0 * x + x * x);
}

}  // namespace

ReferenceSample LineReference::at(double t) const {
  const auto& p = profile_;
  const double tb = p.blend_time;
  const double tau = t - p.start_time;
  double dist = 0.0, speed = 0.0, accel = 0.0;
  if (tau <= 0.0) {
  } else if (tb > 0.0 && tau < tb) {
    const auto sm = smoothstep5(tau / tb);
    dist = p.speed * tb * smoothstep5_integral(tau / tb);
    speed = p.speed * sm.s;
    accel = p.speed * sm.ds / tb;
  } else if (tau < tb + cruise_time_) {
    dist = 0.5 * p.speed * tb + p.speed * (tau - tb);
    speed = p.speed;
  } else if (tb > 0.0 && tau < 2.0 * tb + cruise_time_) {
    const double u = (tau - tb - cruise_time_) / tb;
    const auto sm = smoothstep5(u);
    dist = 0.5 * p.speed * tb + p.speed * cruise_time_ + p.speed * tb * (u - smoothstep5_integral(u));
    speed = p.speed * (1.0 - sm.s);
    accel = -p.speed * sm.ds / tb;
  } else {
    dist = p.length;
  }
  ReferenceSample s;
  s.t = t;
  s.position = p.start + dist * p.direction;
  s.velocity = speed * p.direction;
  s.acceleration = accel * p.direction;
  s.length = p.cable_length;
  fill_vertical_nominal(s, masses_);
  return s;
}

BreathingCableReference::BreathingCableReference(Vec3 position, double mean_length,
                                                 double amplitude, double omega,
                                                 NominalMasses masses)
    : position_(std::move(position)),
      mean_(mean_length),
      amplitude_(amplitude),
      omega_(omega),
      masses_(masses) {}

ReferenceSample BreathingCableReference::at(double t) const {
  ReferenceSample s;
  s.t = t;
  s.position = position_;
  s.length = mean_ + amplitude_ * std::sin(omega_ * t);
  s.length_rate = amplitude_ * omega_ * std::cos(omega_ * t);
  s.length_accel = -amplitude_ * omega_ * omega_ * std::sin(omega_ * t);
  fill_vertical_nominal(s, masses_);
  return s;
}

}  // namespace clt
