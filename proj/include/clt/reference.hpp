#pragma once

#include <memory>

#include "clt/geometry.hpp"

namespace clt {

/// Virtual reference evaluated at one instant, with the nominal thrust and
/// tension that make it dynamically consistent in the absence of contact.
struct ReferenceSample {
  double t{0.0};
  Vec3 position{Vec3::Zero()};
  Vec3 velocity{Vec3::Zero()};
  Vec3 acceleration{Vec3::Zero()};
  CableAttitude attitude;
  Vec2 attitude_rate{Vec2::Zero()};
  Vec2 attitude_accel{Vec2::Zero()};
  double length{0.5};
  double length_rate{0.0};
  double length_accel{0.0};
  double tension{0.0};            // f_T^v
  Vec3 thrust{Vec3::Zero()};      // F_t^v
};

class VirtualReference {
 public:
  virtual ~VirtualReference() = default;
  virtual ReferenceSample at(double t) const = 0;
};

struct NominalMasses {
  double quad_mass{2.1};
  double hook_mass{0.012};
  Vec3 gravity{0.0, 0.0, -9.81};
};

/// Hover at a fixed point with a vertical cable of constant length.
class HoverReference final : public VirtualReference {
 public:
  HoverReference(Vec3 position, double length, NominalMasses masses);
  ReferenceSample at(double t) const override;

 private:
  Vec3 position_;
  double length_;
  NominalMasses masses_;
};

/// Straight segment traversed at constant cruise speed. Speed is blended in
/// and out with quintic smoothsteps so the position is C2 in time.
class LineReference final : public VirtualReference {
 public:
  struct Profile {
    Vec3 start{Vec3::Zero()};
    Vec3 direction{Vec3::UnitX()};
    double length{2.15};
    double speed{0.15};
    double blend_time{1.0};
    double start_time{0.0};
    double cable_length{0.5};
  };

  LineReference(Profile profile, NominalMasses masses);
  ReferenceSample at(double t) const override;
  double end_time() const;
  const Profile& profile() const { return profile_; }

 private:
  Profile profile_;
  NominalMasses masses_;
  double cruise_time_{0.0};
};

/// Constant position with L^v(t) = mean + amplitude * sin(w t). Used to
/// exercise the time-varying inertia of the impedance model.
class BreathingCableReference final : public VirtualReference {
 public:
  BreathingCableReference(Vec3 position, double mean_length, double amplitude, double omega,
                          NominalMasses masses);
  ReferenceSample at(double t) const override;

 private:
  Vec3 position_;
  double mean_, amplitude_, omega_;
  NominalMasses masses_;
};

/// Fills nominal thrust/tension for a vertical-cable reference sample.
void fill_vertical_nominal(ReferenceSample& s, const NominalMasses& m);

}  // namespace clt
