#pragma once

#include <cstdint>
#include <string>

#include "clt/geometry.hpp"
#include "clt/plant.hpp"
#include "clt/reference.hpp"

namespace clt {

enum class OperatorProfile { none, loading, transporting };

std::string to_string(OperatorProfile p);
OperatorProfile operator_profile_from_string(const std::string& s);

/// Scripted hand: a spring-damper from the hook to a moving anchor, with the
/// resulting force clipped to max_force and faded in/out. A payload of
/// load_mass hangs on the hook; in the loading profile the hand holds its
/// weight while the pull is faded out (attach at the start, detach at the end).
struct OperatorParams {
  OperatorProfile profile{OperatorProfile::none};
  double stiffness{2.0};  // N/m
  double damping{1.0};    // N s/m
  double max_force{1.5};  // N
  double t_on{2.0};       // grab instant
  double ramp{1.0};       // fade-in / fade-out time
  double load_mass{0.03};  // kg, carried as extra hook mass by the truth plant

  // Loading / unloading in place: drag the hook out to reach and back.
  Vec3 reach{0.6, 0.0, -0.15};  // anchor offset from the resting hook
  double walk_speed{0.25};     // m/s, mean anchor speed on each leg
  double hold_time{3.0};       // pause at the far point and after returning

  // Transporting: lateral detour around an obstacle on the reference line.
  Vec2 obstacle{0.0, 0.0};       // (x, y) of the obstacle centre
  double obstacle_radius{0.15};  // footprint radius
  double detour{0.5};            // lateral anchor offset at the obstacle
  double detour_width{0.6};      // along-track half-width of the detour bump
  double influence_width{0.9};   // along-track half-width of the active window
  double side{1.0};              // +1 passes on +y, -1 on -y

  void validate() const;
};

/// Multiplies the shape parameters by independent factors in [1-f, 1+f].
OperatorParams jitter_operator(const OperatorParams& p, std::uint64_t seed, double fraction = 0.1);

/// C1 bump: cos^2(pi u / 2) on |u| < 1, zero outside.
double c1_bump(double u);
/// C1 ramp from 0 at t = a to 1 at t = a + w.
double c1_ramp(double t, double a, double w);

class OperatorModel {
 public:
  /// hook_rest is where the hand first grabs for the loading profile; the
  /// reference supplies the nominal hook path for the transporting profile.
  OperatorModel(OperatorParams params, Vec3 hook_rest, const VirtualReference* reference,
                Vec3 gravity = Vec3(0.0, 0.0, -9.81));

  /// Hand force on the hook. The payload's own weight and inertia are not
  /// included here; they act through the extra hook mass.
  Vec3 force(double t, const Vec3& hook_position, const Vec3& hook_velocity) const;
  Vec3 force(double t, const PlantState& s) const {
    return force(t, s.hook_position(), s.hook_velocity());
  }

  Vec3 anchor(double t) const;
  Vec3 anchor_velocity(double t) const;
  /// Fade factor in [0, 1] multiplying the clipped spring force.
  double activation(double t) const;
  /// Instant after which the loading profile is finished (anchor back, faded out).
  double loading_end() const;
  const OperatorParams& params() const { return p_; }

 private:
  Vec3 loading_anchor(double t) const;
  Vec3 transport_anchor(double t) const;
  double transport_along(double t) const;

  OperatorParams p_;
  Vec3 rest_;
  const VirtualReference* ref_;
  Vec3 gravity_;
};

/// Payload mass the truth plant carries for this profile (zero for none).
double payload_mass(const OperatorParams& p);

}  // namespace clt
