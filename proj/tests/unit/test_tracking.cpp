#include <cmath>
#include <random>

#include "clt/tracking.hpp"
#include "doctest.h"

using namespace clt;

namespace {

struct StepRun {
  std::vector<double> t;
  std::vector<double> err;
};

// Cascade on the full plant: position stage every 10 ms, attitude every 1 ms.
StepRun step_run(const TrackingGains& g, const Vec3& target, double horizon) {
  const PlantParams p;
  QuadTracker tracker(g, p);
  PlantState s = PlantState::hover(Vec3::Zero(), 0.5);
  StepRun r;
  TrackingTarget tgt;
  tgt.position = target;
  const int n = static_cast<int>(horizon / 1e-3);
  for (int k = 0; k < n; ++k) {
    if (k % 10 == 0) {
      CableFeedforward ff;
      ff.e_l = s.cable_dir;
      ff.omega = s.cable_omega;
      ff.length = s.length;
      tracker.update_position(s.quad, tgt, ff, 0.01);
      r.t.push_back(k * 1e-3);
      r.err.push_back((s.quad.position - target).norm());
    }
    const auto out = tracker.update_attitude(s.quad);
    PlantInputs in;
    in.thrust = out.thrust;
    in.body_torque = out.torque;
    s = integrate_step(s, in, p, 1e-3);
  }
  return r;
}

}  // namespace

TEST_CASE("hover target gives hover thrust and no torque") {
  const PlantParams p;
  QuadrotorState q;
  TrackingTarget t;
  const auto out = quad_tracking_control(q, t, CableFeedforward{}, p, TrackingGains{});
  CHECK(out.thrust == doctest::Approx(20.72).epsilon(1e-3));
  CHECK(out.torque.norm() < 1e-12);
  CHECK_FALSE(out.thrust_saturated);
}

TEST_CASE("thrust feedforward inverts the coupled translational model") {
  const PlantParams p;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    PlantState s;
    s.cable_dir = Vec3(0.3 * u(rng), 0.3 * u(rng), -1.0).normalized();
    s.cable_omega = Vec3(u(rng), u(rng), u(rng));
    s.cable_omega -= s.cable_omega.dot(s.cable_dir) * s.cable_dir;
    PlantInputs in;
    in.cable_accel = u(rng);
    in.contact_force = Vec3(u(rng), u(rng), u(rng));
    CableFeedforward ff{s.cable_dir, s.cable_omega, s.length, in.cable_accel, in.contact_force};
    const Vec3 a(u(rng), u(rng), u(rng));
    const Vec3 f = thrust_for_acceleration(a, ff, p, true);
    // Align the body z-axis with f so the plant realizes it exactly.
    s.quad.attitude = Eigen::Quaterniond::FromTwoVectors(Vec3::UnitZ(), f).toRotationMatrix();
    in.thrust = f.norm();
    CHECK((coupled_derivative(s, in, p).velocity_dot - a).norm() < 1e-10);
  }
}

TEST_CASE("0.1 m step settles within 5 s at default gains") {
  const auto r = step_run(TrackingGains{}, Vec3(0.1, 0.0, 0.0), 8.0);
  double worst_after_5 = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < r.t.size(); ++i) {
    peak = std::max(peak, r.err[i]);
    if (r.t[i] >= 5.0) worst_after_5 = std::max(worst_after_5, r.err[i]);
  }
  MESSAGE("peak error " << peak << " after 5 s " << worst_after_5);
  CHECK(worst_after_5 < 0.01);
}

TEST_CASE("Routh-Hurwitz examples") {
  const auto a = routh_hurwitz_check({4.0, 2.0, 3.0});
  CHECK(a.stable);
  CHECK(a.margin == doctest::Approx(10.0));
  CHECK_FALSE(routh_hurwitz_check({1.0, 5.0, 2.0}).stable);
  CHECK_FALSE(routh_hurwitz_check({1.0, 2.0, 2.0}).stable);
  for (const auto& r : cable_characteristic_roots({4.0, 2.0, 3.0})) CHECK(r.real() < 0.0);
  CHECK(routh_hurwitz_check(CablePidGains{}).stable);
}

TEST_CASE("cable PID neutrality and limits") {
  CHECK(cable_pid_control(0.0, 0.0, 0.0, CablePidGains{}, 10.0) == 0.0);
  CHECK(cable_pid_control(10.0, 0.0, 0.0, CablePidGains{}, 10.0) == -10.0);
  CHECK_THROWS_AS(CablePid({1.0, 5.0, 2.0}, 10.0, 0.1, 1.0), std::invalid_argument);
}

TEST_CASE("cable PID step decays at the slowest root") {
  const CablePidGains g{4.0, 2.0, 3.0};
  CablePid pid(g, 1e3, 0.0, 10.0);
  // Isolated double integrator, L_d steps from 0 to 0.1.
  double L = 0.0, Ld = 0.0;
  const double dt = 1e-3;
  std::vector<double> t, e;
  for (int k = 0; k < 30000; ++k) {
    const double u = pid.update(L, Ld, 0.1, 0.0, dt);
    Ld += dt * u;
    L += dt * Ld;
    t.push_back((k + 1) * dt);
    e.push_back(std::abs(L - 0.1));
  }
  double slow = -1e9;
  for (const auto& r : cable_characteristic_roots(g)) slow = std::max(slow, r.real());
  // Fit log|e| on the tail where the slowest mode dominates.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < 10.0 || t[i] > 20.0 || e[i] < 1e-14) continue;
    sx += t[i], sy += std::log(e[i]), sxx += t[i] * t[i], sxy += t[i] * std::log(e[i]);
    ++n;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  MESSAGE("fitted " << slope << " slowest root " << slow);
  CHECK(std::abs(slope - slow) < 0.1 * std::abs(slow));
}

TEST_CASE("anti-windup freezes the integral on saturation") {
  CablePid pid(CablePidGains{}, 0.5, 0.1, 1.0);
  for (int k = 0; k < 100; ++k) pid.update(0.5, 0.0, 0.9, 0.0, 0.01);
  CHECK(pid.saturated());
  CHECK(pid.integral() == 0.0);
}
