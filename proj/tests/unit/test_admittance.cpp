#include <cmath>
#include <numbers>
#include <random>

#include "clt/admittance.hpp"
#include "clt/reference.hpp"
#include "doctest.h"

using namespace clt;

namespace {
constexpr double kMq = 2.1, kMh = 0.012;
constexpr double kPi = std::numbers::pi;
}  // namespace

TEST_CASE("cvim_inertia arithmetic") {
  const Vec2 m = cvim_inertia(0.5, kMq, kMh);
  CHECK(m(0) == doctest::Approx(0.0063));
  CHECK(m(1) == doctest::Approx(0.012));
  CHECK(cvim_inertia(1.0, kMq, kMh)(0) == doctest::Approx(4.0 * m(0)));
  CHECK(cvim_inertia(0.1, kMq, kMh)(0) == doctest::Approx(2.52e-4));
  CHECK_THROWS_AS(cvim_inertia(0.0, kMq, kMh), std::invalid_argument);
}

TEST_CASE("critical_damping values and scaling") {
  CHECK(critical_damping(2.0, 8.0) == doctest::Approx(8.0));
  CHECK(critical_damping(2.0, 32.0) == doctest::Approx(16.0));
  const Vec2 b = critical_damping<2>(Vec2(2.0, 1.0), Vec2(8.0, 4.0));
  CHECK(b(0) == doctest::Approx(8.0));
  CHECK(b(1) == doctest::Approx(4.0));
}

TEST_CASE("critically damped step response: closed form and no overshoot") {
  const double m = 2.0, k = 8.0, b = critical_damping(m, k), w = std::sqrt(k / m);
  Eigen::Matrix<double, 1, 1> z, zd, mm, bb, kk, tau;
  z << 0.0;
  zd << 0.0;
  mm << m;
  bb << b;
  kk << k;
  tau << 1.0;
  const double dt = 1e-3, target = 1.0 / k;
  double peak = 0.0, worst = 0.0;
  for (int i = 1; i <= 20000; ++i) {
    impedance_rk4<1>(z, zd, mm, bb, kk, tau, dt);
    const double t = i * dt;
    const double exact = target * (1.0 - (1.0 + w * t) * std::exp(-w * t));
    worst = std::max(worst, std::abs(z(0) - exact));
    peak = std::max(peak, z(0));
  }
  CHECK(worst < 1e-9);
  CHECK(peak <= target * 1.01);
}

TEST_CASE("cvim_forcing cases") {
  const Vec3 e = cable_direction({0.3, 0.4});
  const Vec3 n = plane_normal({0.3, 0.4});
  CHECK(cvim_forcing(Vec3::Zero(), e, n, 0.5, kMq).norm() == 0.0);
  const Vec2 axial = cvim_forcing(1.7 * e, e, n, 0.5, kMq);
  CHECK(std::abs(axial(0)) < 1e-14);
  CHECK(axial(1) == doctest::Approx(1.7));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const Vec3 f(u(rng), u(rng), u(rng));
    const Vec3 c(e.y() * f.z() - e.z() * f.y(), e.z() * f.x() - e.x() * f.z(), e.x() * f.y() - e.y() * f.x());
    const Vec2 t = cvim_forcing(f, e, n, 0.6, kMq);
    CHECK(t(0) == doctest::Approx(kMq * 0.6 * (n.x() * c.x() + n.y() * c.y() + n.z() * c.z())));
    CHECK(t(1) == doctest::Approx(f.x() * e.x() + f.y() * e.y() + f.z() * e.z()));
  }
  // A lateral pull along +x on a vertical cable at alpha = 0 raises beta.
  CHECK(cvim_forcing(Vec3::UnitX(), Vec3(0, 0, -1), plane_normal({0.0, 0.0}), 0.5, kMq)(0) > 0.0);
}

TEST_CASE("cvim_step: rest, steady state, monotone step") {
  CvimParams p;
  p.k_beta = 0.5;
  p.k_length = 20.0;
  ImpedanceState s;
  for (int i = 0; i < 100; ++i) s = cvim_step(s, Vec2::Zero(), 0.5, p, kMq, kMh, 0.01);
  CHECK(s.zeta.norm() == 0.0);
  for (int i = 0; i < 2000; ++i) s = cvim_step(s, Vec2(0.0, 1.0), 0.5, p, kMq, kMh, 1e-3);
  CHECK(s.zeta(1) == doctest::Approx(0.05).epsilon(1e-6));

  ImpedanceState r;
  double prev_rate_sign = 1.0, peak = 0.0;
  bool reversed = false;
  for (int i = 0; i < 5000; ++i) {
    r = cvim_step(r, Vec2(0.01, 0.0), 0.5, p, kMq, kMh, 1e-3);
    if (r.zeta_rate(0) * prev_rate_sign < -1e-15) reversed = true;
    peak = std::max(peak, r.zeta(0));
  }
  CHECK_FALSE(reversed);
  CHECK(peak <= 0.01 / p.k_beta * 1.01);
}

TEST_CASE("admittance_error cases") {
  CHECK(admittance_error(0.2, 0.2, 1.0, 0.5).norm() == 0.0);
  const Vec3 e = admittance_error(0.0, kPi / 2, 0.0, 0.5);
  CHECK((e - Vec3(0.5, 0.0, 0.5)).norm() < 1e-15);
  const double d = 1e-4;
  CHECK(admittance_error(0.0, d, 0.8, 0.5).norm() == doctest::Approx(0.5 * d).epsilon(1e-6));
}

TEST_CASE("discounted accumulator limit and bound") {
  ShapingGains g;
  g.xi1 = Vec3::Ones();
  g.xi2 = Vec3::Constant(0.01);
  g.gamma = 0.95;
  ShapingAccumulators acc;
  const double dt = 0.01;
  double peak = 0.0;
  for (int i = 0; i < 200000; ++i) {
    command_shaping(Vec3(1.0, 0.0, 0.0), 1.0, acc, g, dt);
    peak = std::max(peak, acc.position.x());
  }
  const double limit = discounted_integral_limit(1.0, 0.95);
  CHECK(limit == doctest::Approx(19.496).epsilon(1e-4));
  CHECK(acc.position.x() == doctest::Approx(limit).epsilon(1e-3));
  CHECK(peak <= limit + dt);

  // Constant |e_ac| = 0.2: output stays below the proportional + integral bound.
  ShapingAccumulators a2;
  ShapingOutput out;
  for (int i = 0; i < 200000; ++i) out = command_shaping(Vec3(0.0, 0.2, 0.0), 0.0, a2, g, dt);
  const double bound = 0.2 + 0.01 * 0.2 / std::abs(std::log(0.95));
  CHECK(bound == doctest::Approx(0.239).epsilon(1e-3));
  CHECK(out.position_offset.norm() <= bound + 0.01 * 0.2 * dt);

  ShapingAccumulators zero;
  const auto z = command_shaping(Vec3::Zero(), 0.0, zero, g, dt);
  CHECK(z.position_offset.norm() == 0.0);
  CHECK(z.length_offset == 0.0);
}

TEST_CASE("desired_motion: identity, clamping, additivity") {
  const HoverReference hover(Vec3(0, 0, 1.5), 0.5, {});
  const auto ref = hover.at(3.0);
  const auto d0 = desired_motion(ref, Vec3::Zero(), 0.0, 0.1, 1.0);
  CHECK((d0.position - ref.position).norm() == 0.0);
  CHECK(d0.length == ref.length);
  const auto dc = desired_motion(ref, Vec3::Zero(), 0.6, 0.1, 1.0);
  CHECK(dc.length == 1.0);
  CHECK(dc.length_clamped);
  const Vec3 a(0.1, -0.2, 0.05), b(0.3, 0.1, -0.1);
  const auto dab = desired_motion(ref, a + b, 0.0, 0.1, 1.0);
  const auto da = desired_motion(ref, a, 0.0, 0.1, 1.0);
  CHECK((dab.position - (da.position + b)).norm() < 1e-15);
}

TEST_CASE("svim_step: rest, steady state, no overshoot") {
  SvimParams p;
  p.stiffness = Vec4(10.0, 10.0, 10.0, 20.0);
  SvimState s;
  for (int i = 0; i < 100; ++i) s = svim_step(s, 0.0, Vec3(0, 0, -1), p, kMq, kMh, 0.01);
  CHECK(s.zeta.norm() == 0.0);
  double peak_z = 0.0;
  for (int i = 0; i < 40000; ++i) {
    s = svim_step(s, 0.5, Vec3(0, 0, -1), p, kMq, kMh, 1e-3);
    peak_z = std::max(peak_z, -s.zeta(2));
  }
  CHECK(s.zeta(2) == doctest::Approx(-0.5 / 10.0).epsilon(1e-5));
  CHECK(s.zeta(3) == doctest::Approx(-0.5 / 20.0).epsilon(1e-5));
  CHECK(std::abs(s.zeta(0)) < 1e-15);
  CHECK(peak_z <= 0.05 * 1.01);
}

TEST_CASE("svim_shaping mirrors command shaping") {
  ShapingGains g;
  ShapingAccumulators a;
  const auto z = svim_shaping(Vec3::Zero(), 0.0, a, g, 0.01);
  CHECK(z.position_offset.norm() == 0.0);
  for (int i = 0; i < 200000; ++i) svim_shaping(Vec3::Zero(), 1.0, a, g, 0.01);
  CHECK(a.length == doctest::Approx(discounted_integral_limit(1.0, g.gamma)).epsilon(1e-3));
}

TEST_CASE("nominal_residual: hover, constant-rate cable, inconsistent reference") {
  const NominalMasses m;
  const HoverReference hover(Vec3(0, 0, 1), 0.5, m);
  CHECK(nominal_residual(hover.at(0.0), m).norm() < 1e-14);

  ReferenceSample paying = hover.at(0.0);
  paying.length_rate = 0.1;
  fill_vertical_nominal(paying, m);
  CHECK(std::abs(nominal_residual(paying, m)(1)) < 1e-14);

  ReferenceSample bad = hover.at(0.0);
  bad.tension += 0.01;
  CHECK(std::abs(nominal_residual(bad, m)(1)) > 1e-6);
  ReferenceSample tilted = hover.at(0.0);
  tilted.thrust += Vec3(0.5, 0.0, 0.0);
  CHECK(std::abs(nominal_residual(tilted, m)(0)) > 1e-6);
}

TEST_CASE("controllers: zero force leaves the reference untouched") {
  CvimController cvim(CvimParams{}, kMq, kMh, 0.1, 1.0);
  SvimController svim(SvimParams{}, kMq, kMh, 0.1, 1.0);
  const HoverReference hover(Vec3(0.2, -0.1, 1.2), 0.5, {});
  for (int i = 0; i < 1000; ++i) {
    const auto ref = hover.at(0.01 * i);
    const auto a = cvim.update(Vec3::Zero(), Vec3(0, 0, -1), 0.5, ref, 0.01);
    const auto b = svim.update(ref.tension, Vec3(0, 0, -1), ref, 0.01);
    REQUIRE(a.shaping.position_offset.norm() == 0.0);
    REQUIRE(a.shaping.length_offset == 0.0);
    REQUIRE((a.desired.position - ref.position).norm() == 0.0);
    REQUIRE(b.shaping.position_offset.norm() == 0.0);
    REQUIRE(b.desired.length == ref.length);
  }
}

TEST_CASE("cvim controller follows a lateral pull") {
  CvimController cvim(CvimParams{}, kMq, kMh, 0.1, 1.0);
  const HoverReference hover(Vec3(0, 0, 1), 0.5, {});
  const Vec3 e = cable_direction({0.0, 0.2});
  AdmittanceOutput out;
  for (int i = 0; i < 300; ++i) out = cvim.update(Vec3(0.2, 0, 0), e, 0.5, hover.at(0.01 * i), 0.01);
  CHECK(out.shaping.position_offset.x() > 0.0);
  CHECK(std::abs(out.shaping.position_offset.y()) < 1e-12);
}

TEST_CASE("parameter validation") {
  CvimParams p;
  p.k_beta = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  ShapingGains g;
  g.gamma = 1.0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  SvimParams s;
  s.auto_damping = false;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("line reference is smooth and reaches its end") {
  LineReference::Profile prof;
  prof.start = Vec3(-1.075, 0, 1.2);
  const LineReference line(prof, {});
  const auto end = line.at(line.end_time() + 1.0);
  CHECK((end.position - (prof.start + 2.15 * Vec3::UnitX())).norm() < 1e-12);
  const double h = 1e-4;
  for (double t = 0.05; t < line.end_time(); t += 0.37) {
    const Vec3 fd_v = (line.at(t + h).position - line.at(t - h).position) / (2 * h);
    const Vec3 fd_a = (line.at(t + h).velocity - line.at(t - h).velocity) / (2 * h);
    CHECK((fd_v - line.at(t).velocity).norm() < 1e-7);
    CHECK((fd_a - line.at(t).acceleration).norm() < 1e-5);
  }
}
