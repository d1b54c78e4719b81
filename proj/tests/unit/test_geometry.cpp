#include <cmath>
#include <numbers>
#include <random>

#include "clt/geometry.hpp"
#include "doctest.h"

using namespace clt;

namespace {
constexpr double kPi = std::numbers::pi;

Vec3 cross_by_hand(const Vec3& a, const Vec3& b) {
  return {a.y() * b.z() - a.z() * b.y(), a.z() * b.x() - a.x() * b.z(),
          a.x() * b.y() - a.y() * b.x()};
}
}  // namespace

TEST_CASE("skew: zero, canonical, random cross products") {
  CHECK(skew(Vec3::Zero()).isZero(0.0));
  CHECK((skew(Vec3::UnitZ()) * Vec3::UnitX()).isApprox(Vec3::UnitY()));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const Vec3 v(u(rng), u(rng), u(rng)), w(u(rng), u(rng), u(rng));
    const Mat3 s = skew(v);
    CHECK((s + s.transpose()).isZero(0.0));
    CHECK((s * w - cross_by_hand(v, w)).norm() < 1e-12);
    CHECK((vee(s) - v).norm() == 0.0);
  }
}

TEST_CASE("skew squared identity for unit vectors") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> a(-kPi, kPi), b(0.0, kPi / 2);
  for (int i = 0; i < 200; ++i) {
    const Vec3 e = cable_direction({a(rng), b(rng)});
    const Mat3 lhs = skew(e) * skew(e);
    const Mat3 rhs = e * e.transpose() - Mat3::Identity();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("cable_direction examples") {
  CHECK((cable_direction({0.0, 0.0}) - Vec3(0, 0, -1)).norm() < 1e-15);
  CHECK((cable_direction({0.0, kPi / 2}) - Vec3(1, 0, 0)).norm() < 1e-15);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> a(-kPi, kPi), b(0.0, kPi / 2);
  for (int i = 0; i < 500; ++i) {
    const Vec3 e = cable_direction({a(rng), b(rng)});
    CHECK(std::abs(e.norm() - 1.0) < 1e-12);
    CHECK(e.z() <= 0.0);
  }
}

TEST_CASE("angle extraction round trip") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> a(-kPi + 1e-9, kPi), b(1e-3, kPi / 2 - 1e-3);
  for (int i = 0; i < 1000; ++i) {
    const CableAttitude att{a(rng), b(rng)};
    const CableAttitude back = attitude_from_direction(cable_direction(att));
    CHECK(std::abs(back.alpha - att.alpha) < 1e-12);
    CHECK(std::abs(back.beta - att.beta) < 1e-12);
  }
  // Vertical cable keeps the supplied azimuth.
  const CableAttitude v = attitude_from_direction(Vec3(0, 0, -1), 0.7);
  CHECK(v.beta == 0.0);
  CHECK(v.alpha == 0.7);
}

TEST_CASE("angle_rate_map at the horizontal symmetry case") {
  const Mat32 E = angle_rate_map({0.0, kPi / 2});
  CHECK((E.col(0) - Vec3(0, 0, 1)).norm() < 1e-15);
  CHECK((E.col(1) - Vec3(0, -1, 0)).norm() < 1e-15);
}

TEST_CASE("angle_rate_map matches finite-difference kinematics") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> a(-kPi, kPi), b(0.05, kPi / 2 - 0.05), r(-2.0, 2.0);
  const double h = 1e-5;
  for (int i = 0; i < 1000; ++i) {
    const CableAttitude att{a(rng), b(rng)};
    const Vec2 rate(r(rng), r(rng));
    const Vec3 e = cable_direction(att);
    const Vec3 w = angle_rate_map(att) * rate;
    CHECK(std::abs(e.dot(w)) < 1e-14);
    const Vec3 ep = cable_direction({att.alpha + h * rate(0), att.beta + h * rate(1)});
    const Vec3 em = cable_direction({att.alpha - h * rate(0), att.beta - h * rate(1)});
    const Vec3 fd = (ep - em) / (2 * h);
    CHECK((w.cross(e) - fd).norm() < 1e-6);
  }
}

TEST_CASE("angle_rate_map_derivative matches finite differences") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> a(-kPi, kPi), b(0.05, kPi / 2 - 0.05), r(-2.0, 2.0);
  const double h = 1e-6;
  for (int i = 0; i < 200; ++i) {
    const CableAttitude att{a(rng), b(rng)};
    const Vec2 rate(r(rng), r(rng));
    const Mat32 fd = (angle_rate_map({att.alpha + h * rate(0), att.beta + h * rate(1)}) -
                      angle_rate_map({att.alpha - h * rate(0), att.beta - h * rate(1)})) /
                     (2 * h);
    CHECK((angle_rate_map_derivative(att, rate) - fd).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("plane_normal is horizontal, orthogonal to the cable, the beta axis") {
  CHECK((plane_normal({0.0, 0.3}) - Vec3(0, -1, 0)).norm() < 1e-15);
  CHECK((plane_normal({kPi / 2, 0.3}) - Vec3(1, 0, 0)).norm() < 1e-15);
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> a(-kPi, kPi), b(0.0, kPi / 2);
  for (int i = 0; i < 200; ++i) {
    const CableAttitude att{a(rng), b(rng)};
    const Vec3 n = plane_normal(att);
    CHECK(std::abs(n.norm() - 1.0) < 1e-15);
    CHECK(std::abs(n.dot(cable_direction(att))) < 1e-14);
    CHECK(n.z() == 0.0);
    // Rotating about n by a positive angle increases beta.
    CHECK((n.cross(cable_direction(att)) - cable_direction_dbeta(att)).norm() < 1e-14);
  }
}

TEST_CASE("angular velocity to angle rates") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> a(-kPi, kPi), b(0.05, kPi / 2 - 0.05), r(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const CableAttitude att{a(rng), b(rng)};
    const Vec2 rate(r(rng), r(rng));
    const Vec2 back = angle_rates_from_angular_velocity(att, angle_rate_map(att) * rate);
    CHECK((back - rate).norm() < 1e-12);
  }
  const Vec2 vertical = angle_rates_from_angular_velocity({0.4, 0.0}, Vec3(1.0, 2.0, 0.0));
  CHECK(vertical(0) == 0.0);
}

TEST_CASE("orthonormalize returns a rotation") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-1e-3, 1e-3);
  Mat3 r = Eigen::AngleAxisd(0.7, Vec3(1, 2, 3).normalized()).toRotationMatrix();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) += u(rng);
  const Mat3 q = orthonormalize(r);
  CHECK((q.transpose() * q - Mat3::Identity()).norm() < 1e-14);
  CHECK(q.determinant() > 0.0);
  CHECK((q - r).norm() < 1e-2);
}
