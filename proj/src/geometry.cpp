#include "clt/geometry.hpp"

#include <cmath>

namespace clt {

Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

Vec3 vee(const Mat3& m) { return Vec3(m(2, 1), m(0, 2), m(1, 0)); }

Vec3 cable_direction(const CableAttitude& att) {
  const double sb = std::sin(att.beta);
  return Vec3(sb * std::cos(att.alpha), sb * std::sin(att.alpha), -std::cos(att.beta));
}

Vec3 cable_direction_dalpha(const CableAttitude& att) {
  const double sb = std::sin(att.beta);
  return Vec3(-sb * std::sin(att.alpha), sb * std::cos(att.alpha), 0.0);
}

Vec3 cable_direction_dbeta(const CableAttitude& att) {
  const double cb = std::cos(att.beta);
  return Vec3(cb * std::cos(att.alpha), cb * std::sin(att.alpha), std::sin(att.beta));
}

Mat32 angle_rate_map(const CableAttitude& att) {
  // e x de/dalpha = sin(b) * de/dbeta, e x de/dbeta = [sin a, -cos a, 0].
  Mat32 e;
  e.col(0) = std::sin(att.beta) * cable_direction_dbeta(att);
  e.col(1) = Vec3(std::sin(att.alpha), -std::cos(att.alpha), 0.0);
  return e;
}

Mat32 angle_rate_map_derivative(const CableAttitude& att, const Vec2& rate) {
  const double ca = std::cos(att.alpha), sa = std::sin(att.alpha);
  const double c2b = std::cos(2.0 * att.beta), s2b = std::sin(2.0 * att.beta);
  const double sbcb = std::sin(att.beta) * std::cos(att.beta);
  const double adot = rate(0), bdot = rate(1);
  Mat32 d;
  d.col(0) = adot * Vec3(-sbcb * sa, sbcb * ca, 0.0) + bdot * Vec3(c2b * ca, c2b * sa, s2b);
  d.col(1) = adot * Vec3(ca, sa, 0.0);
  return d;
}

Vec3 plane_normal(const CableAttitude& att) {
  return Vec3(std::sin(att.alpha), -std::cos(att.alpha), 0.0);
}

CableAttitude attitude_from_direction(const Vec3& e, double fallback_alpha) {
  const double horiz = std::hypot(e.x(), e.y());
  CableAttitude att;
  att.beta = std::atan2(horiz, -e.z());
  att.alpha = horiz > kDegenerateSinBeta * e.norm() ? std::atan2(e.y(), e.x()) : fallback_alpha;
  return att;
}

Vec2 angle_rates_from_angular_velocity(const CableAttitude& att, const Vec3& omega) {
  // w = alpha_dot sin(b) u + beta_dot n with {e, u, n} orthonormal.
  const double sb = std::sin(att.beta);
  const double beta_dot = plane_normal(att).dot(omega);
  double alpha_dot = 0.0;
  if (std::abs(sb) >= kDegenerateSinBeta) {
    alpha_dot = cable_direction_dbeta(att).dot(omega) / sb;
  }
  return Vec2(alpha_dot, beta_dot);
}

Mat3 orthonormalize(const Mat3& r) {
  Eigen::JacobiSVD<Mat3> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 q = svd.matrixU() * svd.matrixV().transpose();
  if (q.determinant() < 0.0) {
    Mat3 u = svd.matrixU();
    u.col(2) *= -1.0;
    q = u * svd.matrixV().transpose();
  }
  return q;
}

}  // namespace clt
