#pragma once

#include <Eigen/Dense>

namespace clt {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat32 = Eigen::Matrix<double, 3, 2>;

/// Below this value of sin(beta) the azimuth is treated as undefined.
inline constexpr double kDegenerateSinBeta = 1e-6;

/// Cable orientation in the vehicle-attached frame {A}.
/// alpha is the azimuth, beta the inclination measured from straight down.
struct CableAttitude {
  double alpha{0.0};
  double beta{0.0};
};

struct CableState {
  CableAttitude attitude;
  Vec2 attitude_rate{Vec2::Zero()};  // (alpha_dot, beta_dot)
  double length{0.5};
  double length_rate{0.0};
};

Mat3 skew(const Vec3& v);
Vec3 vee(const Mat3& m);

/// e_l = [sin b cos a, sin b sin a, -cos b].
Vec3 cable_direction(const CableAttitude& att);

/// Partial derivatives of cable_direction.
Vec3 cable_direction_dalpha(const CableAttitude& att);
Vec3 cable_direction_dbeta(const CableAttitude& att);

/// E such that w_l = E [alpha_dot, beta_dot]^T.
/// Columns are e_l x de_l/dalpha and e_l x de_l/dbeta.
Mat32 angle_rate_map(const CableAttitude& att);

/// dE/dt for the given angle rates.
Mat32 angle_rate_map_derivative(const CableAttitude& att, const Vec2& rate);

/// Unit normal of the vertical plane containing e_l, oriented along the
/// rotation axis of increasing beta: n = [sin a, -cos a, 0]. With this
/// orientation E's beta column equals n.
Vec3 plane_normal(const CableAttitude& att);

/// Recover (alpha, beta) from a unit direction. When the horizontal part of
/// `e` vanishes, `fallback_alpha` is kept.
CableAttitude attitude_from_direction(const Vec3& e, double fallback_alpha = 0.0);

/// Angle rates from cable direction and its angular velocity (w perpendicular to e).
/// alpha_dot is 0 when sin(beta) < kDegenerateSinBeta.
Vec2 angle_rates_from_angular_velocity(const CableAttitude& att, const Vec3& omega);

/// Nearest rotation matrix (polar factor).
Mat3 orthonormalize(const Mat3& r);

}  // namespace clt
