#pragma once

#include <cmath>

#include "clt/geometry.hpp"
#include "clt/reference.hpp"

namespace clt {

/// Proportional + exponentially discounted integral shaping gains, shared
/// by both impedance models. xi3 = xi4 = 0 disables length compliance.
struct ShapingGains {
  Vec3 xi1{1.0, 1.0, 0.02};
  Vec3 xi2{0.02, 0.02, 0.0005};
  double xi3{1.0};
  double xi4{0.02};
  double gamma{0.95};

  void validate() const;
};

struct ShapingAccumulators {
  Vec3 position{Vec3::Zero()};
  double length{0.0};
};

struct ShapingOutput {
  Vec3 position_offset{Vec3::Zero()};
  double length_offset{0.0};
};

struct CvimParams {
  double k_beta{0.5};
  double k_length{2.5};
  ShapingGains shaping;

  void validate() const;
};

struct SvimParams {
  Vec4 stiffness{20.0, 20.0, 20.0, 2.5};
  /// Used only when auto_damping is false.
  Vec4 damping{Vec4::Zero()};
  bool auto_damping{true};
  ShapingGains shaping;

  void validate() const;
};

struct ImpedanceState {
  Vec2 zeta{Vec2::Zero()};  // (delta_beta, delta_L)
  Vec2 zeta_rate{Vec2::Zero()};
  ShapingAccumulators acc;
};

struct SvimState {
  Vec4 zeta{Vec4::Zero()};  // (delta_x', delta_L')
  Vec4 zeta_rate{Vec4::Zero()};
  ShapingAccumulators acc;
};

/// Diagonal of M = diag(M_q M_h L_v^2, M_h).
Vec2 cvim_inertia(double L_v, double quad_mass, double hook_mass);

template <int N>
Eigen::Matrix<double, N, 1> critical_damping(const Eigen::Matrix<double, N, 1>& m,
                                             const Eigen::Matrix<double, N, 1>& k) {
  return 2.0 * (m.array() * k.array()).sqrt().matrix();
}
inline double critical_damping(double m, double k) { return 2.0 * std::sqrt(m * k); }

/// (M_q L n . (e x F_c), F_c . e)
Vec2 cvim_forcing(const Vec3& contact_force, const Vec3& e_l, const Vec3& n_beta, double L,
                  double quad_mass);

/// One RK4 step of diag(m) z'' + diag(b) z' + diag(k) z = tau, all inputs frozen.
template <int N>
void impedance_rk4(Eigen::Matrix<double, N, 1>& z, Eigen::Matrix<double, N, 1>& zd,
                   const Eigen::Matrix<double, N, 1>& m, const Eigen::Matrix<double, N, 1>& b,
                   const Eigen::Matrix<double, N, 1>& k, const Eigen::Matrix<double, N, 1>& tau,
                   double dt) {
  using V = Eigen::Matrix<double, N, 1>;
  auto acc = [&](const V& p, const V& v) -> V {
    return ((tau.array() - b.array() * v.array() - k.array() * p.array()) / m.array()).matrix();
  };
  const V a1 = acc(z, zd);
  const V p2 = z + 0.5 * dt * zd, v2 = zd + 0.5 * dt * a1;
  const V a2 = acc(p2, v2);
  const V p3 = z + 0.5 * dt * v2, v3 = zd + 0.5 * dt * a2;
  const V a3 = acc(p3, v3);
  const V p4 = z + dt * v3, v4 = zd + dt * a3;
  const V a4 = acc(p4, v4);
  z += dt / 6.0 * (zd + 2.0 * v2 + 2.0 * v3 + v4);
  zd += dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
}

/// Integrates the coupled impedance model over dt with M, B taken at L_v.
/// Accumulators are left alone (see command_shaping).
ImpedanceState cvim_step(const ImpedanceState& state, const Vec2& tau, double L_v,
                         const CvimParams& params, double quad_mass, double hook_mass, double dt);

/// L_v (e_d - e_v), both directions at the current azimuth.
Vec3 admittance_error(double beta_v, double beta_d, double alpha_c, double L_v);

/// I <- gamma^dt I + dt x
double discounted_update(double acc, double x, double gamma, double dt);

/// Updates the accumulators with the new inputs, then returns
/// (xi1 e + xi2 I_e, xi3 dL + xi4 I_L).
ShapingOutput command_shaping(const Vec3& e_ac, double delta_L, ShapingAccumulators& acc,
                              const ShapingGains& gains, double dt);

/// Supremum of the discounted integral of a signal bounded by sup_input.
inline double discounted_integral_limit(double sup_input, double gamma) {
  return sup_input / std::abs(std::log(gamma));
}

struct DesiredMotion {
  Vec3 position{Vec3::Zero()};
  double length{0.0};
  bool length_clamped{false};
};

DesiredMotion desired_motion(const ReferenceSample& ref, const Vec3& position_offset,
                             double length_offset, double min_length, double max_length);

/// Diagonal of M' = diag(M_q, M_q, M_q, M_h).
Vec4 svim_inertia(double quad_mass, double hook_mass);
Vec4 svim_damping(const SvimParams& params, double quad_mass, double hook_mass);
/// (f e^T, -f)
Vec4 svim_forcing(double tension, const Vec3& e_l);

SvimState svim_step(const SvimState& state, double tension, const Vec3& e_l,
                    const SvimParams& params, double quad_mass, double hook_mass, double dt);
SvimState svim_step(const SvimState& state, const Vec4& forcing, const SvimParams& params,
                    double quad_mass, double hook_mass, double dt);

ShapingOutput svim_shaping(const Vec3& delta_x, double delta_L, ShapingAccumulators& acc,
                           const ShapingGains& gains, double dt);

/// Residuals of the nominal inclination and axial equations along a reference.
Vec2 nominal_residual(const ReferenceSample& ref, const NominalMasses& masses);

struct AdmittanceOutput {
  ShapingOutput shaping;
  DesiredMotion desired;
  Vec3 e_ac{Vec3::Zero()};
  Vec4 forcing{Vec4::Zero()};
};

class CvimController {
 public:
  CvimController(CvimParams params, double quad_mass, double hook_mass, double min_length,
                 double max_length);

  /// contact_force and e_l are whatever the sensing path provides; L is the
  /// measured cable length.
  AdmittanceOutput update(const Vec3& contact_force, const Vec3& e_l, double L,
                          const ReferenceSample& ref, double dt);

  const ImpedanceState& state() const { return state_; }
  const CvimParams& params() const { return params_; }
  void reset() { state_ = {}; }

 private:
  CvimParams params_;
  double quad_mass_, hook_mass_, min_length_, max_length_;
  double alpha_hint_{0.0};
  ImpedanceState state_;
};

class SvimController {
 public:
  SvimController(SvimParams params, double quad_mass, double hook_mass, double min_length,
                 double max_length);

  /// tension is the measured cable tension; the forcing is taken relative to
  /// the reference's own (f_T^v e_l^v, -f_T^v) so a nominal hover stays put.
  AdmittanceOutput update(double tension, const Vec3& e_l, const ReferenceSample& ref, double dt);

  const SvimState& state() const { return state_; }
  const SvimParams& params() const { return params_; }
  void reset() { state_ = {}; }

 private:
  SvimParams params_;
  double quad_mass_, hook_mass_, min_length_, max_length_;
  SvimState state_;
};

}  // namespace clt
