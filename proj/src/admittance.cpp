#include "clt/admittance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace clt {

void ShapingGains::validate() const {
  if ((xi1.array() < 0.0).any() || (xi2.array() < 0.0).any() || xi3 < 0.0 || xi4 < 0.0) {
    throw std::invalid_argument("shaping gains must be non-negative");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("forgetting factor must lie in (0, 1)");
  }
}

void CvimParams::validate() const {
  if (!(k_beta > 0.0) || !(k_length > 0.0)) {
    throw std::invalid_argument("CVIM stiffness must be positive");
  }
  shaping.validate();
}

void SvimParams::validate() const {
  if (!(stiffness.array() > 0.0).all()) {
    throw std::invalid_argument("SVIM stiffness must be positive");
  }
  if (!auto_damping && !(damping.array() > 0.0).all()) {
    throw std::invalid_argument("SVIM damping must be positive");
  }
  shaping.validate();
}

Vec2 cvim_inertia(double L_v, double quad_mass, double hook_mass) {
  if (!(L_v > 0.0)) throw std::invalid_argument("virtual cable length must be positive");
  return {quad_mass * hook_mass * L_v * L_v, hook_mass};
}

Vec2 cvim_forcing(const Vec3& F, const Vec3& e, const Vec3& n, double L, double quad_mass) {
  return {quad_mass * L * n.dot(e.cross(F)), F.dot(e)};
}

ImpedanceState cvim_step(const ImpedanceState& s, const Vec2& tau, double L_v,
                         const CvimParams& p, double quad_mass, double hook_mass, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  const Vec2 m = cvim_inertia(L_v, quad_mass, hook_mass);
  const Vec2 k(p.k_beta, p.k_length);
  const Vec2 b = critical_damping<2>(m, k);
  ImpedanceState out = s;
  impedance_rk4<2>(out.zeta, out.zeta_rate, m, b, k, tau, dt);
  return out;
}

Vec3 admittance_error(double beta_v, double beta_d, double alpha_c, double L_v) {
  const Vec3 ed = cable_direction({alpha_c, beta_d});
  const Vec3 ev = cable_direction({alpha_c, beta_v});
  return L_v * (ed - ev);
}

double discounted_update(double acc, double x, double gamma, double dt) {
  return std::pow(gamma, dt) * acc + dt * x;
}

ShapingOutput command_shaping(const Vec3& e_ac, double delta_L, ShapingAccumulators& acc,
                              const ShapingGains& g, double dt) {
  const double decay = std::pow(g.gamma, dt);
  acc.position = decay * acc.position + dt * e_ac;
  acc.length = decay * acc.length + dt * delta_L;
  ShapingOutput out;
  out.position_offset = g.xi1.cwiseProduct(e_ac) + g.xi2.cwiseProduct(acc.position);
  out.length_offset = g.xi3 * delta_L + g.xi4 * acc.length;
  return out;
}

DesiredMotion desired_motion(const ReferenceSample& ref, const Vec3& position_offset,
                             double length_offset, double min_length, double max_length) {
  DesiredMotion d;
  d.position = ref.position + position_offset;
  const double raw = ref.length + length_offset;
  d.length = std::clamp(raw, min_length, max_length);
  d.length_clamped = d.length != raw;
  return d;
}

Vec4 svim_inertia(double quad_mass, double hook_mass) {
  return {quad_mass, quad_mass, quad_mass, hook_mass};
}

Vec4 svim_damping(const SvimParams& p, double quad_mass, double hook_mass) {
  if (!p.auto_damping) return p.damping;
  return critical_damping<4>(svim_inertia(quad_mass, hook_mass), p.stiffness);
}

Vec4 svim_forcing(double f, const Vec3& e) {
  return {f * e.x(), f * e.y(), f * e.z(), -f};
}

SvimState svim_step(const SvimState& s, double tension, const Vec3& e_l, const SvimParams& p,
                    double quad_mass, double hook_mass, double dt) {
  return svim_step(s, svim_forcing(tension, e_l), p, quad_mass, hook_mass, dt);
}

SvimState svim_step(const SvimState& s, const Vec4& tau, const SvimParams& p, double quad_mass,
                    double hook_mass, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  SvimState out = s;
  impedance_rk4<4>(out.zeta, out.zeta_rate, svim_inertia(quad_mass, hook_mass),
                   svim_damping(p, quad_mass, hook_mass), p.stiffness, tau, dt);
  return out;
}

ShapingOutput svim_shaping(const Vec3& delta_x, double delta_L, ShapingAccumulators& acc,
                           const ShapingGains& gains, double dt) {
  return command_shaping(delta_x, delta_L, acc, gains, dt);
}

Vec2 nominal_residual(const ReferenceSample& ref, const NominalMasses& m) {
  const double L = ref.length, Ld = ref.length_rate;
  const Vec3 e = cable_direction(ref.attitude);
  const Vec3 n = plane_normal(ref.attitude);
  const Mat32 E = angle_rate_map(ref.attitude);
  const Mat32 Ed = angle_rate_map_derivative(ref.attitude, ref.attitude_rate);
  const double mml = m.quad_mass * m.hook_mass;
  const Vec3 rhs = (-mml * L * L * Ed - 2.0 * mml * L * Ld * E) * ref.attitude_rate -
                   m.hook_mass * L * e.cross(ref.thrust);
  const double r_beta = mml * L * L * ref.attitude_accel.y() - rhs.dot(n);
  const double r_len = m.hook_mass * ref.length_accel - (m.hook_mass * m.gravity.dot(e) - ref.tension);
  return {r_beta, r_len};
}

CvimController::CvimController(CvimParams params, double quad_mass, double hook_mass,
                               double min_length, double max_length)
    : params_(std::move(params)),
      quad_mass_(quad_mass),
      hook_mass_(hook_mass),
      min_length_(min_length),
      max_length_(max_length) {
  params_.validate();
}

AdmittanceOutput CvimController::update(const Vec3& F, const Vec3& e_l, double L,
                                        const ReferenceSample& ref, double dt) {
  const CableAttitude current = attitude_from_direction(e_l, alpha_hint_);
  if (std::sin(current.beta) >= kDegenerateSinBeta) alpha_hint_ = current.alpha;
  const double alpha_c = alpha_hint_;
  const Vec2 tau = cvim_forcing(F, e_l, plane_normal({alpha_c, current.beta}), L, quad_mass_);
  state_ = cvim_step(state_, tau, ref.length, params_, quad_mass_, hook_mass_, dt);

  AdmittanceOutput out;
  out.forcing.head<2>() = tau;
  const double beta_v = ref.attitude.beta;
  out.e_ac = admittance_error(beta_v, beta_v + state_.zeta.x(), alpha_c, ref.length);
  out.shaping = command_shaping(out.e_ac, state_.zeta.y(), state_.acc, params_.shaping, dt);
  out.desired = desired_motion(ref, out.shaping.position_offset, out.shaping.length_offset,
                               min_length_, max_length_);
  return out;
}

SvimController::SvimController(SvimParams params, double quad_mass, double hook_mass,
                               double min_length, double max_length)
    : params_(std::move(params)),
      quad_mass_(quad_mass),
      hook_mass_(hook_mass),
      min_length_(min_length),
      max_length_(max_length) {
  params_.validate();
}

AdmittanceOutput SvimController::update(double tension, const Vec3& e_l,
                                        const ReferenceSample& ref, double dt) {
  AdmittanceOutput out;
  out.forcing = svim_forcing(tension, e_l) -
                svim_forcing(ref.tension, cable_direction(ref.attitude));
  state_ = svim_step(state_, out.forcing, params_, quad_mass_, hook_mass_, dt);
  out.shaping = svim_shaping(state_.zeta.head<3>(), state_.zeta(3), state_.acc, params_.shaping, dt);
  out.desired = desired_motion(ref, out.shaping.position_offset, out.shaping.length_offset,
                               min_length_, max_length_);
  return out;
}

}  // namespace clt
