#include "clt/scenario.hpp"

#include <cmath>

#include "clt/admittance.hpp"
#include "clt/estimation.hpp"
#include "clt/operator_model.hpp"
#include "clt/plant.hpp"
#include "clt/tracking.hpp"

namespace clt {

namespace {

NominalMasses masses_of(const PlantParams& p) { return {p.quad_mass, p.hook_mass, p.gravity}; }

bool finite(const Vec3& v) { return v.allFinite(); }

void check_workspace(const ScenarioConfig& c, const Vec3& x, double t) {
  const Vec3 half = 0.5 * c.workspace.divergence_scale * c.workspace.size;
  const Vec3 d = (x - c.workspace.center).cwiseAbs();
  if (!x.allFinite() || (d.array() > half.array()).any())
    throw DivergenceError("vehicle left the workspace bound at t = " + std::to_string(t));
}

}  // namespace

std::unique_ptr<VirtualReference> make_reference(const ScenarioConfig& c) {
  const NominalMasses m = masses_of(c.plant);
  if (c.task == Task::transporting) {
    LineReference::Profile p;
    p.start = c.start_position;
    p.direction = Vec3::UnitX();
    p.length = c.line_length;
    p.speed = c.line_speed;
    p.blend_time = c.line_blend;
    p.start_time = c.line_start_time;
    p.cable_length = c.reference_length();
    return std::make_unique<LineReference>(p, m);
  }
  return std::make_unique<HoverReference>(c.start_position, c.reference_length(), m);
}

RunLog run_scenario(const ScenarioConfig& config) {
  config.validate();
  RunLog log;
  log.config = config;
  if (config.operator_jitter > 0.0 && config.op.profile != OperatorProfile::none)
    log.config.op = jitter_operator(config.op, config.seed, config.operator_jitter);
  const ScenarioConfig& c = log.config;
  log.config_hash = config_hash(config);
  log.seed = c.seed;

  // Controllers and estimator use the nominal plant; the truth plant also
  // carries the payload on the hook.
  const PlantParams& pp = c.plant;
  PlantParams truth = pp;
  const double m_load = payload_mass(c.op);
  truth.hook_mass += m_load;
  const auto reference = make_reference(c);
  const ReferenceSample ref0 = reference->at(c.t0);
  PlantState state = PlantState::hover(ref0.position, ref0.length);

  const OperatorModel op(c.op, state.hook_position(), reference.get(), pp.gravity);
  const ContactForceFn contact = [&op](double t, const PlantState& s) { return op.force(t, s); };

  SensorSimulator sensors(c.estimation.noise, c.seed);
  EstimatorConfig ecfg;
  ecfg.window = c.estimation.window;
  ecfg.lag = c.estimation.lag;
  ecfg.hook_mass = pp.hook_mass;
  ecfg.gravity = pp.gravity;
  ecfg.tension_model = c.estimation.tension_model;
  ForceEstimator estimator(ecfg);

  CvimController cvim(c.cvim_params(), pp.quad_mass, pp.hook_mass, pp.min_length, pp.max_length);
  SvimController svim(c.svim_params(), pp.quad_mass, pp.hook_mass, pp.min_length, pp.max_length);
  QuadTracker tracker(c.tracking, pp);
  CablePid winch(c.cable_pid, c.winch_accel_limit, pp.min_length, pp.max_length);

  const int ctrl_div = c.control_divider();
  const int lc_div = c.loadcell_divider();
  const double dt_c = ctrl_div * c.dt;
  const long steps = std::lround((c.tf - c.t0) / c.dt);

  PlantInputs inputs;
  inputs.thrust = truth.total_mass() * pp.gravity.norm();  // hover trim until the first attitude step
  TrackingOutput attitude;
  AdmittanceOutput adm;
  const auto tension_at = [&](double t, const PlantState& s) {
    PlantInputs in = inputs;
    in.contact_force = op.force(t, s);
    return std::max(0.0, coupled_derivative(s, in, truth).tension);
  };
  // Interaction force in the nominal-hook sense: hand plus payload weight and inertia.
  const auto interaction_at = [&](double t, const PlantState& s) -> Vec3 {
    PlantInputs in = inputs;
    in.contact_force = op.force(t, s);
    if (m_load == 0.0) return in.contact_force;
    const auto d = coupled_derivative(s, in, truth);
    return in.contact_force + m_load * (pp.gravity - hook_acceleration(s, d));
  };
  double last_tension = 0.0;
  bool have_tension = false;
  LogRow row;
  RunChecks& chk = log.checks;
  const double force_cap = c.op.max_force * (1.0 + 1e-12);

  for (long k = 0; k <= steps; ++k) {
    const double t = c.t0 + static_cast<double>(k) * c.dt;
    const bool control = (k % ctrl_div) == 0;
    if (control) {
      const ReferenceSample ref = reference->at(t);
      const Vec3 hook = state.hook_position();
      if (!have_tension) last_tension = tension_at(t, state);
      if (k % lc_div == 0) estimator.push_loadcell(sensors.loadcell(t, last_tension));
      estimator.push_mocap(sensors.mocap(t, state.quad.position, hook));
      const double L_meas = sensors.encoder(t, state.length).length;
      const ForceEstimate& est = estimator.latest();
      const Vec3 F_hand = op.force(t, state);
      const Vec3 F_true = interaction_at(t, state);

      Vec3 F_used, e_used;
      double f_used;
      if (c.estimation.truth_force) {
        F_used = F_true;
        e_used = state.cable_dir;
        f_used = last_tension;
      } else {
        F_used = est.valid ? est.contact_force : Vec3::Zero();
        e_used = estimator.current_direction();
        f_used = est.valid ? est.tension : ref.tension;
      }

      if (c.controller == Controller::CVIM) {
        adm = cvim.update(F_used, e_used, L_meas, ref, dt_c);
        log.shaping_in_position.push_back(adm.e_ac);
        log.shaping_in_length.push_back(cvim.state().zeta.y());
        TrajectoryPoint tp;
        tp.t = t;
        tp.z << cvim.state().zeta, cvim.state().zeta_rate;
        tp.tau = adm.forcing.head<2>();
        log.impedance.push_back(tp);
      } else {
        adm = svim.update(f_used, e_used, ref, dt_c);
        log.shaping_in_position.push_back(svim.state().zeta.head<3>());
        log.shaping_in_length.push_back(svim.state().zeta(3));
      }
      log.shaping_out_position.push_back(adm.shaping.position_offset);
      log.shaping_out_length.push_back(adm.shaping.length_offset);

      TrackingTarget target;
      target.position = adm.desired.position;
      target.velocity = ref.velocity;
      target.acceleration = ref.acceleration;
      CableFeedforward ff;
      ff.e_l = state.cable_dir;
      ff.omega = state.cable_omega;
      ff.length = state.length;
      ff.length_accel = inputs.cable_accel;
      const ForceCommand& cmd = tracker.update_position(state.quad, target, ff, dt_c);
      inputs.cable_accel = winch.update(L_meas, state.length_rate, adm.desired.length,
                                        ref.length_rate, dt_c);
      chk.max_tracking_error = std::max(chk.max_tracking_error, cmd.position_error.norm());

      const CableState cs = state.cable();
      row = {};
      row.t = t;
      row.xq = state.quad.position;
      row.vq = state.quad.velocity;
      row.alpha = cs.attitude.alpha;
      row.beta = cs.attitude.beta;
      row.L = state.length;
      row.L_dot = state.length_rate;
      row.Fc = F_true;
      row.Fc_hat = est.valid ? est.contact_force : Vec3::Zero();
      row.f_T_hat = est.valid ? est.tension : 0.0;
      row.xqd = adm.desired.position;
      row.L_d = adm.desired.length;
      if (c.controller == Controller::CVIM) {
        row.e_ac_norm = adm.e_ac.norm();
        row.dzeta_beta = cvim.state().zeta.x();
        row.dzeta_L = cvim.state().zeta.y();
      } else {
        row.dzeta_L = svim.state().zeta(3);
      }
      log.hook_path.push_back(hook);
      log.reference_path.push_back(ref.position);

      chk.max_contact_force = std::max(chk.max_contact_force, F_hand.norm());
      if (F_hand.norm() > force_cap) chk.contact_force_bounded = false;
      chk.max_beta = std::max(chk.max_beta, cs.attitude.beta);
      if (!(cs.attitude.beta < 0.5 * 3.14159265358979323846)) chk.beta_below_horizontal = false;
    }

    attitude = tracker.update_attitude(state.quad);
    inputs.thrust = attitude.thrust;
    inputs.body_torque = attitude.torque;
    if (attitude.thrust_saturated) ++chk.thrust_saturated_steps;

    if (control) {
      // Tension at the start of this step, with the inputs just applied.
      row.f_T = tension_at(t, state);
      row.T_thrust = inputs.thrust;
      if (!(finite(row.xq) && finite(row.vq) && std::isfinite(row.f_T))) chk.finite = false;
      log.rows.push_back(row);
    }
    if (k == steps) break;

    StepReport rep;
    state = integrate_step(state, inputs, truth, c.dt, t, contact, &rep);
    if (rep.slack) ++chk.slack_steps;
    if (rep.length_limited) ++chk.length_limited_steps;
    last_tension = tension_at(t + c.dt, state);
    have_tension = true;
    check_workspace(c, state.quad.position, t + c.dt);
  }
  return log;
}

}  // namespace clt
