#include "clt/certify.hpp"

#include <cmath>
#include <random>

#include "json.hpp"

namespace clt {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

std::vector<TrajectoryPoint> bounded_force_trial(const CertificationInputs& in,
                                                 const ShapingGains& shaping, std::uint64_t seed,
                                                 const TrialOptions& opt) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi), freq(0.05, opt.max_frequency),
      weight(0.2, 1.0);
  const int H = std::max(1, opt.harmonics);
  std::vector<double> w[2], ph[2], amp[2];
  for (int ch = 0; ch < 2; ++ch) {
    double total = 0.0;
    for (int h = 0; h < H; ++h) {
      w[ch].push_back(kTwoPi * freq(rng));
      ph[ch].push_back(phase(rng));
      amp[ch].push_back(weight(rng));
      total += amp[ch].back();
    }
    // Component bound force_bound / sqrt(2) keeps the vector norm within force_bound.
    for (double& a : amp[ch]) a *= opt.force_bound / std::sqrt(2.0) / total;
  }
  const double mid = 0.5 * (in.Lv_min + in.Lv_max);
  const double half = 0.5 * (in.Lv_max - in.Lv_min);
  const double wl = half > 0.0 ? in.V_L / half : 0.0;
  const double pl = phase(rng);

  CvimParams p;
  p.k_beta = in.k_beta;
  p.k_length = in.k_length;
  p.shaping = shaping;
  ImpedanceState s;
  s.zeta = opt.initial_zeta;
  std::vector<TrajectoryPoint> out;
  const long n = std::lround(opt.t_end / opt.dt);
  out.reserve(n + 1);
  for (long k = 0; k <= n; ++k) {
    const double t = k * opt.dt;
    Vec2 tau = Vec2::Zero();
    if (t < opt.force_off) {
      for (int ch = 0; ch < 2; ++ch)
        for (int h = 0; h < H; ++h) tau(ch) += amp[ch][h] * std::sin(w[ch][h] * t + ph[ch][h]);
    }
    TrajectoryPoint tp;
    tp.t = t;
    tp.z << s.zeta, s.zeta_rate;
    tp.tau = tau;
    out.push_back(tp);
    if (k == n) break;
    const double Lv = mid + half * std::sin(wl * t + pl);
    s = cvim_step(s, tau, Lv, p, in.quad_mass, in.hook_mass, opt.dt);
  }
  return out;
}

CertificationReport certify_cvim(const CertificationInputs& in, const ShapingGains& shaping,
                                 std::size_t n_seeds, std::uint64_t first_seed,
                                 const TrialOptions& opt) {
  CertificationReport r;
  r.setup = lyapunov_constants(in);
  r.recheck = r.setup.feasible && recheck_feasibility(r.setup);
  if (!r.setup.feasible) return r;
  r.min_decay_rate = HUGE_VAL;
  for (std::size_t i = 0; i < n_seeds; ++i) {
    TrialVerdict v;
    v.seed = first_seed + i;
    const auto traj = bounded_force_trial(in, shaping, v.seed, opt);
    const auto iss = verify_iss_envelope(traj, r.setup);
    v.min_margin = iss.min_margin;
    v.envelope_pass = iss.pass;
    const auto fit = fit_decay_rate(traj, opt.force_off);
    v.decay_rate = fit.rate;
    v.decay_pass = fit.samples >= 3 && fit.rate >= r.setup.lambda2;

    // Replay the shaping law on the trial's CVIM outputs at a fixed L^v.
    const double Lv = 0.5 * (in.Lv_min + in.Lv_max);
    ShapingAccumulators acc;
    std::vector<Vec3> e, dx;
    std::vector<double> dl_in, dl;
    for (const auto& p : traj) {
      const Vec3 eac = admittance_error(0.0, p.z(0), 0.0, Lv);
      const auto o = command_shaping(eac, p.z(1), acc, shaping, opt.dt);
      e.push_back(eac);
      dl_in.push_back(p.z(1));
      dx.push_back(o.position_offset);
      dl.push_back(o.length_offset);
    }
    v.shaping = verify_shaping_bounds(e, dl_in, dx, dl, shaping, opt.dt);

    r.envelope_passes += v.envelope_pass;
    r.decay_passes += v.decay_pass;
    r.shaping_passes += v.shaping.pass;
    r.min_decay_rate = std::min(r.min_decay_rate, v.decay_rate);
    r.trials.push_back(v);
  }
  r.pass = r.recheck && r.envelope_passes == n_seeds && r.decay_passes == n_seeds &&
           r.shaping_passes == n_seeds;
  return r;
}

std::string certificate_json(const CertificationReport& r) {
  using nlohmann::json;
  const auto& s = r.setup;
  json j;
  j["constants"] = {{"eps", s.eps},         {"eta1", s.eta1},       {"eta2", s.eta2},
                    {"eta3", s.eta3},       {"mu1", s.mu.mu1},      {"mu2", s.mu.mu2},
                    {"Gamma", s.mu.gamma},  {"mu1_bar", s.mu.mu1_bar}, {"mu2_bar", s.mu.mu2_bar},
                    {"c1", s.c1},           {"c2", s.c2},           {"lambda1", s.lambda1},
                    {"lambda2", s.lambda2}};
  j["feasible"] = s.feasible;
  j["recheck"] = r.recheck;
  j["trials"] = r.trials.size();
  j["envelope_passes"] = r.envelope_passes;
  j["decay_passes"] = r.decay_passes;
  j["shaping_passes"] = r.shaping_passes;
  j["min_decay_rate"] = r.trials.empty() ? 0.0 : r.min_decay_rate;
  double worst = HUGE_VAL;
  for (const auto& t : r.trials) worst = std::min(worst, t.min_margin);
  j["min_envelope_margin"] = r.trials.empty() ? 0.0 : worst;
  j["pass"] = r.pass;
  return j.dump(2);
}

CertificationInputs certification_inputs(const ScenarioConfig& c) {
  CertificationInputs in;
  in.quad_mass = c.plant.quad_mass;
  in.hook_mass = c.plant.hook_mass;
  in.k_beta = c.preset().k_beta;
  in.k_length = c.preset().k_length;
  return in;
}

}  // namespace clt
