#include "clt/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "clt/kernels.hpp"

namespace clt {

namespace {

// Eigenvalues of the symmetric 2x2 [[a, b], [b, d]], ascending.
Vec2 sym2_eigenvalues(double a, double b, double d) {
  const double mean = 0.5 * (a + d);
  const double r = std::hypot(0.5 * (a - d), b);
  return {mean - r, mean + r};
}

}  // namespace

LyapunovBounds lyapunov_bounds(const CertificationInputs& in) {
  if (!(in.Lv_min > 0.0) || in.Lv_max < in.Lv_min || in.V_L < 0.0) {
    throw std::invalid_argument("virtual length bounds must satisfy 0 < min <= max, V_L >= 0");
  }
  if (!(in.k_beta > 0.0) || !(in.k_length > 0.0)) {
    throw std::invalid_argument("stiffness must be positive");
  }
  const double mm = in.quad_mass * in.hook_mass;
  LyapunovBounds b;
  b.m_min = std::min(mm * in.Lv_min * in.Lv_min, in.hook_mass);
  b.m_max = std::max(mm * in.Lv_max * in.Lv_max, in.hook_mass);
  b.k_min = std::min(in.k_beta, in.k_length);
  b.k_max = std::max(in.k_beta, in.k_length);
  b.mdot_max = 2.0 * mm * in.Lv_max * in.V_L;
  b.b_min = 2.0 * std::sqrt(b.m_min * b.k_min);
  b.b_max = 2.0 * std::sqrt(b.m_max * b.k_max);
  return b;
}

double epsilon_bound(double mq, double mh, double Lv_min, double k_beta, double k_length) {
  return std::min(std::sqrt(mq * mh * Lv_min * Lv_min / k_beta), std::sqrt(mh / k_length));
}

QMatrixCheck q_matrices_pd(double eps, double kb, double kl, double mq, double mh, double L_v) {
  QMatrixCheck r;
  r.min_eig_beta = sym2_eigenvalues(kb, eps * kb, mq * mh * L_v * L_v).x();
  r.min_eig_length = sym2_eigenvalues(kl, eps * kl, mh).x();
  r.positive_definite = r.min_eig_beta > 0.0 && r.min_eig_length > 0.0;
  return r;
}

MuCoefficients mu_coefficients(const LyapunovBounds& b, double eps, double eta1, double eta2,
                               double eta3) {
  MuCoefficients m;
  m.mu2_bar = b.b_min - 0.5 * b.mdot_max - eps * b.k_max - eps / (2.0 * eta1);
  m.mu1_bar = eps * b.k_min * b.k_min / b.m_max - 2.0 * eps * eta1 * std::pow(b.k_max, 3) / b.m_min;
  m.mu2 = m.mu2_bar - 0.5 * eta2;
  m.mu1 = m.mu1_bar - 0.5 * eta3;
  m.gamma = 1.0 / (2.0 * eta2) + eps * eps * b.k_max * b.k_max / (2.0 * eta3 * b.m_min * b.m_min);
  return m;
}

std::vector<double> log_grid(const GridSpec& g) {
  if (!(g.lo > 0.0) || !(g.hi > g.lo) || g.points < 2) throw std::invalid_argument("bad grid");
  std::vector<double> v(g.points);
  const double a = std::log10(g.lo), b = std::log10(g.hi);
  for (std::size_t i = 0; i < g.points; ++i) {
    v[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(g.points - 1));
  }
  return v;
}

void quadratic_form_bounds(double eps, const CertificationInputs& in, double& c1, double& c2) {
  const double mm = in.quad_mass * in.hook_mass;
  const Vec2 ql = sym2_eigenvalues(in.k_length, eps * in.k_length, in.hook_mass);
  double lo = ql.x(), hi = ql.y();
  constexpr int kSamples = 201;
  for (int i = 0; i < kSamples; ++i) {
    const double L = in.Lv_min + (in.Lv_max - in.Lv_min) * i / (kSamples - 1.0);
    const Vec2 qb = sym2_eigenvalues(in.k_beta, eps * in.k_beta, mm * L * L);
    lo = std::min(lo, qb.x());
    hi = std::max(hi, qb.y());
  }
  c1 = 0.5 * lo;
  c2 = 0.5 * hi;
}

LyapunovSetup evaluate_setup(const CertificationInputs& in, double eps, double eta1, double eta2,
                             double eta3) {
  LyapunovSetup s;
  s.inputs = in;
  s.eps = eps;
  s.eta1 = eta1;
  s.eta2 = eta2;
  s.eta3 = eta3;
  s.bounds = lyapunov_bounds(in);
  s.mu = mu_coefficients(s.bounds, eps, eta1, eta2, eta3);
  quadratic_form_bounds(eps, in, s.c1, s.c2);
  s.lambda1 = std::min(s.mu.mu1, s.mu.mu2) / s.c2;
  s.lambda2 = std::min(s.mu.mu1_bar, s.mu.mu2_bar) / s.c2;
  s.feasible = recheck_feasibility(s);
  return s;
}

LyapunovSetup lyapunov_constants(const CertificationInputs& in, const GridSpec& grid) {
  const LyapunovBounds b = lyapunov_bounds(in);
  const std::vector<double> g = log_grid(grid);
  kernels::MuTerms terms{b.b_min, b.mdot_max, b.k_min, b.k_max, b.m_min, b.m_max,
                         epsilon_bound(in.quad_mass, in.hook_mass, in.Lv_min, in.k_beta, in.k_length)};
  const auto best = kernels::active().scan_mu_grid(terms, g.data(), g.size());
  if (best.index == SIZE_MAX) {
    LyapunovSetup s;
    s.inputs = in;
    s.bounds = b;
    return s;
  }
  const std::size_t n = g.size();
  const std::size_t l = best.index % n, k = (best.index / n) % n, j = (best.index / (n * n)) % n,
                    i = best.index / (n * n * n);
  return evaluate_setup(in, g[i], g[j], g[k], g[l]);
}

bool recheck_feasibility(const LyapunovSetup& s) {
  const auto& in = s.inputs;
  if (!(s.eps > 0.0 && s.eta1 > 0.0 && s.eta2 > 0.0 && s.eta3 > 0.0)) return false;
  if (!(s.eps < epsilon_bound(in.quad_mass, in.hook_mass, in.Lv_min, in.k_beta, in.k_length))) {
    return false;
  }
  // Q matrices at both ends of the virtual length range, by determinants.
  const double mm = in.quad_mass * in.hook_mass;
  for (double L : {in.Lv_min, in.Lv_max}) {
    if (!(mm * L * L - s.eps * s.eps * in.k_beta > 0.0)) return false;
  }
  if (!(in.hook_mass - s.eps * s.eps * in.k_length > 0.0)) return false;

  const LyapunovBounds& b = s.bounds;
  const double lhs2 = 2.0 * std::sqrt(b.m_min * b.k_min);
  const double rhs2 = 0.5 * b.mdot_max + s.eps * b.k_max + s.eps / (2.0 * s.eta1) + 0.5 * s.eta2;
  const double lhs1 = s.eps * b.k_min * b.k_min / b.m_max;
  const double rhs1 = 2.0 * s.eps * s.eta1 * b.k_max * b.k_max * b.k_max / b.m_min + 0.5 * s.eta3;
  return lhs2 > rhs2 && lhs1 > rhs1 && s.c1 > 0.0 && s.c2 >= s.c1;
}

double lyapunov_value(const Vec2& z, const Vec2& zd, double L_v, double eps, const Vec2& K,
                      double mq, double mh) {
  const Vec2 m = cvim_inertia(L_v, mq, mh);
  return 0.5 * z.dot(K.cwiseProduct(z)) + 0.5 * zd.dot(m.cwiseProduct(zd)) +
         eps * z.dot(K.cwiseProduct(zd));
}

IssCertificate verify_iss_envelope(const std::vector<TrajectoryPoint>& traj,
                                   const LyapunovSetup& s) {
  IssCertificate c;
  c.setup = s;
  if (!s.feasible) return c;
  if (traj.empty()) {
    c.pass = true;
    return c;
  }
  const double t0 = traj.front().t;
  const double z0 = traj.front().z.squaredNorm();
  const double gain = s.mu.gamma / (s.lambda1 * s.c1);
  std::vector<double> env(traj.size()), val(traj.size());
  double sup_tau = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    sup_tau = std::max(sup_tau, traj[i].tau.squaredNorm());
    env[i] = s.c2 / s.c1 * std::exp(-s.lambda1 * (traj[i].t - t0)) * z0 + gain * sup_tau;
    val[i] = traj[i].z.squaredNorm();
  }
  const auto r = kernels::active().envelope_margin(env.data(), val.data(), env.size());
  c.margin.resize(env.size());
  for (std::size_t i = 0; i < env.size(); ++i) c.margin[i] = env[i] - val[i];
  c.min_margin = r.margin;
  c.worst_index = r.index;
  c.pass = r.margin >= 0.0;
  return c;
}

DecayFit fit_decay_rate(const std::vector<TrajectoryPoint>& traj, double t_c, double floor) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (const auto& p : traj) {
    const double v = p.z.squaredNorm();
    if (p.t < t_c || !(v > floor)) continue;
    const double x = p.t - t_c, y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  DecayFit f;
  f.samples = n;
  if (n < 2) return f;
  const double dn = static_cast<double>(n);
  const double slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
  f.rate = -slope;
  f.intercept = (sy - slope * sx) / dn;
  return f;
}

ShapingBoundReport verify_shaping_bounds(const std::vector<Vec3>& e_ac,
                                         const std::vector<double>& delta_L,
                                         const std::vector<Vec3>& dx,
                                         const std::vector<double>& dl, const ShapingGains& g,
                                         double dt) {
  const std::size_t n = e_ac.size();
  if (delta_L.size() != n || dx.size() != n || dl.size() != n) {
    throw std::invalid_argument("shaping histories must have equal length");
  }
  const double horizon = 1.0 / std::abs(std::log(g.gamma)) + dt;
  const double xi1 = g.xi1.cwiseAbs().maxCoeff(), xi2 = g.xi2.cwiseAbs().maxCoeff();
  ShapingBoundReport r;
  r.worst_position_slack = std::numeric_limits<double>::infinity();
  r.worst_length_slack = std::numeric_limits<double>::infinity();
  double sup_e = 0.0, sup_l = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sup_e = std::max(sup_e, e_ac[i].norm());
    sup_l = std::max(sup_l, std::abs(delta_L[i]));
    const double bx = xi1 * e_ac[i].norm() + xi2 * horizon * sup_e;
    const double bl = std::abs(g.xi3) * std::abs(delta_L[i]) + std::abs(g.xi4) * horizon * sup_l;
    // Relative roundoff allowance for the accumulated sums.
    r.worst_position_slack = std::min(r.worst_position_slack, bx * (1.0 + 1e-12) - dx[i].norm());
    r.worst_length_slack = std::min(r.worst_length_slack, bl * (1.0 + 1e-12) - std::abs(dl[i]));
  }
  if (n == 0) r.worst_position_slack = r.worst_length_slack = 0.0;
  r.pass = r.worst_position_slack >= 0.0 && r.worst_length_slack >= 0.0;
  return r;
}

}  // namespace clt
