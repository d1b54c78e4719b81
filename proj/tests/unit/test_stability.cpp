#include <cmath>
#include <random>

#include "clt/admittance.hpp"
#include "clt/stability.hpp"
#include "doctest.h"

using namespace clt;

namespace {
constexpr double kMq = 2.1, kMh = 0.012;

// Forced CVIM trajectory with a time-varying virtual length.
std::vector<TrajectoryPoint> forced_run(const CertificationInputs& in, std::uint64_t seed,
                                        double t_force, double t_end) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ph(0.0, 6.283), fr(0.1, 2.0);
  const double p1 = ph(rng), p2 = ph(rng), w1 = 6.283 * fr(rng), w2 = 6.283 * fr(rng);
  CvimParams p;
  p.k_beta = in.k_beta;
  p.k_length = in.k_length;
  ImpedanceState s;
  std::vector<TrajectoryPoint> out;
  const double dt = 0.01;
  const double mid = 0.5 * (in.Lv_min + in.Lv_max), amp = 0.5 * (in.Lv_max - in.Lv_min);
  for (int k = 0; k * dt <= t_end; ++k) {
    const double t = k * dt;
    const double Lv = mid + amp * std::sin(in.V_L / amp * t);
    Vec2 tau = Vec2::Zero();
    if (t < t_force) tau = Vec2(std::sin(w1 * t + p1), std::sin(w2 * t + p2)) * std::sqrt(2.0);
    out.push_back({t, (Vec4() << s.zeta, s.zeta_rate).finished(), tau});
    s = cvim_step(s, tau, Lv, p, kMq, kMh, dt);
  }
  return out;
}
}  // namespace

TEST_CASE("epsilon_bound arithmetic and scaling") {
  CHECK(epsilon_bound(kMq, kMh, 0.1, 1.0, 10.0) == doctest::Approx(0.01587).epsilon(1e-3));
  CHECK(epsilon_bound(kMq, kMh, 0.1, 1e12, 10.0) < 1e-6);
  const double a = std::sqrt(kMq * kMh * 0.01 / 1000.0);
  CHECK(epsilon_bound(kMq, kMh, 0.1, 1000.0, 0.01) == doctest::Approx(a));
  CHECK(epsilon_bound(kMq, kMh, 0.2, 1000.0, 0.01) == doctest::Approx(2.0 * a));
}

TEST_CASE("Q matrices: below, above, and at zero epsilon") {
  const double eb = epsilon_bound(kMq, kMh, 0.1, 1.0, 10.0);
  CHECK(q_matrices_pd(0.99 * eb, 1.0, 10.0, kMq, kMh, 0.1).positive_definite);
  CHECK_FALSE(q_matrices_pd(2.0 * eb, 1.0, 10.0, kMq, kMh, 0.1).positive_definite);
  const auto z = q_matrices_pd(0.0, 1.0, 10.0, kMq, kMh, 0.1);
  CHECK(z.positive_definite);
  CHECK(z.min_eig_beta == doctest::Approx(kMq * kMh * 0.01));
}

TEST_CASE("Gamma is positive for any tuple") {
  const auto b = lyapunov_bounds(CertificationInputs{});
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-4.0, 0.0);
  for (int i = 0; i < 100; ++i) {
    const auto m = mu_coefficients(b, std::pow(10.0, u(rng)), std::pow(10.0, u(rng)),
                                   std::pow(10.0, u(rng)), std::pow(10.0, u(rng)));
    CHECK(m.gamma > 0.0);
  }
}

TEST_CASE("default inputs are feasible and re-check independently") {
  const CertificationInputs in;
  const auto s = lyapunov_constants(in);
  REQUIRE(s.feasible);
  CHECK(s.mu.mu1 > 0.0);
  CHECK(s.mu.mu2 > 0.0);
  CHECK(s.lambda2 >= s.lambda1);
  CHECK(s.c1 > 0.0);
  CHECK(s.c2 >= s.c1);
  // Independent evaluation of the printed inequalities.
  const double m_min = std::min(kMq * kMh * in.Lv_min * in.Lv_min, kMh);
  const double m_max = std::max(kMq * kMh * in.Lv_max * in.Lv_max, kMh);
  const double k_min = std::min(in.k_beta, in.k_length), k_max = std::max(in.k_beta, in.k_length);
  const double mdot = 2 * kMq * kMh * in.Lv_max * in.V_L;
  CHECK(2 * std::sqrt(m_min * k_min) >
        0.5 * mdot + s.eps * k_max + s.eps / (2 * s.eta1) + s.eta2 / 2);
  CHECK(s.eps * k_min * k_min / m_max > 2 * s.eps * s.eta1 * k_max * k_max * k_max / m_min + s.eta3 / 2);
  CHECK(s.eps < epsilon_bound(kMq, kMh, in.Lv_min, in.k_beta, in.k_length));
  MESSAGE("eps " << s.eps << " eta " << s.eta1 << " " << s.eta2 << " " << s.eta3 << " mu1 "
                 << s.mu.mu1 << " mu2 " << s.mu.mu2 << " lambda1 " << s.lambda1 << " lambda2 "
                 << s.lambda2);
}

TEST_CASE("inflating V_L eventually makes the setup infeasible") {
  CertificationInputs in;
  bool was_feasible = true, flipped = false;
  GridSpec coarse;
  coarse.points = 21;
  for (double v = 0.01; v < 100.0; v *= 2.0) {
    in.V_L = v;
    const bool f = lyapunov_constants(in, coarse).feasible;
    if (!f) flipped = true;
    if (f && !was_feasible) FAIL("feasibility is not monotone in V_L");
    was_feasible = f;
    if (f) {
      const auto b = lyapunov_bounds(in);
      CHECK(0.5 * b.mdot_max < b.b_min);
    }
  }
  CHECK(flipped);
}

TEST_CASE("Lyapunov value bounds") {
  const CertificationInputs in;
  const auto s = lyapunov_constants(in);
  CHECK(lyapunov_value(Vec2::Zero(), Vec2::Zero(), 0.5, s.eps, Vec2(0.5, 2.5), kMq, kMh) == 0.0);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0), l(in.Lv_min, in.Lv_max);
  for (int i = 0; i < 1000; ++i) {
    const Vec2 z(u(rng), u(rng)), zd(u(rng), u(rng));
    const double v = lyapunov_value(z, zd, l(rng), s.eps, Vec2(in.k_beta, in.k_length), kMq, kMh);
    const double n2 = z.squaredNorm() + zd.squaredNorm();
    CHECK(v >= s.c1 * n2 * (1 - 1e-12));
    CHECK(v <= s.c2 * n2 * (1 + 1e-12));
  }
  const Vec2 z(0.3, -0.2), zd(0.1, 0.4);
  const Vec2 m = cvim_inertia(0.5, kMq, kMh);
  CHECK(lyapunov_value(z, zd, 0.5, 0.0, Vec2(0.5, 2.5), kMq, kMh) ==
        doctest::Approx(0.5 * (0.5 * 0.09 + 2.5 * 0.04) + 0.5 * (m(0) * 0.01 + m(1) * 0.16)));
}

TEST_CASE("ISS envelope: trivial and a few forced runs") {
  const CertificationInputs in;
  const auto s = lyapunov_constants(in);
  std::vector<TrajectoryPoint> rest(50);
  for (int i = 0; i < 50; ++i) rest[i].t = 0.01 * i;
  CHECK(verify_iss_envelope(rest, s).pass);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto traj = forced_run(in, seed, 20.0, 30.0);
    const auto c = verify_iss_envelope(traj, s);
    CHECK(c.pass);
    const auto fit = fit_decay_rate(traj, 20.0);
    CHECK(fit.rate >= s.lambda2);
  }
}

TEST_CASE("decay fit recovers a known rate") {
  std::vector<TrajectoryPoint> tr;
  for (int i = 0; i < 100; ++i) {
    TrajectoryPoint p;
    p.t = 0.1 * i;
    p.z(0) = 3.0 * std::exp(-0.7 * p.t);
    tr.push_back(p);
  }
  CHECK(fit_decay_rate(tr, 0.0).rate == doctest::Approx(1.4));
}

TEST_CASE("shaping bound: zero history and constant worst case") {
  ShapingGains g;
  const auto z = verify_shaping_bounds({}, {}, {}, {}, g, 0.01);
  CHECK(z.pass);
  const double dt = 0.01;
  std::vector<Vec3> e, dx;
  std::vector<double> dl, dlb;
  ShapingAccumulators acc;
  for (int i = 0; i < 50000; ++i) {
    const auto out = command_shaping(Vec3(0.2, 0, 0), 0.1, acc, g, dt);
    e.push_back(Vec3(0.2, 0, 0));
    dl.push_back(0.1);
    dx.push_back(out.position_offset);
    dlb.push_back(out.length_offset);
  }
  const auto r = verify_shaping_bounds(e, dl, dx, dlb, g, dt);
  CHECK(r.pass);
  const double cont = g.xi1.maxCoeff() * 0.2 + g.xi2.maxCoeff() * 0.2 / std::abs(std::log(g.gamma));
  CHECK(dx.back().norm() < cont + g.xi2.maxCoeff() * 0.2 * dt);
  CHECK(dx.back().norm() > 0.999 * (g.xi1.x() * 0.2 + g.xi2.x() * 0.2 / std::abs(std::log(g.gamma))));
  // A corrupted output above the bound is caught.
  dx[100] *= 10.0;
  CHECK_FALSE(verify_shaping_bounds(e, dl, dx, dlb, g, dt).pass);
}
