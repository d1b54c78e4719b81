#include <cmath>
#include <cstring>
#include <random>

#include "clt/kernels.hpp"
#include "clt/stability.hpp"
#include "doctest.h"

using namespace clt;

namespace {

std::vector<const kernels::KernelTable*> tables() {
  std::vector<const kernels::KernelTable*> t{&kernels::scalar_table()};
  if (kernels::avx2_table()) t.push_back(kernels::avx2_table());
  return t;
}

kernels::MuTerms terms_for(const CertificationInputs& in) {
  const auto b = lyapunov_bounds(in);
  return {b.b_min, b.mdot_max, b.k_min, b.k_max, b.m_min, b.m_max,
          epsilon_bound(in.quad_mass, in.hook_mass, in.Lv_min, in.k_beta, in.k_length)};
}

}  // namespace

TEST_CASE("active table is reported") {
  MESSAGE("active kernels: " << kernels::active().name);
  CHECK(!kernels::active().name.empty());
}

TEST_CASE("mu grid scan: SIMD equals scalar bit for bit") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> kb(0.2, 3.0), kl(0.5, 10.0), vl(0.0, 0.2);
  for (std::size_t n : {5u, 7u, 13u, 21u, 33u}) {
    CertificationInputs in;
    in.k_beta = kb(rng);
    in.k_length = kl(rng);
    in.V_L = vl(rng);
    GridSpec g;
    g.points = n;
    const auto grid = log_grid(g);
    const auto t = terms_for(in);
    const auto ref = kernels::scalar_table().scan_mu_grid(t, grid.data(), n);
    for (const auto* tab : tables()) {
      const auto r = tab->scan_mu_grid(t, grid.data(), n);
      CHECK(std::memcmp(&r.score, &ref.score, sizeof(double)) == 0);
      CHECK(r.index == ref.index);
    }
  }
}

TEST_CASE("mu grid scan: ties keep the lowest index") {
  // A flat grid makes every tuple score the same.
  std::vector<double> grid(6, 0.01);
  kernels::MuTerms t{1.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0};
  for (const auto* tab : tables()) {
    const auto r = tab->scan_mu_grid(t, grid.data(), grid.size());
    CHECK(r.index == 0);
  }
  // Every eps at or above the upper limit: nothing scanned.
  t.eps_upper = 1e-9;
  for (const auto* tab : tables()) CHECK(tab->scan_mu_grid(t, grid.data(), grid.size()).index == SIZE_MAX);
}

TEST_CASE("mu grid scan agrees with direct evaluation") {
  const CertificationInputs in;
  GridSpec g;
  g.points = 9;
  const auto grid = log_grid(g);
  const auto b = lyapunov_bounds(in);
  const double eb = epsilon_bound(in.quad_mass, in.hook_mass, in.Lv_min, in.k_beta, in.k_length);
  double best = -1e300;
  for (double e : grid) {
    if (!(e < eb)) continue;
    for (double a : grid)
      for (double c : grid)
        for (double d : grid) {
          const auto m = mu_coefficients(b, e, a, c, d);
          best = std::max(best, std::min(m.mu1, m.mu2));
        }
  }
  const auto r = kernels::scalar_table().scan_mu_grid(terms_for(in), grid.data(), grid.size());
  CHECK(r.score == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("Routh-Hurwitz batch: SIMD equals scalar") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 10.0);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 1001u}) {
    std::vector<double> kp(n), ki(n), kd(n);
    for (std::size_t i = 0; i < n; ++i) kp[i] = u(rng), ki[i] = u(rng), kd[i] = u(rng);
    if (n > 2) {
      kp[1] = 1.0, ki[1] = 2.0, kd[1] = 2.0;  // boundary case must fail
    }
    std::vector<std::uint8_t> a(n), b(n);
    kernels::scalar_table().classify_routh_hurwitz(kp.data(), ki.data(), kd.data(), a.data(), n);
    for (const auto* tab : tables()) {
      tab->classify_routh_hurwitz(kp.data(), ki.data(), kd.data(), b.data(), n);
      CHECK(a == b);
    }
    if (n > 2) CHECK(a[1] == 0);
  }
}

TEST_CASE("envelope margin: SIMD equals scalar with first-index ties") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 1003u}) {
    std::vector<double> env(n), val(n);
    for (std::size_t i = 0; i < n; ++i) env[i] = 1.0 + u(rng), val[i] = u(rng);
    const auto ref = kernels::scalar_table().envelope_margin(env.data(), val.data(), n);
    for (const auto* tab : tables()) {
      const auto r = tab->envelope_margin(env.data(), val.data(), n);
      CHECK(r.margin == ref.margin);
      CHECK(r.index == ref.index);
    }
  }
  std::vector<double> flat(9, 1.0), zero(9, 0.0);
  for (const auto* tab : tables()) CHECK(tab->envelope_margin(flat.data(), zero.data(), 9).index == 0);
}
