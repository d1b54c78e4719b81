#include <algorithm>
#include <limits>

#include "clt/kernels.hpp"

namespace clt::kernels::detail {

MuScanResult scan_mu_grid_scalar(const MuTerms& m, const double* g, std::size_t n) {
  const double base2 = m.b_min - 0.5 * m.mdot_max;
  const double p = m.k_min * m.k_min / m.m_max;
  const double q = m.k_max * m.k_max * m.k_max / m.m_min;
  MuScanResult best{-std::numeric_limits<double>::infinity(), SIZE_MAX};
  for (std::size_t i = 0; i < n; ++i) {
    const double eps = g[i];
    if (!(eps < m.eps_upper)) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const double eta1 = g[j];
      const double c2 = base2 - eps * m.k_max - eps / (2.0 * eta1);
      const double c1 = eps * p - 2.0 * eps * eta1 * q;
      for (std::size_t k = 0; k < n; ++k) {
        const double mu2 = c2 - 0.5 * g[k];
        const std::size_t row = ((i * n + j) * n + k) * n;
        for (std::size_t l = 0; l < n; ++l) {
          const double mu1 = c1 - 0.5 * g[l];
          const double score = std::min(mu1, mu2);
          if (score > best.score) best = {score, row + l};
        }
      }
    }
  }
  return best;
}

void classify_routh_hurwitz_scalar(const double* kp, const double* ki, const double* kd,
                                   std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = kp[i] > 0.0 && ki[i] > 0.0 && kd[i] > 0.0 && kd[i] * kp[i] - ki[i] > 0.0;
  }
}

EnvelopeMin envelope_margin_scalar(const double* env, const double* val, std::size_t n) {
  EnvelopeMin r{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < n; ++i) {
    const double m = env[i] - val[i];
    if (m < r.margin) r = {m, i};
  }
  return r;
}

}  // namespace clt::kernels::detail
