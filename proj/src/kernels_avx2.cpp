#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "clt/kernels.hpp"

namespace clt::kernels::detail {

namespace {

// Lane-wise running best, reduced so that ties resolve to the lowest index.
struct LaneBest {
  __m256d score = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  __m256d index = _mm256_set1_pd(-1.0);

  void offer(__m256d s, __m256d idx) {
    const __m256d gt = _mm256_cmp_pd(s, score, _CMP_GT_OQ);
    score = _mm256_blendv_pd(score, s, gt);
    index = _mm256_blendv_pd(index, idx, gt);
  }
};

}  // namespace

MuScanResult scan_mu_grid_avx2(const MuTerms& m, const double* g, std::size_t n) {
  const double base2 = m.b_min - 0.5 * m.mdot_max;
  const double p = m.k_min * m.k_min / m.m_max;
  const double q = m.k_max * m.k_max * m.k_max / m.m_min;
  const std::size_t n4 = n & ~std::size_t{3};
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);

  LaneBest lanes;
  MuScanResult tail{-std::numeric_limits<double>::infinity(), SIZE_MAX};
  for (std::size_t i = 0; i < n; ++i) {
    const double eps = g[i];
    if (!(eps < m.eps_upper)) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const double eta1 = g[j];
      const double c2 = base2 - eps * m.k_max - eps / (2.0 * eta1);
      const double c1 = eps * p - 2.0 * eps * eta1 * q;
      const __m256d c1v = _mm256_set1_pd(c1);
      for (std::size_t k = 0; k < n; ++k) {
        const double mu2 = c2 - 0.5 * g[k];
        const __m256d mu2v = _mm256_set1_pd(mu2);
        const std::size_t row = ((i * n + j) * n + k) * n;
        const __m256d rowv = _mm256_set1_pd(static_cast<double>(row));
        for (std::size_t l = 0; l < n4; l += 4) {
          const __m256d mu1 = _mm256_sub_pd(c1v, _mm256_mul_pd(half, _mm256_loadu_pd(g + l)));
          const __m256d score = _mm256_min_pd(mu1, mu2v);
          const __m256d idx = _mm256_add_pd(rowv, _mm256_add_pd(_mm256_set1_pd(static_cast<double>(l)), lane));
          lanes.offer(score, idx);
        }
        for (std::size_t l = n4; l < n; ++l) {
          const double score = std::min(c1 - 0.5 * g[l], mu2);
          if (score > tail.score) tail = {score, row + l};
        }
      }
    }
  }

  alignas(32) double s[4], ix[4];
  _mm256_store_pd(s, lanes.score);
  _mm256_store_pd(ix, lanes.index);
  MuScanResult best = tail;
  for (int k = 0; k < 4; ++k) {
    if (ix[k] < 0.0) continue;
    const auto idx = static_cast<std::size_t>(ix[k]);
    if (s[k] > best.score || (s[k] == best.score && idx < best.index)) best = {s[k], idx};
  }
  return best;
}

void classify_routh_hurwitz_avx2(const double* kp, const double* ki, const double* kd,
                                 std::uint8_t* out, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d p = _mm256_loadu_pd(kp + i);
    const __m256d c = _mm256_loadu_pd(ki + i);
    const __m256d d = _mm256_loadu_pd(kd + i);
    __m256d ok = _mm256_and_pd(_mm256_cmp_pd(p, zero, _CMP_GT_OQ), _mm256_cmp_pd(c, zero, _CMP_GT_OQ));
    ok = _mm256_and_pd(ok, _mm256_cmp_pd(d, zero, _CMP_GT_OQ));
    const __m256d margin = _mm256_sub_pd(_mm256_mul_pd(d, p), c);
    ok = _mm256_and_pd(ok, _mm256_cmp_pd(margin, zero, _CMP_GT_OQ));
    const int bits = _mm256_movemask_pd(ok);
    for (int k = 0; k < 4; ++k) out[i + k] = static_cast<std::uint8_t>((bits >> k) & 1);
  }
  classify_routh_hurwitz_scalar(kp + i, ki + i, kd + i, out + i, n - i);
}

EnvelopeMin envelope_margin_avx2(const double* env, const double* val, std::size_t n) {
  __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256d best_idx = _mm256_set1_pd(-1.0);
  const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d m = _mm256_sub_pd(_mm256_loadu_pd(env + i), _mm256_loadu_pd(val + i));
    const __m256d lt = _mm256_cmp_pd(m, best, _CMP_LT_OQ);
    best = _mm256_blendv_pd(best, m, lt);
    best_idx = _mm256_blendv_pd(best_idx, _mm256_add_pd(_mm256_set1_pd(static_cast<double>(i)), lane), lt);
  }
  EnvelopeMin r = envelope_margin_scalar(env + i, val + i, n - i);
  if (n - i > 0) r.index += i;
  alignas(32) double s[4], ix[4];
  _mm256_store_pd(s, best);
  _mm256_store_pd(ix, best_idx);
  for (int k = 0; k < 4; ++k) {
    if (ix[k] < 0.0) continue;
    const auto idx = static_cast<std::size_t>(ix[k]);
    if (s[k] < r.margin || (s[k] == r.margin && idx < r.index)) r = {s[k], idx};
  }
  return r;
}

}  // namespace clt::kernels::detail
