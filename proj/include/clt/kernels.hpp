#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace clt::kernels {

/// Constants of the two Lyapunov positivity margins that do not depend on
/// the searched (eps, eta1, eta2, eta3) tuple.
struct MuTerms {
  double b_min;     // 2 sqrt(m_min k_min)
  double mdot_max;
  double k_min, k_max, m_min, m_max;
  double eps_upper;  // tuples with eps >= eps_upper are skipped
};

/// Best tuple by min(mu1, mu2) over grid^4; ties keep the lowest linear
/// index (eps major, eta3 minor).
struct MuScanResult {
  double score;
  std::size_t index;  // linear index, or SIZE_MAX if every eps was skipped
};

struct EnvelopeMin {
  double margin;
  std::size_t index;
};

struct KernelTable {
  std::string_view name;
  MuScanResult (*scan_mu_grid)(const MuTerms& terms, const double* grid, std::size_t n);
  /// out[i] = 1 if s^3 + kd s^2 + kp s + ki is Hurwitz by the Routh conditions.
  void (*classify_routh_hurwitz)(const double* kp, const double* ki, const double* kd,
                                 std::uint8_t* out, std::size_t n);
  /// min_i (envelope[i] - value[i]), first index of the minimum.
  EnvelopeMin (*envelope_margin)(const double* envelope, const double* value, std::size_t n);
};

const KernelTable& scalar_table();
/// nullptr when the AVX2 variants were not built or the CPU lacks AVX2.
const KernelTable* avx2_table();
/// AVX2 when available, scalar otherwise.
const KernelTable& active();

namespace detail {
MuScanResult scan_mu_grid_scalar(const MuTerms& terms, const double* grid, std::size_t n);
void classify_routh_hurwitz_scalar(const double* kp, const double* ki, const double* kd,
                                   std::uint8_t* out, std::size_t n);
EnvelopeMin envelope_margin_scalar(const double* envelope, const double* value, std::size_t n);
#if defined(CLT_HAVE_AVX2_KERNELS)
MuScanResult scan_mu_grid_avx2(const MuTerms& terms, const double* grid, std::size_t n);
void classify_routh_hurwitz_avx2(const double* kp, const double* ki, const double* kd,
                                 std::uint8_t* out, std::size_t n);
EnvelopeMin envelope_margin_avx2(const double* envelope, const double* value, std::size_t n);
#endif
}  // namespace detail

}  // namespace clt::kernels
