#include "clt/kernels.hpp"

namespace clt::kernels {

const KernelTable& scalar_table() {
  static const KernelTable t{"scalar", detail::scan_mu_grid_scalar,
                             detail::classify_routh_hurwitz_scalar, detail::envelope_margin_scalar};
  return t;
}

const KernelTable* avx2_table() {
#if defined(CLT_HAVE_AVX2_KERNELS)
  static const KernelTable t{"avx2", detail::scan_mu_grid_avx2, detail::classify_routh_hurwitz_avx2,
                             detail::envelope_margin_avx2};
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &t : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  const KernelTable* a = avx2_table();
  return a ? *a : scalar_table();
}

}  // namespace clt::kernels
