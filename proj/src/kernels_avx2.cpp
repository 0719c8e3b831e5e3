// Compiled with -mavx2; selected at runtime only on CPUs that support it.
#include "engine_kernels.hpp"

namespace bmcx::kernels {

bool avx2_kernels_present() { return true; }

void run_chunk_avx2(const KernelCtx& c, std::uint64_t first, std::uint64_t count, PathRecord* out,
                    std::vector<double>* grid) {
  run_chunk_impl<simd::pack4d>(c, first, count, out, grid);
}

void wos_chunk_avx2(const KernelCtx& c, std::uint64_t first, std::uint64_t count, PathRecord* out,
                    std::vector<double>*) {
  wos_chunk_impl<simd::pack4d>(c, first, count, out);
}

}  // namespace bmcx::kernels
