// Used when the toolchain or target cannot build the AVX2 translation unit.
#include "kernels_api.hpp"

namespace bmcx::kernels {

bool avx2_kernels_present() { return false; }

void run_chunk_avx2(const KernelCtx&, std::uint64_t, std::uint64_t, PathRecord*,
                    std::vector<double>*) {
  fail(errc::bad_config, "AVX2 kernels not built");
}

void wos_chunk_avx2(const KernelCtx&, std::uint64_t, std::uint64_t, PathRecord*,
                    std::vector<double>*) {
  fail(errc::bad_config, "AVX2 kernels not built");
}

}  // namespace bmcx::kernels
