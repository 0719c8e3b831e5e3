#include "engine_kernels.hpp"

namespace bmcx::kernels {

void run_chunk_scalar(const KernelCtx& c, std::uint64_t first, std::uint64_t count,
                      PathRecord* out, std::vector<double>* grid) {
  run_chunk_impl<double>(c, first, count, out, grid);
}

void wos_chunk_scalar(const KernelCtx& c, std::uint64_t first, std::uint64_t count,
                      PathRecord* out, std::vector<double>*) {
  wos_chunk_impl<double>(c, first, count, out);
}

}  // namespace bmcx::kernels
