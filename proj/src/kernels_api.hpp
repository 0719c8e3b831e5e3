#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bmcx/engine.hpp"

// Internal task description consumed by the step kernels. One instantiation
// runs with scalar lanes, the other with AVX2 packs; both execute the same
// per-lane arithmetic.
namespace bmcx::kernels {

enum class StopKind { domain_exit, winding_target, horizon };

enum class AccKind {
  none,
  chart_linear,
  chart_square_one_plus,
  chart_square,  // f(z) = z^2
  lap_zero,
  lap_four,
  lap_custom,
  disk_indicator
};

struct KernelCtx {
  const Domain* domain = nullptr;  // null for free motion
  double start_x = 0.0, start_y = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t max_steps = 10000000;
  double dt_max = 1e-3;
  double cfac = 0.1;
  double eps = 1e-4;

  StopKind stop = StopKind::domain_exit;
  double wind_target = 0.0;
  double horizon = 0.0;

  bool track_winding = false;
  bool wind_cap = false;  // cap dt by wind_factor * |z - mark|^2
  double mark_x = 0.0, mark_y = 0.0;
  double wind_factor = 0.1;

  AccKind acc = AccKind::none;
  double chart_c2 = 1.0;  // |c|^2 for the linear chart
  double indicator_r2 = 0.0;
  const std::function<double(cplx)>* lap_fn = nullptr;

  bool has_grid = false;
  bool grid_on_chart = false;  // grid indexed by f(position), weighted by |f'|^2
  double gx0 = 0.0, gy0 = 0.0, gcell = 0.1;
  int gnx = 0, gny = 0;
  double grid_dt_cap = 1e-3;
};

using ChunkFn = void (*)(const KernelCtx&, std::uint64_t first, std::uint64_t count,
                         PathRecord* out, std::vector<double>* grid);

// walk kernels (adaptive-step Brownian stepping)
void run_chunk_scalar(const KernelCtx&, std::uint64_t, std::uint64_t, PathRecord*,
                      std::vector<double>*);
// walk-on-spheres kernels
void wos_chunk_scalar(const KernelCtx&, std::uint64_t, std::uint64_t, PathRecord*,
                      std::vector<double>*);

bool avx2_kernels_present();
void run_chunk_avx2(const KernelCtx&, std::uint64_t, std::uint64_t, PathRecord*,
                    std::vector<double>*);
void wos_chunk_avx2(const KernelCtx&, std::uint64_t, std::uint64_t, PathRecord*,
                    std::vector<double>*);

}  // namespace bmcx::kernels
