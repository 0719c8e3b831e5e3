#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bmcx/domain.hpp"
#include "bmcx/rng.hpp"

namespace bmcx {

enum class SimdMode { auto_detect, scalar, avx2 };

// Monte Carlo controls. dt = min(dt_max, step_factor * d^2) with d the
// conservative distance to the boundary; exit is declared inside the
// boundary_tol shell; paths hitting max_steps are censored and reported.
struct SimConfig {
  std::uint64_t seed = 0;
  std::uint64_t n_paths = 10000;
  double dt_max = 1e-3;
  double step_factor = 0.1;
  double boundary_tol = -1.0;  // < 0: resolved to 1e-4 * scale
  std::uint64_t max_steps = 10000000;

  double resolved_eps(const Domain& dom, cplx start) const;
  void validate(const Domain* dom, cplx start) const;
};

struct PathRecord {
  std::uint64_t id = 0;
  cplx exit{0.0, 0.0};   // exit position (or last position when censored)
  double time = 0.0;     // exit time (or elapsed time when censored)
  double winding = 0.0;  // accumulated continuous argument about the mark
  double sup_abs = 0.0;  // running max of |B_t|
  double acc = 0.0;      // mode accumulator (time-change clock, Dynkin drift, ...)
  bool censored = false;
};

struct EstimatorResult {
  double mean = 0.0;
  double stderr_ = 0.0;  // sample std / sqrt(count)
  std::uint64_t count = 0;
  std::uint64_t censored = 0;
};

EstimatorResult summarize(const std::vector<double>& values, std::uint64_t censored = 0);

// Square-cell occupation grid; density estimates occupation time per unit
// area per path, i.e. the Green's function at the cell center.
struct OccGrid {
  double x0 = 0.0, y0 = 0.0;
  double cell = 0.1;
  int nx = 1, ny = 1;
  std::vector<double> density;

  static OccGrid around(cplx center, double halfwidth, int cells_per_side);
  int index(double x, double y) const;  // -1 when outside
  cplx cell_center(int ix, int iy) const;
  double value_at(cplx p) const;  // density of the cell containing p
};

// Levy time-change charts with vectorizable |f'|^2.
enum class Chart { none, linear, square_one_plus, square };  // f(z)=cz, (1+z)^2, z^2

// Test function for Dynkin residuals. Fast Laplacian kinds avoid per-step
// callbacks; `custom` evaluates lap_fn along the path.
struct DynkinFunc {
  std::function<double(cplx)> u;
  enum class Lap { zero, four, custom } lap = Lap::zero;
  std::function<double(cplx)> lap_fn;
};

class Engine {
 public:
  explicit Engine(SimdMode mode = SimdMode::auto_detect, int workers = 0);

  SimdMode mode() const { return mode_; }
  int workers() const { return workers_; }
  static bool avx2_available();

  // Brownian paths to the exit of `dom`, with optional occupation grid,
  // time-change chart or Dynkin accumulator, and winding tracking. With
  // grid_on_chart the grid lives in the chart's image plane and accumulates
  // the projected clock |f'|^2 dt, estimating the projected Green's function.
  std::vector<PathRecord> run_exit(const Domain& dom, cplx start, const SimConfig& cfg,
                                   OccGrid* grid = nullptr, Chart chart = Chart::none,
                                   cplx chart_scale = cplx(1.0),
                                   const DynkinFunc* dynkin = nullptr,
                                   bool track_winding = false, cplx mark = cplx(0.0),
                                   bool grid_on_chart = false) const;

  // Free motion stopped when the continuous argument about the origin
  // reaches +- 2 pi n.
  std::vector<PathRecord> winding_time(int n, cplx start, const SimConfig& cfg,
                                       OccGrid* grid = nullptr) const;

  // Free motion to a fixed horizon; winding tracked about `mark`, and the
  // accumulator records time spent in the disk D(mark, indicator_radius).
  std::vector<PathRecord> free_run(cplx start, double horizon, const SimConfig& cfg,
                                   cplx mark = cplx(0.0), double indicator_radius = 0.0,
                                   OccGrid* grid = nullptr) const;

  // Exit-position sampler by jumps to maximal inscribed circles (no times).
  std::vector<PathRecord> walk_on_spheres(const Domain& dom, cplx start,
                                          const SimConfig& cfg) const;

  EstimatorResult exit_time(const Domain& dom, cplx start, const SimConfig& cfg) const;
  EstimatorResult dirichlet(const Domain& dom, cplx start,
                            const std::function<double(cplx)>& boundary_fn,
                            const SimConfig& cfg) const;
  EstimatorResult time_change(const Domain& base, cplx start, Chart chart, cplx chart_scale,
                              const SimConfig& cfg) const;
  EstimatorResult dynkin_residual(const Domain& dom, cplx start, const DynkinFunc& fn,
                                  const SimConfig& cfg) const;

 private:
  SimdMode mode_;
  int workers_;
};

// One planar Brownian increment over dt.
cplx sample_increment(double dt, PathRng& rng);

// Deterministic per-path CSV; header + one row per path, %.17g numbers.
std::string records_to_csv(const std::vector<PathRecord>& records);

}  // namespace bmcx
