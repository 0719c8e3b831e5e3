#include "bmcx/engine.hpp"

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <mutex>
#include <thread>

#include "kernels_api.hpp"

namespace bmcx {

double SimConfig::resolved_eps(const Domain& dom, cplx start) const {
  if (boundary_tol > 0.0) return boundary_tol;
  const double scale = dom.bounded() ? dom.diameter() : std::max(1.0, std::abs(start));
  return 1e-4 * scale;
}

void SimConfig::validate(const Domain* dom, cplx start) const {
  if (n_paths == 0) fail(errc::bad_config, "n_paths must be positive");
  if (!(dt_max > 0.0)) fail(errc::bad_config, "dt_max must be positive");
  if (!(step_factor > 0.0 && step_factor <= 1.0)) fail(errc::bad_config, "step factor must be in (0,1]");
  if (max_steps == 0) fail(errc::bad_config, "max_steps must be positive");
  if (dom) {
    const double eps = resolved_eps(*dom, start);
    if (!(eps > 0.0)) fail(errc::bad_config, "boundary tolerance must be positive");
    if (dom->bounded() && !(eps < dom->diameter() * 1e-2))
      fail(errc::bad_config, "boundary tolerance too large for the domain");
  }
}

EstimatorResult summarize(const std::vector<double>& values, std::uint64_t censored) {
  EstimatorResult r;
  r.count = values.size();
  r.censored = censored;
  if (values.empty()) return r;
  double sum = 0.0;
  for (double v : values) sum += v;
  r.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - r.mean) * (v - r.mean);
    r.stderr_ = std::sqrt(ss / static_cast<double>(values.size() - 1)) /
                std::sqrt(static_cast<double>(values.size()));
  }
  return r;
}

OccGrid OccGrid::around(cplx center, double halfwidth, int cells_per_side) {
  OccGrid g;
  g.nx = g.ny = cells_per_side;
  g.cell = 2.0 * halfwidth / cells_per_side;
  g.x0 = center.real() - halfwidth;
  g.y0 = center.imag() - halfwidth;
  g.density.assign(static_cast<std::size_t>(g.nx) * g.ny, 0.0);
  return g;
}

int OccGrid::index(double x, double y) const {
  const double fx = (x - x0) / cell, fy = (y - y0) / cell;
  if (fx < 0.0 || fy < 0.0) return -1;
  const int ix = static_cast<int>(fx), iy = static_cast<int>(fy);
  if (ix >= nx || iy >= ny) return -1;
  return iy * nx + ix;
}

cplx OccGrid::cell_center(int ix, int iy) const {
  return cplx(x0 + (ix + 0.5) * cell, y0 + (iy + 0.5) * cell);
}

double OccGrid::value_at(cplx p) const {
  const int i = index(p.real(), p.imag());
  if (i < 0) fail(errc::bad_config, "point outside the occupation grid");
  return density[static_cast<std::size_t>(i)];
}

bool Engine::avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
  return kernels::avx2_kernels_present() && __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Engine::Engine(SimdMode mode, int workers) {
  if (mode == SimdMode::auto_detect) {
    const char* env = std::getenv("BMCX_SIMD");
    if (env && std::strcmp(env, "scalar") == 0)
      mode = SimdMode::scalar;
    else if (env && std::strcmp(env, "avx2") == 0)
      mode = SimdMode::avx2;
    else
      mode = avx2_available() ? SimdMode::avx2 : SimdMode::scalar;
  }
  if (mode == SimdMode::avx2 && !avx2_available())
    fail(errc::bad_config, "AVX2 kernels requested but unavailable");
  mode_ = mode;

  if (workers <= 0) {
    if (const char* env = std::getenv("BMCX_THREADS")) workers = std::atoi(env);
  }
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  workers_ = std::max(workers, 1);
}

namespace {

constexpr std::uint64_t kChunk = 4096;

using kernels::KernelCtx;

// Chunked deterministic runner: per-path records land at fixed indices and
// per-chunk grids merge in chunk order, so results do not depend on the
// worker count or scheduling.
std::vector<PathRecord> run_task(const KernelCtx& ctx, std::uint64_t n_paths, bool wos,
                                 SimdMode mode, int workers, std::vector<double>* grid_total) {
  const bool use_avx2 = mode == SimdMode::avx2;
  auto chunk_fn = wos ? (use_avx2 ? kernels::wos_chunk_avx2 : kernels::wos_chunk_scalar)
                      : (use_avx2 ? kernels::run_chunk_avx2 : kernels::run_chunk_scalar);

  std::vector<PathRecord> records(n_paths);
  const std::uint64_t nchunks = (n_paths + kChunk - 1) / kChunk;
  const std::size_t grid_size = grid_total ? grid_total->size() : 0;

  std::atomic<std::uint64_t> next_chunk{0};
  std::mutex merge_mu;
  std::map<std::uint64_t, std::vector<double>> pending;
  std::uint64_t next_merge = 0;
  std::exception_ptr first_error;
  std::mutex err_mu;

  auto worker_fn = [&]() {
    try {
      for (;;) {
        const std::uint64_t ci = next_chunk.fetch_add(1);
        if (ci >= nchunks) return;
        const std::uint64_t first = ci * kChunk;
        const std::uint64_t count = std::min(kChunk, n_paths - first);
        std::vector<double> grid_part;
        if (grid_total) grid_part.assign(grid_size, 0.0);
        chunk_fn(ctx, first, count, records.data() + first, grid_total ? &grid_part : nullptr);
        if (grid_total) {
          std::lock_guard<std::mutex> lock(merge_mu);
          pending.emplace(ci, std::move(grid_part));
          auto it = pending.find(next_merge);
          while (it != pending.end()) {
            for (std::size_t i = 0; i < grid_size; ++i) (*grid_total)[i] += it->second[i];
            pending.erase(it);
            ++next_merge;
            it = pending.find(next_merge);
          }
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mu);
      if (!first_error) first_error = std::current_exception();
    }
  };

  const int nthreads = static_cast<int>(std::min<std::uint64_t>(workers, nchunks));
  if (nthreads <= 1) {
    worker_fn();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker_fn);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return records;
}

void fill_grid_ctx(KernelCtx& ctx, const OccGrid* grid) {
  if (!grid) return;
  ctx.has_grid = true;
  ctx.gx0 = grid->x0;
  ctx.gy0 = grid->y0;
  ctx.gcell = grid->cell;
  ctx.gnx = grid->nx;
  ctx.gny = grid->ny;
  ctx.grid_dt_cap = grid->cell * grid->cell / 32.0;
}

void finish_grid(OccGrid* grid, std::vector<double>& sums, std::uint64_t n_paths) {
  if (!grid) return;
  const double norm = static_cast<double>(n_paths) * grid->cell * grid->cell;
  grid->density.resize(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) grid->density[i] = sums[i] / norm;
}

}  // namespace

std::vector<PathRecord> Engine::run_exit(const Domain& dom, cplx start, const SimConfig& cfg,
                                         OccGrid* grid, Chart chart, cplx chart_scale,
                                         const DynkinFunc* dynkin, bool track_winding, cplx mark,
                                         bool grid_on_chart) const {
  cfg.validate(&dom, start);
  if (!dom.contains(start)) fail(errc::start_outside_domain, "start point outside the domain");

  KernelCtx ctx;
  ctx.domain = &dom;
  ctx.start_x = start.real();
  ctx.start_y = start.imag();
  ctx.seed = cfg.seed;
  ctx.max_steps = cfg.max_steps;
  ctx.dt_max = cfg.dt_max;
  ctx.cfac = cfg.step_factor;
  ctx.eps = cfg.resolved_eps(dom, start);
  ctx.stop = kernels::StopKind::domain_exit;
  ctx.track_winding = track_winding;
  ctx.mark_x = mark.real();
  ctx.mark_y = mark.imag();
  if (chart == Chart::linear) {
    ctx.acc = kernels::AccKind::chart_linear;
    ctx.chart_c2 = std::norm(chart_scale);
  } else if (chart == Chart::square_one_plus) {
    ctx.acc = kernels::AccKind::chart_square_one_plus;
  } else if (chart == Chart::square) {
    ctx.acc = kernels::AccKind::chart_square;
  } else if (dynkin) {
    switch (dynkin->lap) {
      case DynkinFunc::Lap::zero:
        ctx.acc = kernels::AccKind::lap_zero;
        break;
      case DynkinFunc::Lap::four:
        ctx.acc = kernels::AccKind::lap_four;
        break;
      case DynkinFunc::Lap::custom:
        ctx.acc = kernels::AccKind::lap_custom;
        ctx.lap_fn = &dynkin->lap_fn;
        break;
    }
  }
  fill_grid_ctx(ctx, grid);
  if (grid_on_chart) {
    if (chart != Chart::square && chart != Chart::square_one_plus)
      fail(errc::bad_config, "image-plane grids support the square charts only");
    ctx.grid_on_chart = true;
  }

  std::vector<double> grid_sums(grid ? grid->density.size() : 0, 0.0);
  auto records = run_task(ctx, cfg.n_paths, false, mode_, workers_, grid ? &grid_sums : nullptr);
  finish_grid(grid, grid_sums, cfg.n_paths);
  return records;
}

std::vector<PathRecord> Engine::winding_time(int n, cplx start, const SimConfig& cfg,
                                             OccGrid* grid) const {
  if (n < 1) fail(errc::bad_config, "winding count must be >= 1");
  if (start == cplx(0.0)) fail(errc::start_at_origin, "winding time needs a nonzero start");
  cfg.validate(nullptr, start);

  KernelCtx ctx;
  ctx.start_x = start.real();
  ctx.start_y = start.imag();
  ctx.seed = cfg.seed;
  ctx.max_steps = cfg.max_steps;
  ctx.dt_max = cfg.dt_max;
  ctx.cfac = cfg.step_factor;
  ctx.stop = kernels::StopKind::winding_target;
  ctx.wind_target = 2.0 * M_PI * n;
  ctx.track_winding = true;
  ctx.wind_cap = true;
  ctx.wind_factor = cfg.step_factor;
  fill_grid_ctx(ctx, grid);

  std::vector<double> grid_sums(grid ? grid->density.size() : 0, 0.0);
  auto records = run_task(ctx, cfg.n_paths, false, mode_, workers_, grid ? &grid_sums : nullptr);
  finish_grid(grid, grid_sums, cfg.n_paths);
  return records;
}

std::vector<PathRecord> Engine::free_run(cplx start, double horizon, const SimConfig& cfg,
                                         cplx mark, double indicator_radius, OccGrid* grid) const {
  if (!(horizon > 0.0)) fail(errc::bad_config, "horizon must be positive");
  cfg.validate(nullptr, start);

  KernelCtx ctx;
  ctx.start_x = start.real();
  ctx.start_y = start.imag();
  ctx.seed = cfg.seed;
  ctx.max_steps = cfg.max_steps;
  ctx.dt_max = cfg.dt_max;
  ctx.cfac = cfg.step_factor;
  ctx.stop = kernels::StopKind::horizon;
  ctx.horizon = horizon;
  ctx.track_winding = true;
  ctx.wind_cap = true;
  ctx.wind_factor = cfg.step_factor;
  ctx.mark_x = mark.real();
  ctx.mark_y = mark.imag();
  if (indicator_radius > 0.0) {
    ctx.acc = kernels::AccKind::disk_indicator;
    ctx.indicator_r2 = indicator_radius * indicator_radius;
  }
  fill_grid_ctx(ctx, grid);

  std::vector<double> grid_sums(grid ? grid->density.size() : 0, 0.0);
  auto records = run_task(ctx, cfg.n_paths, false, mode_, workers_, grid ? &grid_sums : nullptr);
  finish_grid(grid, grid_sums, cfg.n_paths);
  return records;
}

std::vector<PathRecord> Engine::walk_on_spheres(const Domain& dom, cplx start,
                                                const SimConfig& cfg) const {
  cfg.validate(&dom, start);
  if (!dom.contains(start)) fail(errc::start_outside_domain, "start point outside the domain");

  KernelCtx ctx;
  ctx.domain = &dom;
  ctx.start_x = start.real();
  ctx.start_y = start.imag();
  ctx.seed = cfg.seed;
  ctx.max_steps = cfg.max_steps;
  ctx.eps = cfg.resolved_eps(dom, start);
  return run_task(ctx, cfg.n_paths, true, mode_, workers_, nullptr);
}

EstimatorResult Engine::exit_time(const Domain& dom, cplx start, const SimConfig& cfg) const {
  const auto records = run_exit(dom, start, cfg);
  std::vector<double> vals;
  vals.reserve(records.size());
  std::uint64_t censored = 0;
  for (const auto& r : records) {
    if (r.censored)
      ++censored;
    else
      vals.push_back(r.time);
  }
  return summarize(vals, censored);
}

EstimatorResult Engine::dirichlet(const Domain& dom, cplx start,
                                  const std::function<double(cplx)>& boundary_fn,
                                  const SimConfig& cfg) const {
  const auto records = run_exit(dom, start, cfg);
  std::vector<double> vals;
  vals.reserve(records.size());
  std::uint64_t censored = 0;
  for (const auto& r : records) {
    if (r.censored)
      ++censored;
    else
      vals.push_back(boundary_fn(r.exit));
  }
  return summarize(vals, censored);
}

EstimatorResult Engine::time_change(const Domain& base, cplx start, Chart chart, cplx chart_scale,
                                    const SimConfig& cfg) const {
  if (chart == Chart::none) fail(errc::bad_config, "time change needs a chart");
  const auto records = run_exit(base, start, cfg, nullptr, chart, chart_scale);
  std::vector<double> vals;
  vals.reserve(records.size());
  std::uint64_t censored = 0;
  for (const auto& r : records) {
    if (r.censored)
      ++censored;
    else
      vals.push_back(r.acc);
  }
  return summarize(vals, censored);
}

EstimatorResult Engine::dynkin_residual(const Domain& dom, cplx start, const DynkinFunc& fn,
                                        const SimConfig& cfg) const {
  const auto records = run_exit(dom, start, cfg, nullptr, Chart::none, cplx(1.0), &fn);
  const double u0 = fn.u(start);
  std::vector<double> vals;
  vals.reserve(records.size());
  std::uint64_t censored = 0;
  for (const auto& r : records) {
    if (r.censored)
      ++censored;
    else
      vals.push_back(fn.u(r.exit) - u0 - r.acc);
  }
  return summarize(vals, censored);
}

cplx sample_increment(double dt, PathRng& rng) {
  if (!(dt > 0.0)) fail(errc::bad_config, "dt must be positive");
  double g1, g2;
  rng.normal_pair(g1, g2);
  const double s = std::sqrt(dt);
  return cplx(s * g1, s * g2);
}

std::string records_to_csv(const std::vector<PathRecord>& records) {
  std::string out = "path_id,exit_x,exit_y,exit_time,winding,sup_abs\n";
  char buf[256];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof(buf), "%llu,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  static_cast<unsigned long long>(r.id), r.exit.real(), r.exit.imag(), r.time,
                  r.winding, r.sup_abs);
    out += buf;
  }
  return out;
}

}  // namespace bmcx
