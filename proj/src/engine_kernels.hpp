#pragma once

#include <algorithm>
#include <cmath>

#include "bmcx/domain_kernels.hpp"
#include "bmcx/simd/vecmath.hpp"
#include "kernels_api.hpp"

// Step kernels templated over the lane pack. The vectorized part covers the
// Gaussian transform, the position update, membership/distance and the
// winding angle; per-lane bookkeeping (exit handling, refill, accumulators)
// is shared scalar code, so the scalar and AVX2 instantiations produce
// bit-identical per-path outputs.
namespace bmcx::kernels {

// free motion: everything is inside, the boundary is infinitely far
struct FreeK {
  template <class P>
  auto contains(P, P) const {
    return simd::vge(simd::pbroad<P>(1.0), simd::pbroad<P>(0.0));
  }
  template <class P>
  P dist(P, P) const {
    return simd::pbroad<P>(1e300);
  }
};

inline int vbits(bool m) { return m ? 1 : 0; }
#if defined(__AVX2__)
inline int vbits(simd::pack4m m) { return simd::vmask_bits(m); }
#endif

template <class P>
P vloadp(const double* p);
template <>
inline double vloadp<double>(const double* p) {
  return *p;
}
template <class P>
void vstorep(double* p, P x);
template <>
inline void vstorep<double>(double* p, double x) {
  *p = x;
}
#if defined(__AVX2__)
template <>
inline simd::pack4d vloadp<simd::pack4d>(const double* p) {
  return simd::pload(p);
}
template <>
inline void vstorep<simd::pack4d>(double* p, simd::pack4d x) {
  simd::pstore(p, x);
}
#endif

// Angle of (q-mark) relative to (p-mark), computed in a frame scaled by the
// first vector so the cross/dot products cannot overflow on huge excursions.
inline double wind_increment(const KernelCtx& c, double px, double py, double qx, double qy) {
  const double ax = px - c.mark_x, ay = py - c.mark_y;
  const double s = 1.0 / (std::fabs(ax) + std::fabs(ay) + 1e-300);
  const double ux = ax * s, uy = ay * s;
  const double bx = qx - c.mark_x, by = qy - c.mark_y;
  return simd::vatan2(ux * by - uy * bx, ux * bx + uy * by);
}

inline double acc_rate(const KernelCtx& c, double x, double y) {
  switch (c.acc) {
    case AccKind::none:
    case AccKind::lap_zero:
      return 0.0;
    case AccKind::chart_linear:
      return c.chart_c2;
    case AccKind::chart_square_one_plus: {
      const double a = 1.0 + x;
      return 4.0 * (a * a + y * y);
    }
    case AccKind::chart_square:
      return 4.0 * (x * x + y * y);
    case AccKind::lap_four:
      return 2.0;  // (1/2) * 4
    case AccKind::lap_custom:
      return 0.5 * (*c.lap_fn)(cplx(x, y));
    case AccKind::disk_indicator: {
      const double dx = x - c.mark_x, dy = y - c.mark_y;
      return dx * dx + dy * dy < c.indicator_r2 ? 1.0 : 0.0;
    }
  }
  return 0.0;
}

// image of the point under the active chart (supported: z^2 and (1+z)^2)
inline void chart_image(const KernelCtx& c, double x, double y, double& ix, double& iy) {
  if (c.acc == AccKind::chart_square_one_plus) {
    const double a = 1.0 + x;
    ix = a * a - y * y;
    iy = 2.0 * a * y;
  } else {
    ix = x * x - y * y;
    iy = 2.0 * x * y;
  }
}

inline void grid_add(const KernelCtx& c, std::vector<double>* grid, double x, double y, double w) {
  const double fx = (x - c.gx0) / c.gcell, fy = (y - c.gy0) / c.gcell;
  if (!(fx >= 0.0 && fx < static_cast<double>(c.gnx))) return;
  if (!(fy >= 0.0 && fy < static_cast<double>(c.gny))) return;
  const int ix = static_cast<int>(fx), iy = static_cast<int>(fy);
  (*grid)[static_cast<std::size_t>(iy) * c.gnx + ix] += w;
}

inline double next_dt(const KernelCtx& c, double d_boundary, double x, double y) {
  double dt = c.dt_max;
  if (c.stop == StopKind::domain_exit) dt = std::min(dt, c.cfac * (d_boundary * d_boundary));
  if (c.wind_cap) {
    const double dx = x - c.mark_x, dy = y - c.mark_y;
    const double r2 = std::min(dx * dx + dy * dy, 1e300);
    dt = std::min(dt, std::max(c.wind_factor * r2, 1e-300));
  }
  if (c.has_grid) {
    // approach the grid multiplicatively so entry jumps stay below cell scale
    double px = x, py = y;
    if (c.grid_on_chart) chart_image(c, x, y, px, py);
    const double mx = c.gx0 - c.gcell, my = c.gy0 - c.gcell;
    const double bx = c.gx0 + c.gnx * c.gcell + c.gcell, by = c.gy0 + c.gny * c.gcell + c.gcell;
    const double ex = std::max({0.0, mx - px, px - bx});
    const double ey = std::max({0.0, my - py, py - by});
    dt = std::min(dt, c.grid_dt_cap + 0.02 * (ex * ex + ey * ey));
  }
  return dt;
}

template <class P, class DomK>
void run_loop(const KernelCtx& c, const DomK& dom, std::uint64_t first, std::uint64_t count,
              PathRecord* out, std::vector<double>* grid) {
  constexpr int W = simd::pack_traits<P>::width;
  const bool dom_mode = c.stop == StopKind::domain_exit;

  double xs[W], ys[W], ts[W], dts[W], wds[W], sp2[W], accs[W];
  std::uint64_t steps[W], pid[W];
  bool active[W];
  PathRng rng[W];
  std::uint64_t next = 0;

  auto refill = [&](int w) {
    if (next >= count) {
      active[w] = false;
      dts[w] = 0.0;
      return;
    }
    const std::uint64_t id = first + next;
    ++next;
    pid[w] = id;
    rng[w] = PathRng(c.seed, id);
    xs[w] = c.start_x;
    ys[w] = c.start_y;
    ts[w] = 0.0;
    wds[w] = 0.0;
    sp2[w] = c.start_x * c.start_x + c.start_y * c.start_y;
    accs[w] = 0.0;
    steps[w] = 0;
    active[w] = true;
    const double d0 = dom_mode ? dom.dist(c.start_x, c.start_y) : 1e300;
    dts[w] = next_dt(c, d0, c.start_x, c.start_y);
  };
  for (int w = 0; w < W; ++w) refill(w);

  double u1a[W], u2a[W], x1a[W], y1a[W], d1a[W], dwa[W];
  for (;;) {
    bool any_active = false;
    for (int w = 0; w < W; ++w) any_active |= active[w];
    if (!any_active) break;

    for (int w = 0; w < W; ++w) {
      if (active[w]) {
        rng[w].uniform_pair(u1a[w], u2a[w]);
      } else {
        u1a[w] = 0.5;
        u2a[w] = 0.5;
      }
    }
    const P u1 = vloadp<P>(u1a), u2 = vloadp<P>(u2a);
    const P rr = simd::vsqrt(simd::pbroad<P>(-2.0) * simd::vlog(u1));
    P sn, cn;
    simd::vsincos(simd::pbroad<P>(6.2831853071795864769252867665590) * u2, sn, cn);
    const P x0 = vloadp<P>(xs), y0 = vloadp<P>(ys);
    const P sdt = simd::vsqrt(vloadp<P>(dts));
    const P x1 = x0 + sdt * (rr * cn);
    const P y1 = y0 + sdt * (rr * sn);
    vstorep(x1a, x1);
    vstorep(y1a, y1);

    const int inside_bits = vbits(dom.contains(x1, y1));
    vstorep(d1a, dom.dist(x1, y1));

    if (c.track_winding) {
      const P ax = x0 - simd::pbroad<P>(c.mark_x), ay = y0 - simd::pbroad<P>(c.mark_y);
      const P s = simd::pbroad<P>(1.0) / (simd::vabs(ax) + simd::vabs(ay) + simd::pbroad<P>(1e-300));
      const P ux = ax * s, uy = ay * s;
      const P bx = x1 - simd::pbroad<P>(c.mark_x), by = y1 - simd::pbroad<P>(c.mark_y);
      vstorep(dwa, simd::vatan2(ux * by - uy * bx, ux * bx + uy * by));
    }

    for (int w = 0; w < W; ++w) {
      if (!active[w]) continue;
      steps[w] += 1;
      const bool inside = (inside_bits >> w) & 1;
      const double px = xs[w], py = ys[w];
      const double qx = x1a[w], qy = y1a[w];
      const double dt = dts[w];
      const double dw = c.track_winding ? dwa[w] : 0.0;

      bool finished = false, censored = false;
      double ex = qx, ey = qy;
      double t_end = ts[w] + dt, wind_end = wds[w] + dw, frac = 1.0;

      if (dom_mode) {
        if (!inside) {
          frac = c.domain->boundary_hit_fraction(cplx(px, py), cplx(qx, qy));
          ex = px + frac * (qx - px);
          ey = py + frac * (qy - py);
          t_end = ts[w] + frac * dt;
          if (c.track_winding) wind_end = wds[w] + wind_increment(c, px, py, ex, ey);
          finished = true;
        } else if (d1a[w] < c.eps) {
          const cplx b = c.domain->project_to_boundary(cplx(qx, qy));
          ex = b.real();
          ey = b.imag();
          if (c.track_winding) wind_end = wds[w] + wind_increment(c, px, py, ex, ey);
          finished = true;
        }
      } else if (c.stop == StopKind::winding_target) {
        finished = std::fabs(wind_end) >= c.wind_target;
      } else {
        finished = t_end >= c.horizon;
      }
      if (!finished && steps[w] >= c.max_steps) censored = true;

      const double dt_eff = finished && dom_mode ? frac * dt : dt;
      if (grid) {
        if (c.grid_on_chart) {
          double gx, gy;
          chart_image(c, px, py, gx, gy);
          grid_add(c, grid, gx, gy, acc_rate(c, px, py) * dt_eff);
        } else {
          grid_add(c, grid, px, py, dt_eff);
        }
      }
      if (c.acc != AccKind::none) accs[w] += acc_rate(c, px, py) * dt_eff;

      if (finished || censored) {
        PathRecord r;
        r.id = pid[w];
        r.exit = cplx(ex, ey);
        r.time = t_end;
        r.winding = wind_end;
        r.sup_abs = std::sqrt(std::max(sp2[w], ex * ex + ey * ey));
        r.acc = accs[w];
        r.censored = censored;
        out[pid[w] - first] = r;
        refill(w);
      } else {
        xs[w] = qx;
        ys[w] = qy;
        ts[w] = t_end;
        wds[w] = wind_end;
        sp2[w] = std::max(sp2[w], qx * qx + qy * qy);
        dts[w] = next_dt(c, d1a[w], qx, qy);
      }
    }
  }
}

template <class P, class DomK>
void wos_loop(const KernelCtx& c, const DomK& dom, std::uint64_t first, std::uint64_t count,
              PathRecord* out) {
  constexpr int W = simd::pack_traits<P>::width;
  double xs[W], ys[W], sp2[W];
  std::uint64_t steps[W], pid[W];
  bool active[W];
  PathRng rng[W];
  std::uint64_t next = 0;

  auto refill = [&](int w) {
    if (next >= count) {
      active[w] = false;
      return;
    }
    pid[w] = first + next;
    ++next;
    rng[w] = PathRng(c.seed, pid[w]);
    xs[w] = c.start_x;
    ys[w] = c.start_y;
    sp2[w] = c.start_x * c.start_x + c.start_y * c.start_y;
    steps[w] = 0;
    active[w] = true;
  };
  for (int w = 0; w < W; ++w) refill(w);

  double u1a[W], u2a[W], x1a[W], y1a[W], da[W];
  for (;;) {
    bool any_active = false;
    for (int w = 0; w < W; ++w) any_active |= active[w];
    if (!any_active) break;

    for (int w = 0; w < W; ++w) {
      if (active[w]) {
        rng[w].uniform_pair(u1a[w], u2a[w]);
      } else {
        u1a[w] = 0.5;
        u2a[w] = 0.5;
      }
    }
    const P x0 = vloadp<P>(xs), y0 = vloadp<P>(ys);
    const P d = dom.dist(x0, y0);
    vstorep(da, d);
    P sn, cn;
    simd::vsincos(simd::pbroad<P>(6.2831853071795864769252867665590) * vloadp<P>(u1a), sn, cn);
    const P x1 = x0 + d * cn;
    const P y1 = y0 + d * sn;
    vstorep(x1a, x1);
    vstorep(y1a, y1);

    for (int w = 0; w < W; ++w) {
      if (!active[w]) continue;
      steps[w] += 1;
      if (da[w] < c.eps) {
        const cplx b = c.domain->project_to_boundary(cplx(xs[w], ys[w]));
        PathRecord r;
        r.id = pid[w];
        r.exit = b;
        r.sup_abs = std::sqrt(std::max(sp2[w], std::norm(b)));
        out[pid[w] - first] = r;
        refill(w);
      } else if (steps[w] >= c.max_steps) {
        PathRecord r;
        r.id = pid[w];
        r.exit = cplx(xs[w], ys[w]);
        r.sup_abs = std::sqrt(sp2[w]);
        r.censored = true;
        out[pid[w] - first] = r;
        refill(w);
      } else {
        xs[w] = x1a[w];
        ys[w] = y1a[w];
        sp2[w] = std::max(sp2[w], x1a[w] * x1a[w] + y1a[w] * y1a[w]);
      }
    }
  }
}

template <class P>
void run_chunk_impl(const KernelCtx& c, std::uint64_t first, std::uint64_t count, PathRecord* out,
                    std::vector<double>* grid) {
  if (!c.domain) {
    run_loop<P>(c, FreeK{}, first, count, out, grid);
    return;
  }
  switch (c.domain->kind) {
    case Domain::Kind::disk:
      run_loop<P>(c, kern::make_disk(*c.domain), first, count, out, grid);
      break;
    case Domain::Kind::annulus:
      run_loop<P>(c, kern::make_annulus(*c.domain), first, count, out, grid);
      break;
    case Domain::Kind::halfplane:
      run_loop<P>(c, kern::HalfplaneK{}, first, count, out, grid);
      break;
    case Domain::Kind::righthalf:
      run_loop<P>(c, kern::RighthalfK{}, first, count, out, grid);
      break;
    case Domain::Kind::strip:
      run_loop<P>(c, kern::make_strip(*c.domain), first, count, out, grid);
      break;
    case Domain::Kind::wedge:
      run_loop<P>(c, kern::make_wedge(*c.domain), first, count, out, grid);
      break;
    case Domain::Kind::triangle:
      run_loop<P>(c, kern::TriangleK{}, first, count, out, grid);
      break;
    case Domain::Kind::cardioid:
      run_loop<P>(c, kern::CardioidK{}, first, count, out, grid);
      break;
    default:
      fail(errc::unsupported_variant, "domain variant not simulable");
  }
}

template <class P>
void wos_chunk_impl(const KernelCtx& c, std::uint64_t first, std::uint64_t count, PathRecord* out) {
  switch (c.domain->kind) {
    case Domain::Kind::disk:
      wos_loop<P>(c, kern::make_disk(*c.domain), first, count, out);
      break;
    case Domain::Kind::annulus:
      wos_loop<P>(c, kern::make_annulus(*c.domain), first, count, out);
      break;
    case Domain::Kind::halfplane:
      wos_loop<P>(c, kern::HalfplaneK{}, first, count, out);
      break;
    case Domain::Kind::righthalf:
      wos_loop<P>(c, kern::RighthalfK{}, first, count, out);
      break;
    case Domain::Kind::strip:
      wos_loop<P>(c, kern::make_strip(*c.domain), first, count, out);
      break;
    case Domain::Kind::wedge:
      wos_loop<P>(c, kern::make_wedge(*c.domain), first, count, out);
      break;
    case Domain::Kind::triangle:
      wos_loop<P>(c, kern::TriangleK{}, first, count, out);
      break;
    case Domain::Kind::cardioid:
      wos_loop<P>(c, kern::CardioidK{}, first, count, out);
      break;
    default:
      fail(errc::unsupported_variant, "domain variant not simulable");
  }
}

}  // namespace bmcx::kernels
