#pragma once

#include "bmcx/domain.hpp"
#include "bmcx/simd/pack.hpp"
#include "bmcx/simd/vecmath.hpp"

// Membership and conservative boundary-distance kernels per domain variant,
// templated over the lane type. Domain's scalar methods instantiate these at
// P = double; the engine instantiates them at the SIMD pack, so both paths
// run the same arithmetic.
namespace bmcx::kern {

using simd::pbroad;
using simd::vabs;
using simd::vand;
using simd::vgt;
using simd::vlt;
using simd::vmax;
using simd::vmin;
using simd::vnot;
using simd::vor;
using simd::vselect;
using simd::vsqrt;

struct DiskK {
  double cx, cy, r;
  template <class P>
  auto contains(P x, P y) const {
    const P dx = x - pbroad<P>(cx), dy = y - pbroad<P>(cy);
    return vlt(dx * dx + dy * dy, pbroad<P>(r * r));
  }
  template <class P>
  P dist(P x, P y) const {
    const P dx = x - pbroad<P>(cx), dy = y - pbroad<P>(cy);
    return pbroad<P>(r) - vsqrt(dx * dx + dy * dy);
  }
};

struct AnnulusK {
  double inner, outer;
  template <class P>
  auto contains(P x, P y) const {
    const P s = x * x + y * y;
    return vand(vgt(s, pbroad<P>(inner * inner)), vlt(s, pbroad<P>(outer * outer)));
  }
  template <class P>
  P dist(P x, P y) const {
    const P a = vsqrt(x * x + y * y);
    return vmin(a - pbroad<P>(inner), pbroad<P>(outer) - a);
  }
};

struct HalfplaneK {
  template <class P>
  auto contains(P, P y) const {
    return vgt(y, pbroad<P>(0.0));
  }
  template <class P>
  P dist(P, P y) const {
    return y;
  }
};

struct RighthalfK {
  template <class P>
  auto contains(P x, P) const {
    return vgt(x, pbroad<P>(0.0));
  }
  template <class P>
  P dist(P x, P) const {
    return x;
  }
};

struct StripK {
  double lo, hi;
  template <class P>
  auto contains(P x, P) const {
    return vand(vgt(x, pbroad<P>(lo)), vlt(x, pbroad<P>(hi)));
  }
  template <class P>
  P dist(P x, P) const {
    return vmin(x - pbroad<P>(lo), pbroad<P>(hi) - x);
  }
};

struct WedgeK {
  double c1, s1, c2, s2;  // cos/sin of the two edge angles
  bool wide;              // opening angle > pi

  template <class P>
  auto contains(P x, P y) const {
    // v_k = Im(e^{-i theta_k} z)
    const P v1 = pbroad<P>(c1) * y - pbroad<P>(s1) * x;
    const P v2 = pbroad<P>(c2) * y - pbroad<P>(s2) * x;
    const P zero = pbroad<P>(0.0);
    const auto nonorigin = vgt(x * x + y * y, zero);
    if (!wide) return vand(vand(vgt(v1, zero), vlt(v2, zero)), nonorigin);
    return vand(vnot(vand(simd::vge(v2, zero), simd::vle(v1, zero))), nonorigin);
  }
  template <class P>
  P dist(P x, P y) const {
    const P az = vsqrt(x * x + y * y);
    const P u1 = pbroad<P>(c1) * x + pbroad<P>(s1) * y;
    const P v1 = pbroad<P>(c1) * y - pbroad<P>(s1) * x;
    const P u2 = pbroad<P>(c2) * x + pbroad<P>(s2) * y;
    const P v2 = pbroad<P>(c2) * y - pbroad<P>(s2) * x;
    const P zero = pbroad<P>(0.0);
    const P d1 = vselect(vgt(u1, zero), vabs(v1), az);
    const P d2 = vselect(vgt(u2, zero), vabs(v2), az);
    return vmin(d1, d2);
  }
};

struct TriangleK {
  // half-plane margins Re(w^{-k} z) + 1/2 for the three sides
  template <class P>
  P margin(P x, P y, int k) const {
    constexpr double c[3] = {1.0, -0.5, -0.5};
    constexpr double s[3] = {0.0, 0.8660254037844386467637232, -0.8660254037844386467637232};
    return pbroad<P>(c[k]) * x + pbroad<P>(s[k]) * y + pbroad<P>(0.5);
  }
  template <class P>
  auto contains(P x, P y) const {
    const P zero = pbroad<P>(0.0);
    return vand(vand(vgt(margin(x, y, 0), zero), vgt(margin(x, y, 1), zero)),
                vgt(margin(x, y, 2), zero));
  }
  template <class P>
  P dist(P x, P y) const {
    return vmin(margin(x, y, 0), vmin(margin(x, y, 1), margin(x, y, 2)));
  }
};

struct CardioidK {
  // boundary r = 2(1 + cos t) about the cusp at the origin
  template <class P>
  auto contains(P x, P y) const {
    const P s = x * x + y * y;
    return vlt(s - pbroad<P>(2.0) * x, pbroad<P>(2.0) * vsqrt(s));
  }
  // Koebe quarter bound through the square root back to the disk D(1,1):
  // dist >= |u| (1 - |u-1|) / 2 with u = principal sqrt(z). Conservative by
  // a factor <= 4, never an overestimate.
  template <class P>
  P dist(P x, P y) const {
    const P az = vsqrt(x * x + y * y);
    const P half = pbroad<P>(0.5);
    const P ax = vsqrt(vmax((az + x) * half, pbroad<P>(0.0)));
    P ay = vsqrt(vmax((az - x) * half, pbroad<P>(0.0)));
    ay = vselect(vlt(y, pbroad<P>(0.0)), -ay, ay);
    const P dx = ax - pbroad<P>(1.0);
    const P dbase = pbroad<P>(1.0) - vsqrt(dx * dx + ay * ay);
    return half * vsqrt(az) * dbase;
  }
};

inline DiskK make_disk(const Domain& d) { return {d.center.real(), d.center.imag(), d.radius}; }
inline AnnulusK make_annulus(const Domain& d) { return {d.inner, d.outer}; }
inline StripK make_strip(const Domain& d) { return {d.lo, d.hi}; }
inline WedgeK make_wedge(const Domain& d) {
  return {std::cos(d.theta1), std::sin(d.theta1), std::cos(d.theta2), std::sin(d.theta2),
          d.theta2 - d.theta1 > M_PI};
}

}  // namespace bmcx::kern
