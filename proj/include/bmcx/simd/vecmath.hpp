#pragma once

#include "bmcx/simd/pack.hpp"

// Polynomial transcendentals shared by the scalar and SIMD engines. These are
// the classic Cephes double-precision algorithms written as single-lane
// operation sequences, so both instantiations agree bit for bit lane-wise.
// Accuracy is ~1-2 ulp on the argument ranges the engine uses.
namespace bmcx::simd {

// natural log of a positive normal double
template <class P>
inline P vlog(P x) {
  using M = typename pack_traits<P>::mask;
  P m;
  P e = vfrexp(x, m);  // x = m 2^e, m in [0.5,1)
  const M low = vlt(m, pbroad<P>(0.70710678118654752440));
  m = vselect(low, m + m, m);
  e = vselect(low, e - pbroad<P>(1.0), e);
  const P z = m - pbroad<P>(1.0);

  P num = pbroad<P>(1.01875663804580931796e-4);
  num = num * z + pbroad<P>(4.97494994976747001425e-1);
  num = num * z + pbroad<P>(4.70579119878881725854e0);
  num = num * z + pbroad<P>(1.44989225341610930846e1);
  num = num * z + pbroad<P>(1.79368678507819816313e1);
  num = num * z + pbroad<P>(7.70838733755885391666e0);
  P den = z + pbroad<P>(1.12873587189167450590e1);
  den = den * z + pbroad<P>(4.52279145837532221105e1);
  den = den * z + pbroad<P>(8.29875266912776603211e1);
  den = den * z + pbroad<P>(7.11544750618563894466e1);
  den = den * z + pbroad<P>(2.31251620126765340583e1);

  const P zz = z * z;
  P y = z * (zz * (num / den));
  y = y - e * pbroad<P>(2.121944400546905827679e-4);
  y = y - pbroad<P>(0.5) * zz;
  P r = z + y;
  r = r + e * pbroad<P>(0.693359375);
  return r;
}

// sin and cos for x in [0, 2pi] (extends a little beyond without harm)
template <class P>
inline void vsincos(P x, P& s, P& c) {
  using M = typename pack_traits<P>::mask;
  P y = vfloor(x * pbroad<P>(1.27323954473516268615));  // 4/pi
  const P ymod2 = y - vfloor(y * pbroad<P>(0.5)) * pbroad<P>(2.0);
  const M odd = vgt(ymod2, pbroad<P>(0.5));
  y = vselect(odd, y + pbroad<P>(1.0), y);
  P q = y * pbroad<P>(0.5);
  q = q - vfloor(q * pbroad<P>(0.25)) * pbroad<P>(4.0);  // quadrant 0..3

  P z = x - y * pbroad<P>(7.85398125648498535156e-1);
  z = z - y * pbroad<P>(3.77489470793079817668e-8);
  z = z - y * pbroad<P>(2.69515142907905952645e-15);
  const P zz = z * z;

  P sp = pbroad<P>(1.58962301576546568060e-10);
  sp = sp * zz + pbroad<P>(-2.50507477628578072866e-8);
  sp = sp * zz + pbroad<P>(2.75573136213857245213e-6);
  sp = sp * zz + pbroad<P>(-1.98412698295895385996e-4);
  sp = sp * zz + pbroad<P>(8.33333333332211858878e-3);
  sp = sp * zz + pbroad<P>(-1.66666666666666307295e-1);
  sp = z + z * zz * sp;

  P cp = pbroad<P>(-1.13585365213876817300e-11);
  cp = cp * zz + pbroad<P>(2.08757008419747316778e-9);
  cp = cp * zz + pbroad<P>(-2.75573141792967388112e-7);
  cp = cp * zz + pbroad<P>(2.48015872888517179954e-5);
  cp = cp * zz + pbroad<P>(-1.38888888888730564116e-3);
  cp = cp * zz + pbroad<P>(4.16666666666665929218e-2);
  cp = pbroad<P>(1.0) - pbroad<P>(0.5) * zz + zz * zz * cp;

  const M q1 = vand(vgt(q, pbroad<P>(0.5)), vlt(q, pbroad<P>(1.5)));
  const M q2 = vand(vgt(q, pbroad<P>(1.5)), vlt(q, pbroad<P>(2.5)));
  const M q3 = vgt(q, pbroad<P>(2.5));
  s = vselect(q3, -cp, vselect(q2, -sp, vselect(q1, cp, sp)));
  c = vselect(q3, sp, vselect(q2, -cp, vselect(q1, -sp, cp)));
}

namespace detail {

// atan on [0, inf) (arguments reduced by symmetry)
template <class P>
inline P vatan_nonneg(P a) {
  using M = typename pack_traits<P>::mask;
  const P one = pbroad<P>(1.0);
  const M hi = vgt(a, pbroad<P>(2.41421356237309504880));  // tan(3pi/8)
  const M mid = vand(vnot(hi), vgt(a, pbroad<P>(0.66)));

  P x = vselect(hi, pbroad<P>(-1.0) / a, vselect(mid, (a - one) / (a + one), a));
  const P y0 = vselect(hi, pbroad<P>(1.57079632679489661923),
                       vselect(mid, pbroad<P>(7.85398163397448309616e-1), pbroad<P>(0.0)));
  const P extra = vselect(hi, pbroad<P>(6.123233995736765886130e-17),
                          vselect(mid, pbroad<P>(3.061616997868382943065e-17), pbroad<P>(0.0)));

  const P z = x * x;
  P num = pbroad<P>(-8.750608600031904122785e-1);
  num = num * z + pbroad<P>(-1.615753718733365076637e1);
  num = num * z + pbroad<P>(-7.500855792314704667340e1);
  num = num * z + pbroad<P>(-1.228866684490136173410e2);
  num = num * z + pbroad<P>(-6.485021904942025371773e1);
  P den = z + pbroad<P>(2.485846490142306297962e1);
  den = den * z + pbroad<P>(1.650270098316988542046e2);
  den = den * z + pbroad<P>(4.328810604912902668951e2);
  den = den * z + pbroad<P>(4.853903996359136964868e2);
  den = den * z + pbroad<P>(1.945506571482613964425e2);

  P t = z * (num / den);
  t = x * t + x + extra;
  return y0 + t;
}

}  // namespace detail

template <class P>
inline P vatan2(P y, P x) {
  using M = typename pack_traits<P>::mask;
  const P zero = pbroad<P>(0.0);
  const P pi = pbroad<P>(3.14159265358979323846);
  const M both_zero = vand(vnot(vor(vlt(x, zero), vgt(x, zero))),
                           vnot(vor(vlt(y, zero), vgt(y, zero))));
  const P q = y / x;
  const P aq = vabs(q);
  P t = detail::vatan_nonneg(aq);
  t = vselect(vlt(q, zero), -t, t);
  const M xneg = vlt(x, zero);
  const M yneg = vlt(y, zero);
  P r = vselect(xneg, vselect(yneg, t - pi, t + pi), t);
  return vselect(both_zero, zero, r);
}

}  // namespace bmcx::simd
