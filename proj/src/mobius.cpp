#include "bmcx/mobius.hpp"

#include <algorithm>
#include <cmath>

namespace bmcx {

namespace {

double coeff_scale(cplx a, cplx b, cplx c, cplx d) {
  return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}

}  // namespace

MobiusTransform::MobiusTransform(cplx a_, cplx b_, cplx c_, cplx d_) : a(a_), b(b_), c(c_), d(d_) {
  const double s = coeff_scale(a, b, c, d);
  if (s == 0.0 || std::abs(a * d - b * c) <= 1e-14 * s * s)
    fail(errc::bad_config, "Mobius transform is degenerate (ad - bc ~ 0)");
}

ExtendedComplex MobiusTransform::pole() const {
  if (c == cplx(0.0)) return ExtendedComplex::inf();
  return ExtendedComplex(-d / c);
}

ExtendedComplex mobius_apply(const MobiusTransform& m, const ExtendedComplex& z) {
  if (z.is_inf()) {
    if (m.c == cplx(0.0)) return ExtendedComplex::inf();
    return ExtendedComplex(m.a / m.c);
  }
  const cplx w = z.value;
  const cplx den = m.c * w + m.d;
  if (den == cplx(0.0)) return ExtendedComplex::inf();
  return ExtendedComplex((m.a * w + m.b) / den);
}

MobiusTransform mobius_compose(const MobiusTransform& m1, const MobiusTransform& m2) {
  // Coefficient matrix of the composition is the matrix product.
  return MobiusTransform(m1.a * m2.a + m1.b * m2.c, m1.a * m2.b + m1.b * m2.d,
                         m1.c * m2.a + m1.d * m2.c, m1.c * m2.b + m1.d * m2.d);
}

MobiusTransform mobius_inverse(const MobiusTransform& m) {
  return MobiusTransform(m.d, -m.b, -m.c, m.a);
}

namespace {

// phi_{a,b,c}(z) = (b-c)(z-a) / ((b-a)(z-c)) sends a,b,c to 0,1,infinity.
MobiusTransform to_zero_one_inf(const ExtendedComplex& a, const ExtendedComplex& b,
                                const ExtendedComplex& c) {
  if (a.is_inf()) {
    // limit: (b-c)/(z-c)
    return MobiusTransform(0.0, b.value - c.value, 1.0, -c.value);
  }
  if (b.is_inf()) {
    // limit: (z-a)/(z-c)
    return MobiusTransform(1.0, -a.value, 1.0, -c.value);
  }
  if (c.is_inf()) {
    // limit: (z-a)/(b-a)
    return MobiusTransform(1.0, -a.value, 0.0, b.value - a.value);
  }
  const cplx bc = b.value - c.value, ba = b.value - a.value;
  return MobiusTransform(bc, -a.value * bc, ba, -c.value * ba);
}

}  // namespace

MobiusTransform mobius_three_point(const std::array<ExtendedComplex, 3>& src,
                                   const std::array<ExtendedComplex, 3>& dst) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (src[i] == src[j] || dst[i] == dst[j])
        fail(errc::degenerate_triple, "three-point transform needs pairwise distinct triples");
  const MobiusTransform fwd = to_zero_one_inf(src[0], src[1], src[2]);
  const MobiusTransform rev = to_zero_one_inf(dst[0], dst[1], dst[2]);
  return mobius_compose(mobius_inverse(rev), fwd);
}

ExtendedComplex cross_ratio(const ExtendedComplex& z1, const ExtendedComplex& z2,
                            const ExtendedComplex& z3, const ExtendedComplex& z4) {
  const ExtendedComplex pts[4] = {z1, z2, z3, z4};
  int coincide = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (pts[i] == pts[j]) ++coincide;
  if (coincide > 1) fail(errc::indeterminate, "cross ratio needs at least three distinct points");

  // Limits when one point is at infinity: cancel the two factors containing it.
  if (z1.is_inf()) {
    if (z2 == z3) return ExtendedComplex::inf();
    return ExtendedComplex((z2.value - z4.value) / (z2.value - z3.value));
  }
  if (z2.is_inf()) {
    if (z1 == z4) return ExtendedComplex::inf();
    return ExtendedComplex((z1.value - z3.value) / (z1.value - z4.value));
  }
  if (z3.is_inf()) {
    if (z1 == z4) return ExtendedComplex::inf();
    return ExtendedComplex((z2.value - z4.value) / (z1.value - z4.value));
  }
  if (z4.is_inf()) {
    if (z2 == z3) return ExtendedComplex::inf();
    return ExtendedComplex((z1.value - z3.value) / (z2.value - z3.value));
  }
  const cplx num = (z1.value - z3.value) * (z2.value - z4.value);
  const cplx den = (z2.value - z3.value) * (z1.value - z4.value);
  if (den == cplx(0.0)) {
    if (num == cplx(0.0)) fail(errc::indeterminate, "cross ratio 0/0");
    return ExtendedComplex::inf();
  }
  return ExtendedComplex(num / den);
}

MobiusTransform disk_automorphism(cplx a) {
  if (std::abs(a) >= 1.0) fail(errc::out_of_disk, "disk automorphism needs |a| < 1");
  return MobiusTransform(1.0, -a, -std::conj(a), 1.0);
}

GeneralizedCircle GeneralizedCircle::circle(cplx center, double radius) {
  if (!(radius > 0.0)) fail(errc::bad_config, "circle radius must be positive");
  return GeneralizedCircle{CircleShape{center, radius}};
}

GeneralizedCircle GeneralizedCircle::line(cplx point, cplx direction) {
  const double n = std::abs(direction);
  if (n == 0.0) fail(errc::bad_config, "line direction must be nonzero");
  return GeneralizedCircle{LineShape{point, direction / n}};
}

double GeneralizedCircle::dist(cplx z) const {
  if (is_line()) {
    const auto& l = as_line();
    // distance to the line through l.point with unit direction l.direction
    const cplx w = (z - l.point) / l.direction;
    return std::abs(w.imag());
  }
  const auto& c = as_circle();
  return std::abs(std::abs(z - c.center) - c.radius);
}

namespace {

// Circumcircle through three non-collinear points; collinear inputs fall back
// to the line through p1 and p3.
GeneralizedCircle fit_through(cplx p1, cplx p2, cplx p3, double scale) {
  const double ax = p1.real(), ay = p1.imag();
  const double bx = p2.real(), by = p2.imag();
  const double cx = p3.real(), cy = p3.imag();
  const double den = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
  if (den == 0.0) return GeneralizedCircle::line(p1, p3 - p1);
  const double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  const double ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / den;
  const double uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / den;
  const cplx center(ux, uy);
  const double radius = std::abs(p1 - center);
  // Degenerate to a line when the circumcenter runs away.
  if (std::abs(center) > 1e12 * std::max(radius / 1e12, std::max(scale, 1e-300)))
    return GeneralizedCircle::line(p1, p3 - p1);
  return GeneralizedCircle::circle(center, radius);
}

}  // namespace

GeneralizedCircle mobius_map_circle(const MobiusTransform& m, const GeneralizedCircle& gc) {
  // Witness points: 120 degrees apart for circles, {p, p +/- dir} for lines.
  cplx w[3];
  double scale;
  if (gc.is_line()) {
    const auto& l = gc.as_line();
    w[0] = l.point - l.direction;
    w[1] = l.point;
    w[2] = l.point + l.direction;
    scale = std::max(1.0, std::abs(l.point));
  } else {
    const auto& c = gc.as_circle();
    for (int k = 0; k < 3; ++k) {
      const double t = 2.0 * M_PI * k / 3.0;
      w[k] = c.center + c.radius * cplx(std::cos(t), std::sin(t));
    }
    scale = std::max(c.radius, std::abs(c.center));
  }

  const ExtendedComplex pole = m.pole();
  const bool pole_on_curve = !pole.is_inf() && gc.dist(pole.value) <= 1e-10 * std::max(1.0, scale);
  if (pole_on_curve) {
    // Move witnesses away from the pole, then fit a line through two images.
    cplx img[3];
    int got = 0;
    for (int k = 0; k < 16 && got < 2; ++k) {
      cplx p;
      if (gc.is_line()) {
        const auto& l = gc.as_line();
        p = l.point + (1.0 + 0.5 * k) * l.direction;
      } else {
        const auto& c = gc.as_circle();
        const double t = 2.0 * M_PI * (k + 0.25) / 16.0;
        p = c.center + c.radius * cplx(std::cos(t), std::sin(t));
      }
      if (std::abs(p - pole.value) < 1e-6 * std::max(1.0, scale)) continue;
      const ExtendedComplex q = mobius_apply(m, ExtendedComplex(p));
      if (q.is_inf()) continue;
      img[got++] = q.value;
    }
    if (got < 2) fail(errc::bad_config, "could not find line witnesses");
    return GeneralizedCircle::line(img[0], img[1] - img[0]);
  }

  cplx img[3];
  for (int k = 0; k < 3; ++k) {
    const ExtendedComplex q = mobius_apply(m, ExtendedComplex(w[k]));
    if (q.is_inf()) fail(errc::bad_config, "witness hit the pole unexpectedly");
    img[k] = q.value;
  }
  const double img_scale = std::max({std::abs(img[0]), std::abs(img[1]), std::abs(img[2])});
  return fit_through(img[0], img[1], img[2], img_scale);
}

ExtendedComplex reflect_over(const GeneralizedCircle& gc, const ExtendedComplex& z) {
  if (gc.is_line()) {
    const auto& l = gc.as_line();
    if (z.is_inf()) return z;
    const cplx w = (z.value - l.point) / l.direction;
    return ExtendedComplex(l.point + l.direction * std::conj(w));
  }
  const auto& c = gc.as_circle();
  if (z.is_inf()) return ExtendedComplex(c.center);
  if (z.value == c.center) return ExtendedComplex::inf();
  return ExtendedComplex(c.center + c.radius * c.radius / std::conj(z.value - c.center));
}

}  // namespace bmcx
