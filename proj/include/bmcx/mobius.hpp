#pragma once

#include <array>
#include <variant>

#include "bmcx/extended.hpp"

namespace bmcx {

// phi(z) = (az+b)/(cz+d), ad-bc != 0, acting on the Riemann sphere.
// Stored unnormalized; comparisons are projective (up to scale).
struct MobiusTransform {
  cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

  MobiusTransform() = default;
  MobiusTransform(cplx a_, cplx b_, cplx c_, cplx d_);

  static MobiusTransform identity() { return {}; }
  static MobiusTransform inversion() { return MobiusTransform(0.0, 1.0, 1.0, 0.0); }

  ExtendedComplex pole() const;  // preimage of infinity
};

ExtendedComplex mobius_apply(const MobiusTransform& m, const ExtendedComplex& z);
MobiusTransform mobius_compose(const MobiusTransform& m1, const MobiusTransform& m2);
MobiusTransform mobius_inverse(const MobiusTransform& m);

// The transform sending src[k] -> dst[k]; infinity allowed in either triple.
MobiusTransform mobius_three_point(const std::array<ExtendedComplex, 3>& src,
                                   const std::array<ExtendedComplex, 3>& dst);

// (z1-z3)(z2-z4) / ((z2-z3)(z1-z4)), with infinities handled by limits.
ExtendedComplex cross_ratio(const ExtendedComplex& z1, const ExtendedComplex& z2,
                            const ExtendedComplex& z3, const ExtendedComplex& z4);

// psi_a(z) = (z-a)/(1 - conj(a) z), the disk automorphism sending a to 0.
MobiusTransform disk_automorphism(cplx a);

struct CircleShape {
  cplx center;
  double radius;
};
struct LineShape {
  cplx point;
  cplx direction;  // unit modulus
};

// A circle on the sphere: a circle or a line in the plane.
struct GeneralizedCircle {
  std::variant<CircleShape, LineShape> shape;

  static GeneralizedCircle circle(cplx center, double radius);
  static GeneralizedCircle line(cplx point, cplx direction);

  bool is_line() const { return std::holds_alternative<LineShape>(shape); }
  const CircleShape& as_circle() const { return std::get<CircleShape>(shape); }
  const LineShape& as_line() const { return std::get<LineShape>(shape); }

  double dist(cplx z) const;  // unsigned distance from z to the circle/line
};

// Image of a generalized circle under a Mobius transform, computed from three
// witness points. The result is a line iff a pole of m lies on the circle.
GeneralizedCircle mobius_map_circle(const MobiusTransform& m, const GeneralizedCircle& gc);

// Reflection over a generalized circle via the canonical map per shape:
// circles use center + r^2/conj(z-center), lines use the mirror formula.
ExtendedComplex reflect_over(const GeneralizedCircle& gc, const ExtendedComplex& z);

}  // namespace bmcx
