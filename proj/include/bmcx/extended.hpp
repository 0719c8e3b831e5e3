#pragma once

#include <cmath>
#include <complex>

#include "bmcx/error.hpp"

namespace bmcx {

using cplx = std::complex<double>;

// A point of the Riemann sphere: a finite complex value or the point at infinity.
// Equality is exact (componentwise); infinity equals only infinity.
struct ExtendedComplex {
  cplx value{0.0, 0.0};
  bool infinite = false;

  constexpr ExtendedComplex() = default;
  constexpr ExtendedComplex(double re) : value(re, 0.0) {}
  constexpr ExtendedComplex(cplx v) : value(v) {}

  static constexpr ExtendedComplex inf() {
    ExtendedComplex e;
    e.infinite = true;
    return e;
  }

  bool is_inf() const { return infinite; }
  cplx finite() const {
    if (infinite) fail(errc::indeterminate, "finite() called on the point at infinity");
    return value;
  }

  friend bool operator==(const ExtendedComplex& a, const ExtendedComplex& b) {
    if (a.infinite || b.infinite) return a.infinite && b.infinite;
    return a.value == b.value;
  }
  friend bool operator!=(const ExtendedComplex& a, const ExtendedComplex& b) { return !(a == b); }
};

// Point on the unit sphere in R^3; normalized at construction.
struct SpherePoint {
  double x1 = 0.0, x2 = 0.0, x3 = -1.0;

  SpherePoint() = default;
  SpherePoint(double a, double b, double c) {
    const double n = std::sqrt(a * a + b * b + c * c);
    if (n == 0.0) fail(errc::bad_config, "sphere point cannot be the origin");
    x1 = a / n;
    x2 = b / n;
    x3 = c / n;
  }
};

// (x1,x2,x3) -> x1/(1-x3) + i x2/(1-x3); the north pole maps to infinity.
inline ExtendedComplex stereo_project(const SpherePoint& p) {
  if (p.x3 >= 1.0) return ExtendedComplex::inf();
  return ExtendedComplex(cplx(p.x1 / (1.0 - p.x3), p.x2 / (1.0 - p.x3)));
}

// z = x+iy -> (2x, 2y, x^2+y^2-1) / (x^2+y^2+1); infinity maps to the north pole.
inline SpherePoint stereo_lift(const ExtendedComplex& z) {
  if (z.is_inf()) {
    SpherePoint p;
    p.x1 = 0.0;
    p.x2 = 0.0;
    p.x3 = 1.0;
    return p;
  }
  const double x = z.value.real(), y = z.value.imag();
  const double s = x * x + y * y;
  return SpherePoint(2.0 * x / (s + 1.0), 2.0 * y / (s + 1.0), (s - 1.0) / (s + 1.0));
}

}  // namespace bmcx
