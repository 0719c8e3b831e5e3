#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "bmcx/extended.hpp"

namespace bmcx {

// Planar regions with membership, a conservative distance-to-boundary lower
// bound (never an overestimate, never zero in the interior), and the
// closed-form reference functions used as simulation oracles.
struct Domain {
  enum class Kind {
    disk,
    annulus,
    halfplane,   // upper half-plane Im z > 0
    righthalf,   // right half-plane Re z > 0
    strip,       // lo < Re z < hi
    wedge,       // theta1 < arg z < theta2
    triangle,    // equilateral triangle with vertices 1, w, w^2, w = e^{2pi i/3}
    cardioid,    // boundary r = 2(1+cos t); image of the unit disk under (1+z)^2
    conformal_image,
  };

  Kind kind = Kind::disk;
  cplx center{0.0, 0.0};
  double radius = 1.0;          // disk
  double inner = 1.0, outer = 2.0;  // annulus (center 0)
  double lo = 0.0, hi = 1.0;        // strip bounds on Re z
  double theta1 = 0.0, theta2 = M_PI / 2.0;  // wedge

  std::shared_ptr<Domain> base;          // conformal_image
  std::function<cplx(cplx)> chart;       // f on base
  std::function<cplx(cplx)> chart_deriv; // f'

  static Domain disk(cplx center, double radius);
  static Domain annulus(double inner, double outer);
  static Domain halfplane();
  static Domain righthalf();
  static Domain strip(double lo, double hi);
  static Domain wedge(double theta1, double theta2);
  static Domain triangle();
  static Domain cardioid();
  static Domain image_of(Domain base, std::function<cplx(cplx)> f, std::function<cplx(cplx)> fp);

  bool contains(cplx z) const;
  double dist_to_boundary(cplx z) const;  // throws outside_domain when !contains(z)

  // P(exit through the distinguished boundary part): annulus -> inner circle,
  // wedge -> the theta1 ray, strip -> the left wall.
  double closed_form_harmonic(cplx z) const;

  // Expected exit time h with Laplacian -2: disk, triangle, strip(-pi/4,pi/4).
  double torsion(cplx z) const;

  bool bounded() const;
  double diameter() const;  // +inf when unbounded
  cplx basepoint() const;

  // Nearest boundary point for z in the interior shell (cardioid projects
  // radially about the cusp).
  cplx project_to_boundary(cplx z) const;

  // First crossing parameter t in (0,1] of the segment a + t(b-a), a inside,
  // b outside; exact for algebraic variants, bisection for the cardioid.
  double boundary_hit_fraction(cplx a, cplx b) const;

  std::string to_string() const;
};

// Mini-language: disk:cx,cy,r | annulus:r,R | halfplane | righthalf |
// strip:a,b | wedge:t1,t2 | triangle | cardioid.
Domain parse_domain(std::string_view text);

}  // namespace bmcx
