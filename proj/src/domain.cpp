#include "bmcx/domain.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "bmcx/domain_kernels.hpp"

namespace bmcx {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935274463;

using kern::make_annulus;
using kern::make_disk;
using kern::make_strip;
using kern::make_wedge;

}  // namespace

Domain Domain::disk(cplx center, double radius) {
  if (!(radius > 0.0)) fail(errc::bad_config, "radius must be positive");
  Domain d;
  d.kind = Kind::disk;
  d.center = center;
  d.radius = radius;
  return d;
}

Domain Domain::annulus(double inner, double outer) {
  if (!(inner > 0.0 && outer > inner)) fail(errc::bad_config, "annulus needs 0 < r < R");
  Domain d;
  d.kind = Kind::annulus;
  d.inner = inner;
  d.outer = outer;
  return d;
}

Domain Domain::halfplane() {
  Domain d;
  d.kind = Kind::halfplane;
  return d;
}

Domain Domain::righthalf() {
  Domain d;
  d.kind = Kind::righthalf;
  return d;
}

Domain Domain::strip(double lo, double hi) {
  if (!(hi > lo)) fail(errc::bad_config, "strip needs a < b");
  Domain d;
  d.kind = Kind::strip;
  d.lo = lo;
  d.hi = hi;
  return d;
}

Domain Domain::wedge(double theta1, double theta2) {
  if (!(theta2 > theta1 && theta2 - theta1 < 2.0 * M_PI))
    fail(errc::bad_config, "wedge needs t1 < t2 < t1 + 2pi");
  Domain d;
  d.kind = Kind::wedge;
  d.theta1 = theta1;
  d.theta2 = theta2;
  return d;
}

Domain Domain::triangle() {
  Domain d;
  d.kind = Kind::triangle;
  return d;
}

Domain Domain::cardioid() {
  Domain d;
  d.kind = Kind::cardioid;
  return d;
}

Domain Domain::image_of(Domain base, std::function<cplx(cplx)> f, std::function<cplx(cplx)> fp) {
  Domain d;
  d.kind = Kind::conformal_image;
  d.base = std::make_shared<Domain>(std::move(base));
  d.chart = std::move(f);
  d.chart_deriv = std::move(fp);
  return d;
}

bool Domain::contains(cplx z) const {
  const double x = z.real(), y = z.imag();
  switch (kind) {
    case Kind::disk:
      return make_disk(*this).contains(x, y);
    case Kind::annulus:
      return make_annulus(*this).contains(x, y);
    case Kind::halfplane:
      return kern::HalfplaneK{}.contains(x, y);
    case Kind::righthalf:
      return kern::RighthalfK{}.contains(x, y);
    case Kind::strip:
      return make_strip(*this).contains(x, y);
    case Kind::wedge:
      return make_wedge(*this).contains(x, y);
    case Kind::triangle:
      return kern::TriangleK{}.contains(x, y);
    case Kind::cardioid:
      return kern::CardioidK{}.contains(x, y);
    case Kind::conformal_image:
      fail(errc::unsupported_variant, "conformal image has no direct membership test");
  }
  return false;
}

double Domain::dist_to_boundary(cplx z) const {
  if (!contains(z)) fail(errc::outside_domain, "point outside the domain");
  const double x = z.real(), y = z.imag();
  switch (kind) {
    case Kind::disk:
      return make_disk(*this).dist(x, y);
    case Kind::annulus:
      return make_annulus(*this).dist(x, y);
    case Kind::halfplane:
      return kern::HalfplaneK{}.dist(x, y);
    case Kind::righthalf:
      return kern::RighthalfK{}.dist(x, y);
    case Kind::strip:
      return make_strip(*this).dist(x, y);
    case Kind::wedge:
      return make_wedge(*this).dist(x, y);
    case Kind::triangle:
      return kern::TriangleK{}.dist(x, y);
    case Kind::cardioid:
      return kern::CardioidK{}.dist(x, y);
    case Kind::conformal_image:
      fail(errc::unsupported_variant, "conformal image has no direct boundary distance");
  }
  return 0.0;
}

double Domain::closed_form_harmonic(cplx z) const {
  if (!contains(z)) fail(errc::outside_domain, "point outside the domain");
  switch (kind) {
    case Kind::annulus:
      return (std::log(outer) - std::log(std::abs(z))) / (std::log(outer) - std::log(inner));
    case Kind::wedge: {
      // continuous argument inside the wedge, measured from the theta1 edge
      const cplx w = z * cplx(std::cos(theta1), -std::sin(theta1));
      const double phi = std::atan2(w.imag(), w.real());
      const double rel = phi >= 0.0 ? phi : phi + 2.0 * M_PI;
      return 1.0 - rel / (theta2 - theta1);
    }
    case Kind::strip:
      return (hi - z.real()) / (hi - lo);
    default:
      fail(errc::unsupported_variant, "closed-form harmonic: annulus, wedge, or strip only");
  }
}

double Domain::torsion(cplx z) const {
  if (!contains(z)) fail(errc::outside_domain, "point outside the domain");
  switch (kind) {
    case Kind::disk:
      return (radius * radius - std::norm(z - center)) / 2.0;
    case Kind::triangle: {
      const cplx w(-0.5, 0.8660254037844386467637232);
      const cplx a = z;
      const cplx p1 = a + std::conj(a) + 1.0;
      const cplx p2 = w * a + std::conj(w * a) + 1.0;
      const cplx p3 = w * w * a + std::conj(w * w * a) + 1.0;
      return (p1 * p2 * p3).real() / 6.0;
    }
    case Kind::strip: {
      if (std::abs(lo + M_PI / 4.0) > 1e-12 || std::abs(hi - M_PI / 4.0) > 1e-12)
        fail(errc::unsupported_variant, "strip torsion is closed-form only for (-pi/4, pi/4)");
      return M_PI * M_PI / 16.0 - z.real() * z.real();
    }
    default:
      fail(errc::unsupported_variant, "torsion: disk, triangle, or strip(-pi/4,pi/4) only");
  }
}

bool Domain::bounded() const {
  switch (kind) {
    case Kind::disk:
    case Kind::annulus:
    case Kind::triangle:
    case Kind::cardioid:
      return true;
    case Kind::conformal_image:
      return base->bounded();  // only charts of bounded bases are used here
    default:
      return false;
  }
}

double Domain::diameter() const {
  switch (kind) {
    case Kind::disk:
      return 2.0 * radius;
    case Kind::annulus:
      return 2.0 * outer;
    case Kind::triangle:
      return kSqrt3;
    case Kind::cardioid:
      return 4.0;
    default:
      return std::numeric_limits<double>::infinity();
  }
}

cplx Domain::basepoint() const {
  switch (kind) {
    case Kind::disk:
      return center;
    case Kind::annulus:
      return cplx(0.5 * (inner + outer), 0.0);
    case Kind::halfplane:
      return cplx(0.0, 1.0);
    case Kind::righthalf:
      return cplx(1.0, 0.0);
    case Kind::strip:
      return cplx(0.5 * (lo + hi), 0.0);
    case Kind::wedge: {
      const double mid = 0.5 * (theta1 + theta2);
      return cplx(std::cos(mid), std::sin(mid));
    }
    case Kind::triangle:
      return cplx(0.0, 0.0);
    case Kind::cardioid:
      return cplx(1.0, 0.0);
    case Kind::conformal_image:
      return chart(base->basepoint());
  }
  return cplx(0.0, 0.0);
}

cplx Domain::project_to_boundary(cplx z) const {
  switch (kind) {
    case Kind::disk: {
      const cplx d = z - center;
      const double a = std::abs(d);
      if (a == 0.0) return center + cplx(radius, 0.0);
      return center + d * (radius / a);
    }
    case Kind::annulus: {
      const double a = std::abs(z);
      const double target = (a - inner < outer - a) ? inner : outer;
      return z * (target / a);
    }
    case Kind::halfplane:
      return cplx(z.real(), 0.0);
    case Kind::righthalf:
      return cplx(0.0, z.imag());
    case Kind::strip:
      return cplx(z.real() - lo < hi - z.real() ? lo : hi, z.imag());
    case Kind::wedge: {
      const auto k = make_wedge(*this);
      auto proj = [&](double c, double s) {
        const double u = c * z.real() + s * z.imag();
        if (u <= 0.0) return cplx(0.0, 0.0);
        return cplx(u * c, u * s);
      };
      const cplx p1 = proj(k.c1, k.s1), p2 = proj(k.c2, k.s2);
      return std::abs(z - p1) <= std::abs(z - p2) ? p1 : p2;
    }
    case Kind::triangle: {
      const kern::TriangleK k{};
      int best = 0;
      double bm = k.margin(z.real(), z.imag(), 0);
      for (int j = 1; j < 3; ++j) {
        const double m = k.margin(z.real(), z.imag(), j);
        if (m < bm) {
          bm = m;
          best = j;
        }
      }
      constexpr double c[3] = {1.0, -0.5, -0.5};
      constexpr double s[3] = {0.0, 0.8660254037844386467637232, -0.8660254037844386467637232};
      return z - bm * cplx(c[best], s[best]);
    }
    case Kind::cardioid: {
      const double t = std::atan2(z.imag(), z.real());
      const double rb = 2.0 * (1.0 + std::cos(t));
      return rb * cplx(std::cos(t), std::sin(t));
    }
    case Kind::conformal_image:
      fail(errc::unsupported_variant, "conformal image has no boundary projection");
  }
  return z;
}

namespace {

// smallest t in (0,1] with |a + t d - c| = r, if any
bool circle_hit(cplx a, cplx d, cplx c, double r, double& t_out) {
  const cplx f = a - c;
  const double A = std::norm(d);
  const double B = 2.0 * (f.real() * d.real() + f.imag() * d.imag());
  const double C = std::norm(f) - r * r;
  const double disc = B * B - 4.0 * A * C;
  if (disc < 0.0 || A == 0.0) return false;
  const double sq = std::sqrt(disc);
  double best = std::numeric_limits<double>::infinity();
  for (const double t : {(-B - sq) / (2.0 * A), (-B + sq) / (2.0 * A)})
    if (t > 0.0 && t <= 1.0 && t < best) best = t;
  if (!std::isfinite(best)) return false;
  t_out = best;
  return true;
}

}  // namespace

double Domain::boundary_hit_fraction(cplx a, cplx b) const {
  const cplx d = b - a;
  double t = std::numeric_limits<double>::infinity();
  switch (kind) {
    case Kind::disk: {
      double tc;
      if (circle_hit(a, d, center, radius, tc)) t = tc;
      break;
    }
    case Kind::annulus: {
      double tc;
      if (circle_hit(a, d, cplx(0.0), inner, tc)) t = std::min(t, tc);
      if (circle_hit(a, d, cplx(0.0), outer, tc)) t = std::min(t, tc);
      break;
    }
    case Kind::halfplane:
      if (b.imag() < a.imag()) t = a.imag() / (a.imag() - b.imag());
      break;
    case Kind::righthalf:
      if (b.real() < a.real()) t = a.real() / (a.real() - b.real());
      break;
    case Kind::strip: {
      if (b.real() < lo) t = std::min(t, (a.real() - lo) / (a.real() - b.real()));
      if (b.real() > hi) t = std::min(t, (hi - a.real()) / (b.real() - a.real()));
      break;
    }
    case Kind::triangle: {
      const kern::TriangleK k{};
      for (int j = 0; j < 3; ++j) {
        const double ma = k.margin(a.real(), a.imag(), j);
        const double mb = k.margin(b.real(), b.imag(), j);
        if (mb < 0.0 && ma > 0.0) t = std::min(t, ma / (ma - mb));
      }
      break;
    }
    default:
      break;  // wedge and cardioid fall through to bisection
  }
  if (t > 0.0 && t <= 1.0 && std::isfinite(t)) return t;

  // bisection on membership; a is inside, b outside
  double t0 = 0.0, t1 = 1.0;
  for (int it = 0; it < 80; ++it) {
    const double tm = 0.5 * (t0 + t1);
    if (contains(a + tm * d))
      t0 = tm;
    else
      t1 = tm;
  }
  return t1;
}

std::string Domain::to_string() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::disk:
      os << "disk:" << center.real() << "," << center.imag() << "," << radius;
      break;
    case Kind::annulus:
      os << "annulus:" << inner << "," << outer;
      break;
    case Kind::halfplane:
      os << "halfplane";
      break;
    case Kind::righthalf:
      os << "righthalf";
      break;
    case Kind::strip:
      os << "strip:" << lo << "," << hi;
      break;
    case Kind::wedge:
      os << "wedge:" << theta1 << "," << theta2;
      break;
    case Kind::triangle:
      os << "triangle";
      break;
    case Kind::cardioid:
      os << "cardioid";
      break;
    case Kind::conformal_image:
      os << "image(" << base->to_string() << ")";
      break;
  }
  return os.str();
}

namespace {

std::vector<double> parse_numbers(std::string_view text, std::size_t expect,
                                  std::string_view what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    double v = 0.0;
    const auto* first = tok.data();
    const auto* last = tok.data() + tok.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
      fail(errc::parse_error, std::string(what) + ": bad number '" + std::string(tok) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (out.size() != expect)
    fail(errc::parse_error, std::string(what) + ": expected " + std::to_string(expect) +
                                " numbers, got " + std::to_string(out.size()));
  return out;
}

}  // namespace

Domain parse_domain(std::string_view text) {
  const std::size_t colon = text.find(':');
  const std::string_view tag = text.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

  if (tag == "disk") {
    const auto v = parse_numbers(rest, 3, "disk");
    if (!(v[2] > 0.0)) fail(errc::parse_error, "disk: radius must be positive");
    return Domain::disk(cplx(v[0], v[1]), v[2]);
  }
  if (tag == "annulus") {
    const auto v = parse_numbers(rest, 2, "annulus");
    if (!(v[0] > 0.0 && v[1] > v[0])) fail(errc::parse_error, "annulus: need 0 < r < R");
    return Domain::annulus(v[0], v[1]);
  }
  if (tag == "halfplane") {
    if (!rest.empty()) fail(errc::parse_error, "halfplane takes no parameters");
    return Domain::halfplane();
  }
  if (tag == "righthalf") {
    if (!rest.empty()) fail(errc::parse_error, "righthalf takes no parameters");
    return Domain::righthalf();
  }
  if (tag == "strip") {
    const auto v = parse_numbers(rest, 2, "strip");
    if (!(v[1] > v[0])) fail(errc::parse_error, "strip: need a < b");
    return Domain::strip(v[0], v[1]);
  }
  if (tag == "wedge") {
    const auto v = parse_numbers(rest, 2, "wedge");
    if (!(v[1] > v[0])) fail(errc::parse_error, "wedge: need t1 < t2");
    return Domain::wedge(v[0], v[1]);
  }
  if (tag == "triangle") {
    if (!rest.empty()) fail(errc::parse_error, "triangle takes no parameters");
    return Domain::triangle();
  }
  if (tag == "cardioid") {
    if (!rest.empty()) fail(errc::parse_error, "cardioid takes no parameters");
    return Domain::cardioid();
  }
  fail(errc::parse_error, "unknown domain tag '" + std::string(tag) + "'");
}

}  // namespace bmcx
