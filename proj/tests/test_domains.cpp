#include <doctest.h>

#include <cmath>
#include <random>

#include "bmcx/domain.hpp"
#include "bmcx/numdiff.hpp"
#include "bmcx/schwarz_christoffel.hpp"

using namespace bmcx;

namespace {

std::mt19937_64& rng() {
  static std::mt19937_64 mt(90210);
  return mt;
}

double urand(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng());
}

// dense boundary polyline for ground-truth distances
std::vector<cplx> boundary_points(const Domain& d, int m) {
  std::vector<cplx> pts;
  pts.reserve(2 * m);
  switch (d.kind) {
    case Domain::Kind::disk:
      for (int k = 0; k < m; ++k) pts.push_back(d.center + std::polar(d.radius, 2 * M_PI * k / m));
      break;
    case Domain::Kind::annulus:
      for (int k = 0; k < m; ++k) {
        pts.push_back(std::polar(d.inner, 2 * M_PI * k / m));
        pts.push_back(std::polar(d.outer, 2 * M_PI * k / m));
      }
      break;
    case Domain::Kind::triangle: {
      const cplx v[3] = {cplx(1, 0), std::polar(1.0, 2 * M_PI / 3), std::polar(1.0, -2 * M_PI / 3)};
      for (int e = 0; e < 3; ++e)
        for (int k = 0; k < m; ++k)
          pts.push_back(v[e] + (static_cast<double>(k) / m) * (v[(e + 1) % 3] - v[e]));
      break;
    }
    case Domain::Kind::cardioid:
      for (int k = 0; k < m; ++k) {
        const double t = 2 * M_PI * k / m;
        pts.push_back(2.0 * (1 + std::cos(t)) * std::polar(1.0, t));
      }
      break;
    default:
      break;
  }
  return pts;
}

}  // namespace

TEST_CASE("membership basics") {
  CHECK(Domain::disk(cplx(0, 0), 1).contains(cplx(0, 0)));
  CHECK(!Domain::disk(cplx(0, 0), 1).contains(cplx(1, 0)));
  CHECK(Domain::cardioid().contains(cplx(1, 0)));
  CHECK(!Domain::annulus(1, 4).contains(cplx(0.5, 0)));
  CHECK(Domain::annulus(1, 4).contains(cplx(2, 0)));
  CHECK(Domain::halfplane().contains(cplx(5, 0.1)));
  CHECK(!Domain::halfplane().contains(cplx(0, -0.1)));
  CHECK(Domain::triangle().contains(cplx(0, 0)));
  CHECK(!Domain::triangle().contains(cplx(-0.51, 0)));
  CHECK(Domain::wedge(0, M_PI / 2).contains(cplx(1, 0.5)));
  CHECK(!Domain::wedge(0, M_PI / 2).contains(cplx(1, -0.5)));
  // wide wedge (opening > pi)
  const Domain wide = Domain::wedge(0, 1.5 * M_PI);
  CHECK(wide.contains(cplx(-1, 0.5)));
  CHECK(wide.contains(cplx(0, 1)));
  CHECK(!wide.contains(cplx(0.5, -0.5)));
}

TEST_CASE("every variant contains its basepoint") {
  for (const Domain& d : {Domain::disk(cplx(0.3, -1), 2.0), Domain::annulus(1, 4),
                          Domain::halfplane(), Domain::righthalf(), Domain::strip(-0.5, 2.0),
                          Domain::wedge(0.3, 2.0), Domain::triangle(), Domain::cardioid()}) {
    CHECK(d.contains(d.basepoint()));
    CHECK(d.dist_to_boundary(d.basepoint()) > 0.0);
  }
}

TEST_CASE("distance-to-boundary examples") {
  CHECK(Domain::disk(cplx(0, 0), 1).dist_to_boundary(cplx(0, 0)) == doctest::Approx(1.0));
  CHECK(Domain::strip(-M_PI / 4, M_PI / 4).dist_to_boundary(cplx(0, 3)) ==
        doctest::Approx(M_PI / 4));
  CHECK(Domain::triangle().dist_to_boundary(cplx(0, 0)) == doctest::Approx(0.5));
  CHECK_THROWS_AS(Domain::disk(cplx(0, 0), 1).dist_to_boundary(cplx(2, 0)), error);
}

TEST_CASE("distance is a conservative lower bound") {
  for (const Domain& d : {Domain::disk(cplx(0.5, 0.5), 1.5), Domain::annulus(1, 4),
                          Domain::triangle(), Domain::cardioid()}) {
    const auto bpts = boundary_points(d, 4096);
    REQUIRE(!bpts.empty());
    int tried = 0;
    while (tried < 300) {
      cplx z;
      if (d.kind == Domain::Kind::cardioid)
        z = std::polar(urand(0, 4.0), urand(-M_PI, M_PI));
      else if (d.kind == Domain::Kind::annulus)
        z = std::polar(urand(1.0, 4.0), urand(-M_PI, M_PI));
      else
        z = cplx(urand(-2, 2), urand(-2, 2));
      if (!d.contains(z)) continue;
      ++tried;
      double truth = 1e300;
      for (const cplx& b : bpts) truth = std::min(truth, std::abs(z - b));
      const double lb = d.dist_to_boundary(z);
      CHECK(lb > 0.0);
      CHECK(lb <= truth + 1e-6);  // sampling slack
    }
  }
}

TEST_CASE("closed-form harmonic references") {
  const Domain a = Domain::annulus(1, 4);
  CHECK(a.closed_form_harmonic(cplx(0, 2)) == doctest::Approx(std::log(2.0) / std::log(4.0)));
  const Domain s = Domain::strip(0, 1);
  CHECK(s.closed_form_harmonic(cplx(0.5, 7)) == doctest::Approx(0.5));
  const Domain w = Domain::wedge(0, M_PI / 2);
  CHECK(w.closed_form_harmonic(std::polar(2.0, M_PI / 4)) == doctest::Approx(0.5));
  CHECK(w.closed_form_harmonic(std::polar(1.0, M_PI / 8)) == doctest::Approx(0.75));
  CHECK_THROWS_AS(Domain::disk(cplx(0, 0), 1).closed_form_harmonic(cplx(0, 0)), error);

  // values stay strictly inside (0,1) in the interior
  for (int k = 0; k < 200; ++k) {
    const cplx z = std::polar(urand(1.01, 3.99), urand(-M_PI, M_PI));
    const double v = a.closed_form_harmonic(z);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("torsion closed forms") {
  const Domain tri = Domain::triangle();
  CHECK(std::fabs(tri.torsion(cplx(0, 0)) - 1.0 / 6.0) <= 1e-15);
  const Domain dsk = Domain::disk(cplx(0, 0), 1);
  CHECK(dsk.torsion(cplx(0, 0)) == doctest::Approx(0.5));
  const Domain stp = Domain::strip(-M_PI / 4, M_PI / 4);
  CHECK(stp.torsion(cplx(0, 0)) == doctest::Approx(M_PI * M_PI / 16.0));
  CHECK_THROWS_AS(Domain::strip(0, 1).torsion(cplx(0.5, 0)), error);
  CHECK_THROWS_AS(Domain::cardioid().torsion(cplx(1, 0)), error);

  // positive inside, vanishing toward the boundary (domains are open, so we
  // evaluate a hair inside)
  const auto tpts = boundary_points(tri, 400);
  for (const cplx& b : tpts) {
    const cplx just_in = b * (1.0 - 1e-10);
    if (tri.contains(just_in)) CHECK(std::fabs(tri.torsion(just_in)) < 1e-9);
  }
  int found = 0;
  while (found < 1000) {
    const cplx z(urand(-1, 1), urand(-1, 1));
    if (!tri.contains(z)) continue;
    ++found;
    CHECK(tri.torsion(z) > 0.0);
  }
}

TEST_CASE("finite-difference Laplacian checks") {
  const Domain tri = Domain::triangle();
  CHECK(std::fabs(fd_laplacian([&](cplx z) { return tri.torsion(z); }, cplx(0.1, 0.05), 1e-3) + 2.0) <
        1e-5);
  CHECK(std::fabs(fd_laplacian([](cplx z) { return std::log(std::abs(z)); }, cplx(1, 1), 1e-4)) <
        1e-6);
  CHECK(std::fabs(fd_laplacian([](cplx z) { return std::norm(z); }, cplx(-3.7, 2.2), 1e-3) - 4.0) <
        1e-6);

  // torsion has Laplacian -2 across variants
  const Domain dsk = Domain::disk(cplx(0, 0), 1);
  const Domain stp = Domain::strip(-M_PI / 4, M_PI / 4);
  for (int k = 0; k < 100; ++k) {
    const cplx zt(urand(-0.3, 0.3), urand(-0.3, 0.3));
    CHECK(std::fabs(fd_laplacian([&](cplx z) { return tri.torsion(z); }, zt, 1e-3) + 2.0) < 5e-4);
    const cplx zd = std::polar(urand(0, 0.8), urand(-M_PI, M_PI));
    CHECK(std::fabs(fd_laplacian([&](cplx z) { return dsk.torsion(z); }, zd, 1e-3) + 2.0) < 5e-4);
    const cplx zs(urand(-0.6, 0.6), urand(-1, 1));
    CHECK(std::fabs(fd_laplacian([&](cplx z) { return stp.torsion(z); }, zs, 1e-3) + 2.0) < 5e-4);
  }

  // stencil leaving the domain propagates an error from the closed form
  CHECK_THROWS_AS(fd_laplacian([&](cplx z) { return dsk.torsion(z); }, cplx(0.9999, 0), 1e-3),
                  error);
}

TEST_CASE("cardioid consistency with the squared disk") {
  const Domain card = Domain::cardioid();
  int inner = 0;
  while (inner < 1000) {
    const cplx w = std::polar((1.0 - 1e-6) * std::sqrt(urand(0, 1)), urand(-M_PI, M_PI));
    const cplx z = (1.0 + w) * (1.0 + w);
    CHECK(card.contains(z));
    ++inner;
  }
  // just outside the disk the image leaves the cardioid, except near the
  // cusp preimage w = -1 where the square covers the cusp region again
  int outer = 0;
  while (outer < 1000) {
    const cplx w = std::polar(urand(1.0 + 1e-3, 1.05), urand(-M_PI, M_PI));
    if (std::abs(w + 1.0) < 0.3) continue;
    const cplx z = (1.0 + w) * (1.0 + w);
    CHECK(!card.contains(z));
    ++outer;
  }
}

TEST_CASE("boundary hit fractions land on the boundary") {
  for (const Domain& d : {Domain::disk(cplx(0, 0), 1), Domain::annulus(1, 4), Domain::strip(0, 1),
                          Domain::wedge(0, M_PI / 2), Domain::triangle(), Domain::cardioid(),
                          Domain::halfplane(), Domain::righthalf()}) {
    int done = 0;
    while (done < 100) {
      cplx a = d.basepoint() + cplx(urand(-0.2, 0.2), urand(-0.2, 0.2));
      if (!d.contains(a)) continue;
      const cplx dir = std::polar(urand(0.5, 6.0), urand(-M_PI, M_PI));
      const cplx b = a + dir;
      if (d.contains(b)) continue;
      ++done;
      const double t = d.boundary_hit_fraction(a, b);
      REQUIRE(t > 0.0);
      REQUIRE(t <= 1.0);
      const cplx hit = a + t * (b - a);
      // the crossing point separates inside from outside
      CHECK(d.contains(a + (t * 0.999999) * (b - a)));
      CHECK(!d.contains(a + std::min(1.0, t * 1.000001 + 1e-12) * (b - a)));
      (void)hit;
    }
  }
}

TEST_CASE("projection lands on the boundary") {
  for (const Domain& d : {Domain::disk(cplx(0, 0), 1), Domain::annulus(1, 4), Domain::strip(0, 1),
                          Domain::wedge(0, M_PI / 2), Domain::triangle(), Domain::cardioid(),
                          Domain::halfplane(), Domain::righthalf()}) {
    const auto bpts = boundary_points(d, 2048);
    int done = 0;
    while (done < 50) {
      cplx z = d.basepoint() + cplx(urand(-0.3, 0.3), urand(-0.3, 0.3));
      if (!d.contains(z)) continue;
      ++done;
      const cplx p = d.project_to_boundary(z);
      if (!bpts.empty()) {
        double gap = 1e300;
        for (const cplx& b : bpts) gap = std::min(gap, std::abs(p - b));
        CHECK(gap < 1e-2);
      } else {
        CHECK(!d.contains(p));  // half-planes, strip, wedge: on the edge
      }
    }
  }
}

TEST_CASE("domain mini-language") {
  const Domain d = parse_domain("disk:0.5,-1,2");
  CHECK(d.kind == Domain::Kind::disk);
  CHECK(d.center == cplx(0.5, -1));
  CHECK(d.radius == 2.0);
  CHECK(parse_domain("annulus:1,4").kind == Domain::Kind::annulus);
  CHECK(parse_domain("halfplane").kind == Domain::Kind::halfplane);
  CHECK(parse_domain("righthalf").kind == Domain::Kind::righthalf);
  CHECK(parse_domain("strip:-0.785,0.785").kind == Domain::Kind::strip);
  CHECK(parse_domain("wedge:0,1.57").kind == Domain::Kind::wedge);
  CHECK(parse_domain("triangle").kind == Domain::Kind::triangle);
  CHECK(parse_domain("cardioid").kind == Domain::Kind::cardioid);

  CHECK_THROWS_WITH_AS(parse_domain("blob:1"), doctest::Contains("blob"), error);
  CHECK_THROWS_WITH_AS(parse_domain("disk:1,2"), doctest::Contains("disk"), error);
  CHECK_THROWS_WITH_AS(parse_domain("disk:0,0,-1"), doctest::Contains("radius"), error);
  CHECK_THROWS_WITH_AS(parse_domain("annulus:4,1"), doctest::Contains("annulus"), error);
  CHECK_THROWS_WITH_AS(parse_domain("strip:1,zebra"), doctest::Contains("zebra"), error);
}

TEST_CASE("schwarz-christoffel forward map") {
  // single corner with exponent 1/2: agrees with z^(1/2)/(1/2)
  const std::vector<double> pv{0.0}, al{0.5};
  const cplx f = sc_forward_map(pv, al, cplx(1.0), cplx(0.0), cplx(0, 1));
  const cplx ref = std::pow(cplx(0, 1), 0.5) / 0.5;
  CHECK(std::abs(f - ref) < 1e-8);

  // two half-angle corners at -1, 1: the map is arcsin
  const std::vector<double> pv2{-1.0, 1.0}, al2{0.5, 0.5};
  for (cplx z : {cplx(0, 0), cplx(0, 1), cplx(0.5, 1)}) {
    const cplx g = sc_forward_map(pv2, al2, cplx(1.0), cplx(0.0), z);
    CHECK(std::abs(g - std::asin(z)) < 1e-7);
  }
  // finite at the prevertices themselves (integrable singularity)
  const cplx fp = sc_forward_map(pv2, al2, cplx(1.0), cplx(0.0), cplx(1, 0));
  CHECK(std::abs(fp - cplx(M_PI / 2, 0)) < 1e-7);
  const cplx fm = sc_forward_map(pv2, al2, cplx(1.0), cplx(0.0), cplx(-1, 0));
  CHECK(std::abs(fm - cplx(-M_PI / 2, 0)) < 1e-7);

  // scale and offset
  const cplx h = sc_forward_map(pv2, al2, cplx(0, 2), cplx(3, 1), cplx(0, 1));
  CHECK(std::abs(h - (cplx(3, 1) + cplx(0, 2) * std::asin(cplx(0, 1)))) < 1e-7);

  CHECK_THROWS_AS(sc_forward_map(pv2, {0.5, -0.1}, cplx(1.0), cplx(0.0), cplx(0, 1)), error);
  CHECK_THROWS_AS(sc_forward_map({1.0, -1.0}, al2, cplx(1.0), cplx(0.0), cplx(0, 1)), error);
  CHECK_THROWS_AS(sc_forward_map(pv2, al2, cplx(1.0), cplx(0.0), cplx(0.5, -1)), error);
}

TEST_CASE("conformal image variant carries its chart") {
  const Domain base = Domain::disk(cplx(0, 0), 1.0);
  const Domain img = Domain::image_of(
      base, [](cplx z) { return (1.0 + z) * (1.0 + z); }, [](cplx z) { return 2.0 * (1.0 + z); });
  CHECK(img.kind == Domain::Kind::conformal_image);
  CHECK(std::abs(img.basepoint() - cplx(1, 0)) < 1e-15);
  CHECK(img.bounded());
  CHECK_THROWS_AS(img.contains(cplx(1, 0)), error);
  CHECK_THROWS_AS(img.dist_to_boundary(cplx(1, 0)), error);
  CHECK(img.to_string() == "image(disk:0,0,1)");
}
