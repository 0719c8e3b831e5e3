#include <doctest.h>

#include <cmath>

#include "bmcx/loewner.hpp"

using namespace bmcx;

namespace {

cplx closed_form_zero(cplx z, double t) {
  cplx g = std::sqrt(z * z + 4.0 * t);
  if (g.imag() < 0.0) g = -g;
  return g;
}

DrivingFunction sine_driver(double T, double grid_dt, double omega) {
  DrivingFunction d = DrivingFunction::zero(T, grid_dt);
  for (std::size_t k = 0; k < d.times.size(); ++k) d.values[k] = std::sin(omega * d.times[k]);
  return d;
}

}  // namespace

TEST_CASE("driving function construction and interpolation") {
  const auto z = DrivingFunction::zero(1.0, 0.1);
  CHECK(z.times.size() == 11);
  CHECK(z.at(0.55) == 0.0);

  const auto c = DrivingFunction::constant_driver(2.5, 1.0, 0.1);
  CHECK(c.at(0.0) == 2.5);
  CHECK(c.at(0.731) == 2.5);

  const auto s0 = DrivingFunction::sle(0.0, 1.0, 0.01, 5);
  for (double v : s0.values) CHECK(v == 0.0);

  const auto s = DrivingFunction::sle(2.0, 1.0, 0.01, 5);
  CHECK(s.values.front() == 0.0);
  CHECK(s.at(0.005) == doctest::Approx(0.5 * (s.values[0] + s.values[1])));
}

TEST_CASE("sle driver variance and Brownian scaling") {
  const int n = 4000;
  double v1 = 0.0, v2 = 0.0;
  for (int k = 0; k < n; ++k) {
    const auto d = DrivingFunction::sle(2.0, 1.0, 1e-3, 900, k);
    v1 += d.values.back() * d.values.back();
    // lambda(c^2 t)/c with c = 2 over horizon c^2 T = 4
    const auto d4 = DrivingFunction::sle(2.0, 4.0, 1e-3, 901, k);
    const double scaled = d4.values.back() / 2.0;
    v2 += scaled * scaled;
  }
  v1 /= n;
  v2 /= n;
  const double se = 2.0 * std::sqrt(2.0 / (n - 1.0));
  CHECK(std::fabs(v1 - 2.0) <= 3.0 * se);
  CHECK(std::fabs(v2 - 2.0) <= 3.0 * se);
}

TEST_CASE("chordal forward flow against the closed form") {
  // g_0 is the identity
  const auto tiny = DrivingFunction::zero(1e-6, 1e-7);
  CHECK(std::abs(std::get<cplx>(chordal_forward(cplx(0.4, 0.8), tiny, 1e-6, 1e-7)) - cplx(0.4, 0.8)) <
        1e-5);

  const auto drv = DrivingFunction::zero(1.0, 1e-4);
  // generic point
  const cplx g1 = std::get<cplx>(chordal_forward(cplx(1, 1), drv, 1.0, 1e-4));
  CHECK(std::abs(g1 - closed_form_zero(cplx(1, 1), 1.0)) < 1e-9);
  // the singular ray: i is absorbed at t = 1/4 and continues along the axis
  const cplx gi = std::get<cplx>(chordal_forward(cplx(0, 1), drv, 1.0, 1e-4));
  CHECK(std::abs(gi - cplx(std::sqrt(3.0), 0)) < 1e-6);

  // hydrodynamic normalization far away
  const cplx far = std::get<cplx>(chordal_forward(cplx(0, 1000), drv, 1.0, 1e-4));
  CHECK(std::abs(far - (cplx(0, 1000) + 2.0 / cplx(0, 1000))) < 1e-4);

  // translation equivariance with a constant driver
  const auto dc = DrivingFunction::constant_driver(0.7, 1.0, 1e-4);
  const cplx gc = std::get<cplx>(chordal_forward(cplx(0.7, 1.0), dc, 1.0, 1e-4));
  const cplx g0 = std::get<cplx>(chordal_forward(cplx(0.0, 1.0), drv, 1.0, 1e-4));
  CHECK(std::abs(gc - (g0 + 0.7)) < 1e-12);

  CHECK_THROWS_AS(chordal_forward(cplx(0, -1), drv, 1.0, 1e-4), error);
}

TEST_CASE("swallowed points report their time") {
  const auto dc = DrivingFunction::constant_driver(0.5, 1.0, 1e-4);
  const auto r = chordal_forward(cplx(0.5, 1e-8), dc, 1.0, 1e-4);
  REQUIRE(is_swallowed(r));
  CHECK(std::get<Swallowed>(r).time == 0.0);

  // under rough drivers every outcome is either a half-plane point or a
  // swallow time within the horizon
  for (int k = 0; k < 10; ++k) {
    const auto d = DrivingFunction::sle(8.0, 1.0, 1e-4, 77, k);
    const auto out = chordal_forward(cplx(0.1 * k - 0.5, 0.3), d, 1.0, 1e-4);
    if (is_swallowed(out)) {
      const double ts = std::get<Swallowed>(out).time;
      CHECK(ts > 0.0);
      CHECK(ts <= 1.0);
    } else {
      CHECK(std::get<cplx>(out).imag() > -1e-9);
    }
  }
}

TEST_CASE("step halving shows fourth-order error reduction") {
  const auto drv = sine_driver(2.0, 1e-6, 3.0);
  const cplx ref = std::get<cplx>(chordal_forward(cplx(0, 1), drv, 2.0, 1e-5));
  const double e1 = std::abs(std::get<cplx>(chordal_forward(cplx(0, 1), drv, 2.0, 0.025)) - ref);
  const double e2 = std::abs(std::get<cplx>(chordal_forward(cplx(0, 1), drv, 2.0, 0.0125)) - ref);
  CHECK(e1 / e2 >= 8.0);

  // the invariant's configuration sits at the roundoff floor: the protected
  // step reproduces the closed form exactly there
  const auto z0 = DrivingFunction::zero(1.0, 1.0);
  for (double dt : {1e-3, 5e-4}) {
    const cplx g = std::get<cplx>(chordal_forward(cplx(0, 1), z0, 1.0, dt));
    CHECK(std::abs(g - cplx(std::sqrt(3.0), 0)) < 1e-12);
  }
}

TEST_CASE("radial forward flow") {
  const auto drv = DrivingFunction::zero(1.0, 1e-4);  // angle 0: lambda = 1
  // w = 0 is fixed
  CHECK(std::abs(std::get<cplx>(radial_forward(cplx(0, 0), drv, 0.5, 1e-4))) == 0.0);

  // d/dt g at t=0 for lambda=1, w=1/2 is (1/2)(3/2)/(1/2) = 3/2
  const double h = 1e-6;
  const cplx g = std::get<cplx>(radial_forward(cplx(0.5, 0), drv, h, h));
  CHECK(std::fabs((g.real() - 0.5) / h - 1.5) < 1e-4);
  CHECK(std::abs(radial_vector_field(cplx(0.5, 0), cplx(1, 0)) - cplx(1.5, 0)) < 1e-15);

  // |g_t| is nondecreasing along the flow
  const auto sdrv = DrivingFunction::sle(1.0, 0.5, 1e-4, 13, 0);
  double prev = std::abs(cplx(0.3, 0.2));
  for (double t : {0.05, 0.1, 0.2, 0.3, 0.4, 0.5}) {
    const auto r = radial_forward(cplx(0.3, 0.2), sdrv, t, 1e-4);
    if (is_swallowed(r)) break;
    const double a = std::abs(std::get<cplx>(r));
    CHECK(a >= prev - 1e-10);
    prev = a;
  }

  CHECK_THROWS_AS(radial_forward(cplx(1.5, 0), drv, 1.0, 1e-3), error);
}

TEST_CASE("the two radial normalizations are negatives of each other") {
  for (cplx g : {cplx(0.3, 0.2), cplx(-0.1, 0.6), cplx(0.05, -0.4)}) {
    for (double th : {0.0, 1.2, -2.0}) {
      const cplx lam = std::polar(1.0, th);
      CHECK(std::abs(radial_vector_field(g, lam) + whole_plane_vector_field(g, lam)) < 1e-15);
    }
  }
}

TEST_CASE("trace of the zero driver is the vertical slit") {
  const auto drv = DrivingFunction::zero(1.0, 1e-4);
  const auto tr = chordal_trace(drv, 1.0, 1e-4, 32);
  for (const auto& p : tr) {
    CHECK(std::fabs(p.z.real()) < 1e-9);
    CHECK(p.z.imag() == doctest::Approx(2.0 * std::sqrt(p.t)).epsilon(1e-9));
  }
  // finer tip per the acceptance tolerance
  const auto fine = DrivingFunction::zero(1.0, 1e-5);
  const auto tr2 = chordal_trace(fine, 1.0, 1e-5, 4);
  CHECK(std::abs(tr2.back().z - cplx(0, 2)) < 1e-3);
}

TEST_CASE("constant drivers translate the trace") {
  const auto d0 = DrivingFunction::zero(0.5, 1e-4);
  const auto dc = DrivingFunction::constant_driver(1.3, 0.5, 1e-4);
  const auto t0 = chordal_trace(d0, 0.5, 1e-4, 16);
  const auto tc = chordal_trace(dc, 0.5, 1e-4, 16);
  REQUIRE(t0.size() == tc.size());
  for (std::size_t k = 0; k < t0.size(); ++k)
    CHECK(std::abs(tc[k].z - (t0[k].z + 1.3)) < 1e-9);
}

TEST_CASE("sle trace stays in the closed half-plane") {
  const auto d = DrivingFunction::sle(2.0, 1.0, 1e-4, 2024, 0);
  const auto tr = chordal_trace(d, 1.0, 1e-4, 256);
  for (const auto& p : tr) CHECK(p.z.imag() >= -1e-9);
}

TEST_CASE("forward flow maps trace points back to the driver") {
  const auto drv = DrivingFunction::zero(1.0, 1e-5);
  for (double s : {0.2, 0.5, 0.9}) {
    const cplx tip(0.0, 2.0 * std::sqrt(s));  // gamma(s)
    const auto r = chordal_forward(tip, drv, s, 1e-5);
    if (is_swallowed(r)) {
      CHECK(std::fabs(std::get<Swallowed>(r).time - s) < 1e-2);
    } else {
      CHECK(std::abs(std::get<cplx>(r) - cplx(drv.at(s), 0)) < 1e-2);
    }
  }
}

TEST_CASE("discrete chain keeps the hydrodynamic time parameter") {
  const auto d = DrivingFunction::sle(2.0, 1.0, 1e-3, 4096, 0);
  const cplx far(0, 1000);
  for (int tenth = 1; tenth <= 10; ++tenth) {
    const double t = 0.1 * tenth;
    const cplx g = chordal_discrete_forward(d, t, 1e-3, far);
    CHECK(std::abs(g - (far + 2.0 * t / far)) < 1e-4);
  }
}

TEST_CASE("loewner csv emission") {
  const auto d = DrivingFunction::sle(2.0, 0.01, 1e-3, 5, 0);
  const std::string dc = driver_to_csv(d);
  CHECK(dc.rfind("t,lambda\n", 0) == 0);
  const auto tr = chordal_trace(d, 0.01, 1e-3, 4);
  const std::string tc = trace_to_csv(tr);
  CHECK(tc.rfind("t,re,im\n", 0) == 0);
  CHECK(std::count(tc.begin(), tc.end(), '\n') == static_cast<long>(tr.size()) + 1);
}
