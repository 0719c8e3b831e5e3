#include <doctest.h>

#include <cmath>
#include <random>

#include "bmcx/poisson.hpp"
#include "bmcx/series.hpp"

using namespace bmcx;

namespace {

// log-modulus series around 1: b_n = b_{-n} = (-1)^(n-1)/(2n)
PowerSeries log_modulus_series(int order) {
  PowerSeries s;
  s.center = cplx(1, 0);
  s.zcoeffs.assign(order + 1, cplx(0.0));
  s.conjcoeffs.assign(order, cplx(0.0));
  for (int n = 1; n <= order; ++n) {
    const double b = (n % 2 == 1 ? 1.0 : -1.0) / (2.0 * n);
    s.zcoeffs[n] = cplx(b, 0);
    s.conjcoeffs[n - 1] = cplx(b, 0);
  }
  return s;
}

// principal-argument series around 1: b_n = -i(-1)^(n-1)/(2n), b_{-n} = conj
PowerSeries arg_series(int order) {
  PowerSeries s;
  s.center = cplx(1, 0);
  s.zcoeffs.assign(order + 1, cplx(0.0));
  s.conjcoeffs.assign(order, cplx(0.0));
  for (int n = 1; n <= order; ++n) {
    const double b = (n % 2 == 1 ? 1.0 : -1.0) / (2.0 * n);
    s.zcoeffs[n] = cplx(0, -b);
    s.conjcoeffs[n - 1] = cplx(0, b);
  }
  return s;
}

std::mt19937_64& rng() {
  static std::mt19937_64 mt(7012);
  return mt;
}

}  // namespace

TEST_CASE("radius of convergence estimates") {
  std::vector<cplx> ones(65, cplx(1.0));
  CHECK(radius_of_convergence(ones) == doctest::Approx(1.0).epsilon(1e-2));

  std::vector<cplx> geo(65);
  for (int n = 0; n < 65; ++n) geo[n] = cplx(std::pow(2.0, n), 0);
  CHECK(radius_of_convergence(geo) == doctest::Approx(0.5).epsilon(1e-2));

  // 1/n! underflows to zero well inside the tail window, marking the
  // estimate as infinite
  std::vector<cplx> fact(400, cplx(0.0));
  double f = 1.0;
  for (int n = 0; n < 400; ++n) {
    fact[n] = cplx(1.0 / f, 0.0);
    f *= (n + 1.0);
  }
  CHECK(std::isinf(radius_of_convergence(fact)));
}

TEST_CASE("series evaluation against closed forms") {
  const PowerSeries lm = log_modulus_series(40);
  CHECK(std::abs(series_eval(lm, cplx(1.1, 0)) - cplx(std::log(1.1), 0)) < 1e-10);

  const PowerSeries as = arg_series(40);
  const cplx z = std::polar(1.0, 0.1);
  CHECK(std::abs(series_eval(as, z) - cplx(0.1, 0)) < 1e-8);

  CHECK_THROWS_AS(series_eval(lm, cplx(3.0, 0)), error);
}

TEST_CASE("derivatives split the two parts") {
  PowerSeries f;  // analytic: 1 + 2z + 3z^2
  f.zcoeffs = {cplx(1), cplx(2), cplx(3)};
  const PowerSeries dz = derivative_z(f);
  // evaluate inside the conservative tail-estimate radius of the short list
  CHECK(std::abs(series_eval(dz, cplx(0.05, 0.05)) - (cplx(2) + cplx(6) * cplx(0.05, 0.05))) < 1e-14);
  const PowerSeries dzb = derivative_zbar(f);
  CHECK(std::abs(series_eval(dzb, cplx(0.2, 0.1))) == 0.0);

  const PowerSeries lm = log_modulus_series(30);
  // d/dz of ln|z| is 1/(2z)
  const PowerSeries lmd = derivative_z(lm);
  CHECK(std::abs(series_eval(lmd, cplx(1.1, 0)) - cplx(1.0 / 2.2, 0)) < 1e-9);
}

TEST_CASE("boundary coefficients recover Fourier modes") {
  const int m = 64;
  std::vector<cplx> cosv(m), constv(m), e2(m);
  for (int k = 0; k < m; ++k) {
    const double t = 2 * M_PI * k / m;
    cosv[k] = cplx(std::cos(t), 0);
    constv[k] = cplx(7, 0);
    e2[k] = std::polar(1.0, 2 * t);
  }
  const PowerSeries a = boundary_coefficients(cosv, 1.0, 8);
  CHECK(std::abs(a.zcoeffs[1] - cplx(0.5, 0)) < 1e-12);
  CHECK(std::abs(a.conjcoeffs[0] - cplx(0.5, 0)) < 1e-12);
  for (int n = 0; n <= 8; ++n)
    if (n != 1) CHECK(std::abs(a.zcoeffs[n]) < 1e-12);
  for (int n = 2; n <= 8; ++n) CHECK(std::abs(a.conjcoeffs[n - 1]) < 1e-12);

  const PowerSeries b = boundary_coefficients(constv, 1.0, 8);
  CHECK(std::abs(b.zcoeffs[0] - cplx(7, 0)) < 1e-12);
  for (int n = 1; n <= 8; ++n) {
    CHECK(std::abs(b.zcoeffs[n]) < 1e-12);
    CHECK(std::abs(b.conjcoeffs[n - 1]) < 1e-12);
  }

  const PowerSeries c = boundary_coefficients(e2, 1.0, 8);
  CHECK(std::abs(c.zcoeffs[2] - cplx(1, 0)) < 1e-12);
  CHECK(std::abs(c.zcoeffs[1]) < 1e-12);
  CHECK(std::abs(c.conjcoeffs[1]) < 1e-12);

  CHECK_THROWS_AS(boundary_coefficients(cosv, 1.0, 20), error);
}

TEST_CASE("coefficients agree across radii") {
  // h = Re z + 0.3 harmonic; sampled on two circles about 0.2
  auto h = [](cplx z) { return z.real() + 0.3; };
  const cplx z0(0.2, 0.0);
  const int m = 128;
  PowerSeries s1, s2;
  for (int pass = 0; pass < 2; ++pass) {
    const double r = pass == 0 ? 0.4 : 0.7;
    std::vector<cplx> samples(m);
    for (int k = 0; k < m; ++k) {
      const double t = 2 * M_PI * k / m;
      samples[k] = cplx(h(z0 + std::polar(r, t)), 0);
    }
    (pass == 0 ? s1 : s2) = boundary_coefficients(samples, r, 12, z0);
  }
  for (int n = 0; n <= 12; ++n)
    CHECK(std::abs(s1.zcoeffs[n] - s2.zcoeffs[n]) < 1e-8);
}

TEST_CASE("harmonic conjugate") {
  PowerSeries re;  // Re z about 0: b_1 = b_{-1} = 1/2
  re.zcoeffs = {cplx(0), cplx(0.5, 0)};
  re.conjcoeffs = {cplx(0.5, 0)};
  const PowerSeries im = harmonic_conjugate(re, 0.0);
  for (int k = 0; k < 16; ++k) {
    const cplx z = std::polar(0.8, 2 * M_PI * k / 16.0);
    CHECK(std::abs(series_eval(im, z) - cplx(z.imag(), 0)) < 1e-13);
  }

  // conjugate of the log-modulus series is the argument series
  const PowerSeries lm = log_modulus_series(24);
  const PowerSeries conj_lm = harmonic_conjugate(lm, 0.0);
  const PowerSeries as = arg_series(24);
  for (std::size_t n = 0; n < conj_lm.zcoeffs.size(); ++n)
    CHECK(std::abs(conj_lm.zcoeffs[n] - as.zcoeffs[n]) < 1e-15);

  // h + i conj(h) is analytic: the conjugate parts cancel
  for (std::size_t n = 0; n < lm.conjcoeffs.size(); ++n)
    CHECK(std::abs(lm.conjcoeffs[n] + cplx(0, 1) * conj_lm.conjcoeffs[n]) < 1e-14);

  PowerSeries c7;
  c7.zcoeffs = {cplx(7, 0)};
  const PowerSeries c7c = harmonic_conjugate(c7, 2.5);
  CHECK(std::abs(series_eval(c7c, cplx(0.1, 0.1)) - cplx(2.5, 0)) < 1e-15);

  PowerSeries notreal;
  notreal.zcoeffs = {cplx(0), cplx(1, 0)};
  CHECK_THROWS_AS(harmonic_conjugate(notreal, 0.0), error);

  // involution: conj(conj(h)) = -h + const
  const PowerSeries twice = harmonic_conjugate(conj_lm, 0.0);
  for (int k = 0; k < 12; ++k) {
    const cplx z = cplx(1, 0) + std::polar(0.5, 2 * M_PI * k / 12.0);
    const double lhs = series_eval(twice, z).real();
    const double rhs = -series_eval(lm, z).real();
    CHECK(std::fabs(lhs - rhs) < 1e-9);
  }
}

TEST_CASE("poisson kernel forms and normalization") {
  for (double th : {0.0, 0.5, 2.0}) CHECK(poisson_kernel(0.0, th, KernelForm::quotient) == doctest::Approx(1.0));
  CHECK(poisson_kernel(0.5, 0.0, KernelForm::quotient) == doctest::Approx(3.0).epsilon(1e-14));

  // truncation at |n| <= 200: geometric tail ~ 2 r^201/|1-re^(i th)| ~ 1.4e-9
  const double q = poisson_kernel(0.9, 1.0, KernelForm::quotient);
  const double s = poisson_kernel(0.9, 1.0, KernelForm::series, 200);
  CHECK(std::fabs(q - s) < 2e-9);

  std::uniform_real_distribution<double> U(0, 1);
  for (int k = 0; k < 200; ++k) {
    const double r = 0.999 * U(rng());
    const double th = 2 * M_PI * U(rng());
    CHECK(poisson_kernel(r, th, KernelForm::quotient) > 0.0);
    CHECK(poisson_kernel(r, th, KernelForm::series) > 0.0);
  }

  // (1/2pi) integral of P_r over the circle is 1
  for (double r : {0.3, 0.9, 0.99}) {
    const int m = 8192;
    double sum = 0;
    for (int k = 0; k < m; ++k) sum += poisson_kernel(r, 2 * M_PI * k / m, KernelForm::quotient);
    CHECK(std::fabs(sum / m - 1.0) < 1e-10);
  }
}

TEST_CASE("poisson integral examples") {
  CHECK(std::fabs(poisson_integral([](double) { return 1.0; }, cplx(0.3, 0.2)) - 1.0) < 1e-12);
  CHECK(std::fabs(poisson_integral([](double t) { return std::cos(t); }, cplx(0.5, 0)) - 0.5) < 1e-10);
  const double arclen = 1.3;
  const double p = poisson_integral([&](double t) { return t < arclen ? 1.0 : 0.0; }, cplx(0, 0));
  CHECK(std::fabs(p - arclen / (2 * M_PI)) < 1e-3);  // indicator data: trapezoid is first order

  // maximum principle surrogate
  auto f = [](double t) { return std::sin(3 * t) + 0.5 * std::cos(t); };
  double mx = -1e9;
  for (int k = 0; k < 4096; ++k) mx = std::max(mx, f(2 * M_PI * k / 4096));
  for (cplx a : {cplx(0.2, 0.3), cplx(-0.7, 0.1), cplx(0, 0.9)})
    CHECK(poisson_integral(f, a) <= mx + 1e-10);
}

TEST_CASE("parseval sums") {
  PowerSeries idm;
  idm.zcoeffs = {cplx(0), cplx(1)};
  CHECK(parseval_mean_square(idm, 1.0) == doctest::Approx(1.0));

  PowerSeries sq;
  sq.zcoeffs = {cplx(1), cplx(2), cplx(1)};
  CHECK(parseval_mean_square(sq, 1.0) == doctest::Approx(6.0));

  PowerSeries koebe;
  koebe.zcoeffs.push_back(cplx(0));
  for (int n = 1; n <= 50; ++n) koebe.zcoeffs.push_back(cplx(n, 0));
  const double sum = parseval_mean_square(koebe, 0.5);
  const int m = 4096;
  double quad = 0;
  for (int k = 0; k < m; ++k)
    quad += std::norm(series_eval(koebe, std::polar(0.5, 2 * M_PI * k / m)));
  CHECK(std::fabs(sum - quad / m) < 1e-10);
}

TEST_CASE("exit time from map coefficients") {
  CHECK(exit_time_from_series({cplx(1)}, 1) == doctest::Approx(0.5));
  CHECK(exit_time_from_series({cplx(2), cplx(1)}, 2) == doctest::Approx(2.5));

  const std::size_t n = 1000000;
  std::vector<cplx> arctan(n, cplx(0));
  for (std::size_t m = 1; 2 * m - 1 <= n; ++m)
    arctan[2 * m - 2] = cplx((m % 2 == 1 ? 1.0 : -1.0) / (2.0 * m - 1.0), 0);
  const double s = exit_time_from_series(arctan, n);
  CHECK(std::fabs(s - M_PI * M_PI / 16.0) < 1e-6);

  // partial sums are nondecreasing
  double prev = 0;
  for (std::size_t k : {10ul, 100ul, 1000ul, 10000ul}) {
    const double v = exit_time_from_series(arctan, k);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("Basel chain from odd squares") {
  const std::size_t n = 10000000;
  // exact partition: sum_{k<=2N} 1/k^2 = sum_{odd k<=2N} + (1/4) sum_{k<=N}
  auto sum_all = [](std::size_t m) {
    double s = 0;
    for (std::size_t k = m; k >= 1; --k) s += 1.0 / (static_cast<double>(k) * k);
    return s;
  };
  auto sum_odd = [](std::size_t m) {
    double s = 0;
    for (std::size_t k = m % 2 ? m : m - 1; k >= 3; k -= 2) s += 1.0 / (static_cast<double>(k) * k);
    return s + 1.0;
  };
  CHECK(std::fabs(sum_all(2000) - (sum_odd(2000) + 0.25 * sum_all(1000))) < 1e-14);
  // direct sum vs (4/3) of the odd sum
  CHECK(std::fabs(sum_all(4 * n) - (4.0 / 3.0) * sum_odd(2 * n)) < 1e-8);
  CHECK(std::fabs((4.0 / 3.0) * sum_odd(2 * n) - M_PI * M_PI / 6.0) < 1e-6);
}

TEST_CASE("wirtinger finite differences") {
  const auto conj_d = wirtinger_fd([](cplx z) { return std::conj(z); }, cplx(0.3, -0.4), 1e-5);
  CHECK(std::abs(conj_d.first) < 1e-8);
  CHECK(std::abs(conj_d.second - cplx(1, 0)) < 1e-8);

  const auto sq = wirtinger_fd([](cplx z) { return z * z; }, cplx(1, 0), 1e-5);
  CHECK(std::abs(sq.first - cplx(2, 0)) < 1e-6);
  CHECK(std::abs(sq.second) < 1e-6);

  // Laplacian of |z|^2 via 4 d/dz d/dzbar
  auto dzbar_abs2 = [](cplx z) {
    return wirtinger_fd([](cplx w) { return cplx(std::norm(w), 0); }, z, 1e-4).second;
  };
  const auto nested = wirtinger_fd(dzbar_abs2, cplx(0.7, -0.2), 1e-4);
  CHECK(std::abs(4.0 * nested.first - cplx(4, 0)) < 1e-5);
}

TEST_CASE("boundary coefficient round trip on random real series") {
  std::uniform_real_distribution<double> U(-1, 1);
  for (int rep = 0; rep < 10; ++rep) {
    PowerSeries s;
    s.zcoeffs.assign(17, cplx(0));
    s.conjcoeffs.assign(16, cplx(0));
    s.zcoeffs[0] = cplx(U(rng()), 0);
    for (int n = 1; n <= 16; ++n) {
      s.zcoeffs[n] = cplx(U(rng()), U(rng())) * std::pow(0.6, n);
      s.conjcoeffs[n - 1] = std::conj(s.zcoeffs[n]);
    }
    REQUIRE(s.is_real_valued());
    const int m = 256;
    std::vector<cplx> samples(m);
    for (int k = 0; k < m; ++k) samples[k] = series_eval(s, std::polar(0.7, 2 * M_PI * k / m));
    const PowerSeries rec = boundary_coefficients(samples, 0.7, 16);
    for (int n = 0; n <= 16; ++n) CHECK(std::abs(rec.zcoeffs[n] - s.zcoeffs[n]) < 1e-9);
    for (int n = 1; n <= 16; ++n) CHECK(std::abs(rec.conjcoeffs[n - 1] - s.conjcoeffs[n - 1]) < 1e-9);
  }
}

TEST_CASE("evaluation at the center returns b0 exactly") {
  PowerSeries s;
  s.center = cplx(0.3, -0.7);
  s.zcoeffs = {cplx(1.25, -0.5), cplx(3, 1), cplx(-2, 0.25)};
  s.conjcoeffs = {cplx(0.5, 0.125)};
  CHECK(series_eval(s, s.center) == s.b0());
}
