#include "bmcx/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bmcx {

std::size_t PowerSeries::order() const {
  return std::max(zcoeffs.empty() ? 0 : zcoeffs.size() - 1, conjcoeffs.size());
}

bool PowerSeries::is_real_valued(double tol) const {
  if (std::abs(b0().imag()) > tol) return false;
  const std::size_t n = std::max(zcoeffs.size() > 0 ? zcoeffs.size() - 1 : 0, conjcoeffs.size());
  for (std::size_t k = 1; k <= n; ++k) {
    const cplx bp = k < zcoeffs.size() ? zcoeffs[k] : cplx(0.0);
    const cplx bm = k - 1 < conjcoeffs.size() ? conjcoeffs[k - 1] : cplx(0.0);
    if (std::abs(bm - std::conj(bp)) > tol) return false;
  }
  return true;
}

bool PowerSeries::is_analytic(double tol) const {
  for (const cplx& c : conjcoeffs)
    if (std::abs(c) > tol) return false;
  return true;
}

double radius_of_convergence(const std::vector<cplx>& coeffs) {
  const std::size_t n = coeffs.size();
  if (n < 2) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (std::size_t k = n / 2; k < n; ++k) {
    if (k == 0) continue;
    const double a = std::abs(coeffs[k]);
    if (a > 0.0) m = std::max(m, std::pow(a, 1.0 / static_cast<double>(k)));
  }
  if (m < 1e-6) return std::numeric_limits<double>::infinity();
  return 1.0 / m;
}

double series_radius(const PowerSeries& s) {
  double r = radius_of_convergence(s.zcoeffs);
  if (!s.conjcoeffs.empty()) {
    std::vector<cplx> shifted;
    shifted.reserve(s.conjcoeffs.size() + 1);
    shifted.push_back(cplx(0.0));
    shifted.insert(shifted.end(), s.conjcoeffs.begin(), s.conjcoeffs.end());
    r = std::min(r, radius_of_convergence(shifted));
  }
  return r;
}

cplx series_eval(const PowerSeries& s, cplx z) {
  const cplx w = z - s.center;
  const double radius = series_radius(s);
  if (!(std::abs(w) < radius))
    fail(errc::outside_disk, "evaluation point outside the estimated disk of convergence");
  cplx zpart(0.0);
  for (std::size_t k = s.zcoeffs.size(); k-- > 0;) zpart = zpart * w + s.zcoeffs[k];
  cplx cpart(0.0);
  const cplx wb = std::conj(w);
  for (std::size_t k = s.conjcoeffs.size(); k-- > 0;) cpart = cpart * wb + s.conjcoeffs[k];
  return zpart + cpart * wb;
}

PowerSeries derivative_z(const PowerSeries& s) {
  PowerSeries d;
  d.center = s.center;
  d.zcoeffs.assign(std::max<std::size_t>(s.zcoeffs.size(), 1) - 1, cplx(0.0));
  if (d.zcoeffs.empty()) d.zcoeffs.push_back(cplx(0.0));
  for (std::size_t n = 1; n < s.zcoeffs.size(); ++n)
    d.zcoeffs[n - 1] = static_cast<double>(n) * s.zcoeffs[n];
  return d;
}

PowerSeries derivative_zbar(const PowerSeries& s) {
  PowerSeries d;
  d.center = s.center;
  d.zcoeffs.assign(1, s.conjcoeffs.empty() ? cplx(0.0) : s.conjcoeffs[0]);
  for (std::size_t n = 2; n <= s.conjcoeffs.size(); ++n)
    d.conjcoeffs.push_back(static_cast<double>(n) * s.conjcoeffs[n - 1]);
  return d;
}

PowerSeries boundary_coefficients(const std::vector<cplx>& samples, double r, int n_max,
                                  cplx center) {
  const std::size_t m = samples.size();
  if (n_max < 0 || m < 4 * static_cast<std::size_t>(std::max(n_max, 1)))
    fail(errc::insufficient_samples, "need M >= 4*n_max uniform boundary samples");
  if (!(r > 0.0)) fail(errc::bad_config, "boundary radius must be positive");

  PowerSeries s;
  s.center = center;
  s.zcoeffs.assign(static_cast<std::size_t>(n_max) + 1, cplx(0.0));
  s.conjcoeffs.assign(static_cast<std::size_t>(n_max), cplx(0.0));

  for (int n = 0; n <= n_max; ++n) {
    cplx pos(0.0), neg(0.0);
    for (std::size_t k = 0; k < m; ++k) {
      const double t = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(m);
      const cplx e(std::cos(n * t), std::sin(n * t));
      pos += samples[k] * std::conj(e);
      neg += samples[k] * e;
    }
    const double rn = std::pow(r, n);
    s.zcoeffs[static_cast<std::size_t>(n)] = pos / (static_cast<double>(m) * rn);
    if (n >= 1) s.conjcoeffs[static_cast<std::size_t>(n) - 1] = neg / (static_cast<double>(m) * rn);
  }
  return s;
}

PowerSeries harmonic_conjugate(const PowerSeries& s, double c0) {
  if (!s.is_real_valued()) fail(errc::not_real_valued, "harmonic conjugate needs a real-valued series");
  PowerSeries t;
  t.center = s.center;
  t.zcoeffs.assign(s.zcoeffs.size(), cplx(0.0));
  t.zcoeffs[0] = cplx(c0, 0.0);
  const cplx i(0.0, 1.0);
  for (std::size_t n = 1; n < s.zcoeffs.size(); ++n) t.zcoeffs[n] = -i * s.zcoeffs[n];
  t.conjcoeffs.assign(s.conjcoeffs.size(), cplx(0.0));
  for (std::size_t n = 0; n < s.conjcoeffs.size(); ++n) t.conjcoeffs[n] = i * s.conjcoeffs[n];
  return t;
}

double parseval_mean_square(const PowerSeries& s, double r) {
  if (!s.is_analytic(1e-300)) fail(errc::not_real_valued, "parseval sum needs an analytic series");
  double sum = 0.0;
  for (std::size_t n = s.zcoeffs.size(); n-- > 0;)
    sum += std::norm(s.zcoeffs[n]) * std::pow(r, 2.0 * static_cast<double>(n));
  return sum;
}

double exit_time_from_series(const std::vector<cplx>& coeffs, std::size_t n_terms) {
  const std::size_t n = std::min(n_terms, coeffs.size());
  double sum = 0.0;
  for (std::size_t k = n; k-- > 0;) sum += std::norm(coeffs[k]);
  return 0.5 * sum;
}

std::pair<cplx, cplx> wirtinger_fd(const std::function<cplx(cplx)>& f, cplx z, double h) {
  const cplx fxp = f(z + cplx(h, 0.0)), fxm = f(z - cplx(h, 0.0));
  const cplx fyp = f(z + cplx(0.0, h)), fym = f(z - cplx(0.0, h));
  const cplx fx = (fxp - fxm) / (2.0 * h);
  const cplx fy = (fyp - fym) / (2.0 * h);
  const cplx i(0.0, 1.0);
  return {0.5 * (fx - i * fy), 0.5 * (fx + i * fy)};
}

}  // namespace bmcx
