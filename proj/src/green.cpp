#include "bmcx/green.hpp"

#include <cmath>

namespace bmcx {

namespace {

void check_distinct(cplx z, cplx w) {
  if (z == w) fail(errc::coincident_points, "Green's function pole: z == w");
}

}  // namespace

double green_halfplane(cplx z, cplx w) {
  if (!(z.imag() > 0.0 && w.imag() > 0.0)) fail(errc::bad_config, "points must have Im > 0");
  check_distinct(z, w);
  return std::log(std::abs(z - std::conj(w)) / std::abs(z - w)) / M_PI;
}

double green_right_halfplane(cplx z, cplx w) {
  if (!(z.real() > 0.0 && w.real() > 0.0)) fail(errc::bad_config, "points must have Re > 0");
  check_distinct(z, w);
  return std::log(std::abs(z + std::conj(w)) / std::abs(z - w)) / M_PI;
}

double green_disk(cplx z, cplx w) {
  if (!(std::abs(z) < 1.0 && std::abs(w) < 1.0)) fail(errc::bad_config, "points must lie in the unit disk");
  check_distinct(z, w);
  return std::log(std::abs(1.0 - std::conj(z) * w) / std::abs(w - z)) / M_PI;
}

double green_winding(int n, cplx w) {
  if (n < 1) fail(errc::bad_config, "winding count must be >= 1");
  if (w == cplx(0.0)) fail(errc::origin_point, "winding Green's function undefined at 0");
  if (w == cplx(1.0)) fail(errc::pole_point, "winding Green's function pole at 1");
  const double r = std::abs(w);
  const double theta = std::atan2(w.imag(), w.real());
  const double root = std::exp(std::log(r) / (4.0 * n));
  // angles (theta + 2 pi k) / (4n) strictly inside (-pi/2, pi/2)
  double sum = 0.0;
  const double klo = (-2.0 * M_PI * n - theta) / (2.0 * M_PI);
  const double khi = (2.0 * M_PI * n - theta) / (2.0 * M_PI);
  for (long k = static_cast<long>(std::floor(klo)) - 1; k <= static_cast<long>(std::ceil(khi)) + 1; ++k) {
    const double phi = (theta + 2.0 * M_PI * k) / (4.0 * n);
    if (!(phi > -M_PI / 2.0 && phi < M_PI / 2.0)) continue;
    sum += green_right_halfplane(cplx(1.0, 0.0), root * cplx(std::cos(phi), std::sin(phi)));
  }
  return sum;
}

double green_project(const std::vector<std::pair<cplx, int>>& preimages,
                     const std::function<double(cplx)>& green_base) {
  double sum = 0.0;
  for (const auto& [w, mult] : preimages) sum += mult * green_base(w);
  return sum;
}

}  // namespace bmcx
