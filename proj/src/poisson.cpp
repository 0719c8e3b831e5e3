#include "bmcx/poisson.hpp"

#include <cmath>

namespace bmcx {

double poisson_kernel(double r, double theta, KernelForm form, int n_max) {
  if (!(r >= 0.0 && r < 1.0)) fail(errc::bad_config, "poisson kernel needs 0 <= r < 1");
  switch (form) {
    case KernelForm::quotient: {
      const cplx den = cplx(1.0) - r * cplx(std::cos(theta), -std::sin(theta));
      return (1.0 - r * r) / std::norm(den);
    }
    case KernelForm::cosine:
      return (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(theta) + r * r);
    case KernelForm::series: {
      int n = n_max;
      if (n < 0) {
        // geometric tail 2 r^{N+1} / (1-r) below 5e-14
        if (r < 1e-12) {
          n = 2;
        } else {
          n = static_cast<int>(std::ceil(std::log(2.5e-14 * (1.0 - r)) / std::log(r)));
          n = std::max(n, 2);
        }
      }
      double sum = 0.0;
      for (int k = n; k >= 1; --k) sum += std::pow(r, k) * std::cos(k * theta);
      return 1.0 + 2.0 * sum;
    }
    case KernelForm::real_part: {
      const cplx e(std::cos(theta), std::sin(theta));
      return ((cplx(1.0) + r * e) / (cplx(1.0) - r * e)).real();
    }
  }
  fail(errc::bad_config, "unknown kernel form");
}

double poisson_integral(const std::function<double(double)>& boundary, cplx a, int m) {
  const double r = std::abs(a);
  if (!(r < 1.0)) fail(errc::bad_config, "poisson integral needs |a| < 1");
  const double theta = std::atan2(a.imag(), a.real());
  double sum = 0.0;
  for (int k = 0; k < m; ++k) {
    const double t = 2.0 * M_PI * k / m;
    sum += boundary(t) * poisson_kernel(r, theta - t, KernelForm::quotient);
  }
  return sum / m;
}

}  // namespace bmcx
