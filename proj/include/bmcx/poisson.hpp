#pragma once

#include <functional>

#include "bmcx/extended.hpp"

namespace bmcx {

// Equivalent forms for P_r(theta); all agree to ~1e-13 for r <= 0.99.
enum class KernelForm { quotient, cosine, series, real_part };

// Poisson kernel of the unit disk. The series form truncates adaptively
// unless n_max >= 0 pins the truncation order.
double poisson_kernel(double r, double theta, KernelForm form, int n_max = -1);

// (1/2pi) int boundary(t) P_r(theta - t) dt at a = r e^{i theta}, |a| < 1,
// by the periodic trapezoid rule on m points.
double poisson_integral(const std::function<double(double)>& boundary, cplx a, int m = 4096);

}  // namespace bmcx
