#pragma once

#include <functional>

#include "bmcx/extended.hpp"

namespace bmcx {

// 5-point stencil Laplacian, O(h^2).
inline double fd_laplacian(const std::function<double(cplx)>& f, cplx z, double h) {
  return (f(z + cplx(h, 0.0)) + f(z - cplx(h, 0.0)) + f(z + cplx(0.0, h)) + f(z - cplx(0.0, h)) -
          4.0 * f(z)) /
         (h * h);
}

}  // namespace bmcx
