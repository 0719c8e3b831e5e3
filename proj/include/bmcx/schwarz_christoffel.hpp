#pragma once

#include <vector>

#include "bmcx/extended.hpp"

namespace bmcx {

// Forward Schwarz-Christoffel evaluation A + C int_0^z prod (zeta - z_j)^(a_j - 1) dzeta
// for strictly increasing real prevertices and interior angle ratios a_j in (0, 2].
// The integrand phase is normalized to be positive real on the real axis at the
// integration base point 0, and each power uses the principal branch continued
// from the upper half-plane. z must lie in the open upper half-plane or be a
// prevertex; the endpoint singularities are integrable and handled by the
// power-law substitution u = (zeta - z_j)^{a_j}.
cplx sc_forward_map(const std::vector<double>& prevertices, const std::vector<double>& exponents,
                    cplx scale, cplx offset, cplx z);

}  // namespace bmcx
