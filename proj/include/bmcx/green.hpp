#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "bmcx/extended.hpp"

// Closed-form Green's functions with the 1/pi singularity normalization, so
// each one is the occupation-time density of Brownian motion stopped at the
// corresponding exit or winding time. There is no whole-plane kind: with no
// stopping, the integral defining it diverges everywhere.
namespace bmcx {

// (1/pi) ln(|z - conj(w)| / |z - w|) on the upper half-plane
double green_halfplane(cplx z, cplx w);

// (1/pi) ln(|z + conj(w)| / |z - w|) on the right half-plane
double green_right_halfplane(cplx z, cplx w);

// (1/pi) ln(|1 - conj(z) w| / |w - z|) on the unit disk; reduces to
// (1/pi) ln(1/|w|) at z = 0
double green_disk(cplx z, cplx w);

// Green's function of the winding time tau_n for motion started at 1: the sum
// of right-half-plane terms over the 4n-th preimage angles in (-pi/2, pi/2).
double green_winding(int n, cplx w);

// Multiplicity-weighted projection: sum of mult * G_base(w') over the
// preimages of w under an analytic map.
double green_project(const std::vector<std::pair<cplx, int>>& preimages,
                     const std::function<double(cplx)>& green_base);

}  // namespace bmcx
