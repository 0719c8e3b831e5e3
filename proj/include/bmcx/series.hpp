#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "bmcx/extended.hpp"

namespace bmcx {

// Finite truncation of h(z) = b0 + sum b_{-n} conj(z-z0)^n + sum b_n (z-z0)^n.
// zcoeffs holds b_0..b_N; conjcoeffs holds b_{-1}..b_{-M}. Tail error is the
// caller's concern; every operation below is exact on the truncation.
struct PowerSeries {
  cplx center{0.0};
  std::vector<cplx> zcoeffs{cplx(0.0)};   // b_0, b_1, ...
  std::vector<cplx> conjcoeffs{};         // b_{-1}, b_{-2}, ...

  cplx b0() const { return zcoeffs.empty() ? cplx(0.0) : zcoeffs[0]; }
  std::size_t order() const;

  // b_{-n} = conj(b_n) for all n >= 1 and b_0 real, within tol.
  bool is_real_valued(double tol = 1e-12) const;
  bool is_analytic(double tol = 0.0) const;
};

// 1 / limsup |a_n|^{1/n}, estimated as 1/max over the tail half of the list.
// Returns +infinity when the estimate exceeds 1e6 (covers all-zero tails).
double radius_of_convergence(const std::vector<cplx>& coeffs);

// Estimated radius for evaluating a two-part series (min over both parts).
double series_radius(const PowerSeries& s);

// Horner evaluation of both parts. Throws outside_disk beyond the estimated radius.
cplx series_eval(const PowerSeries& s, cplx z);

PowerSeries derivative_z(const PowerSeries& s);
PowerSeries derivative_zbar(const PowerSeries& s);

// Fourier coefficients of uniform boundary samples h(z0 + r e^{i t_k}),
// t_k = 2 pi k / M: b_n = (1/(2 pi r^n)) integral h e^{-int} dt by the
// periodic trapezoid rule, negative frequencies giving the conjugate part.
// Requires M >= 4 n_max.
PowerSeries boundary_coefficients(const std::vector<cplx>& samples, double r, int n_max,
                                  cplx center = cplx(0.0));

// Conjugate series with alpha_{-n} = i b_{-n}, alpha_n = -i b_n, alpha_0 = c0;
// input must be real-valued.
PowerSeries harmonic_conjugate(const PowerSeries& s, double c0);

// sum |a_n|^2 r^{2n} over the analytic part (requires conjcoeffs empty/zero).
double parseval_mean_square(const PowerSeries& s, double r);

// (1/2) sum_{n=1}^{N} |a_n|^2 for the coefficients a_1.. of a conformal map
// f : D -> W with f(0) = a; the partial sums increase to E_a[T_W].
// Terms are added smallest-index-last (reverse order) to limit rounding drift.
double exit_time_from_series(const std::vector<cplx>& coeffs, std::size_t n_terms);

// Central-difference Wirtinger derivatives (df/dz, df/dzbar) at z with step h.
std::pair<cplx, cplx> wirtinger_fd(const std::function<cplx(cplx)>& f, cplx z, double h);

}  // namespace bmcx
