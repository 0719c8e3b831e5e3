#pragma once

#include <bit>
#include <cmath>
#include <cstdint>

#if defined(__AVX2__)
#include <immintrin.h>
#endif

// Lane abstraction shared by the scalar reference kernels (P = double) and the
// AVX2 kernels (P = pack4d). Every function here is a single IEEE operation per
// lane, so a kernel template instantiated at both types produces bit-identical
// per-lane results.
namespace bmcx::simd {

// ---- scalar lanes ----

inline double pset1d(double x) { return x; }
inline double vsqrt(double x) { return std::sqrt(x); }
inline double vabs(double x) { return std::fabs(x); }
inline double vmin(double a, double b) { return b < a ? b : a; }
inline double vmax(double a, double b) { return b > a ? b : a; }
inline double vfloor(double x) { return std::floor(x); }

inline bool vlt(double a, double b) { return a < b; }
inline bool vle(double a, double b) { return a <= b; }
inline bool vgt(double a, double b) { return a > b; }
inline bool vge(double a, double b) { return a >= b; }

inline bool vand(bool a, bool b) { return a && b; }
inline bool vor(bool a, bool b) { return a || b; }
inline bool vnot(bool a) { return !a; }
inline bool vany(bool a) { return a; }

inline double vselect(bool m, double a, double b) { return m ? a : b; }

// mantissa in [0.5, 1) and unbiased-by-1022 exponent, via the same bit
// manipulation the vector lanes use; x must be positive and normal.
inline double vfrexp(double x, double& mant) {
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
  const std::uint64_t eraw = bits >> 52;
  const std::uint64_t mbits = (bits & 0x000FFFFFFFFFFFFFull) | 0x3FE0000000000000ull;
  mant = std::bit_cast<double>(mbits);
  return static_cast<double>(eraw) - 1022.0;
}

template <class P>
struct pack_traits;

template <>
struct pack_traits<double> {
  using mask = bool;
  static constexpr int width = 1;
};

#if defined(__AVX2__)

struct pack4d {
  __m256d v;
};
struct pack4m {
  __m256d m;
};

inline pack4d pset1(double x) { return {_mm256_set1_pd(x)}; }
inline pack4d pload(const double* p) { return {_mm256_loadu_pd(p)}; }
inline void pstore(double* p, pack4d x) { _mm256_storeu_pd(p, x.v); }

inline pack4d operator+(pack4d a, pack4d b) { return {_mm256_add_pd(a.v, b.v)}; }
inline pack4d operator-(pack4d a, pack4d b) { return {_mm256_sub_pd(a.v, b.v)}; }
inline pack4d operator*(pack4d a, pack4d b) { return {_mm256_mul_pd(a.v, b.v)}; }
inline pack4d operator/(pack4d a, pack4d b) { return {_mm256_div_pd(a.v, b.v)}; }
inline pack4d operator-(pack4d a) { return {_mm256_sub_pd(_mm256_setzero_pd(), a.v)}; }

inline pack4d vsqrt(pack4d x) { return {_mm256_sqrt_pd(x.v)}; }
inline pack4d vabs(pack4d x) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFll));
  return {_mm256_and_pd(x.v, mask)};
}
inline pack4d vmin(pack4d a, pack4d b) { return {_mm256_min_pd(a.v, b.v)}; }
inline pack4d vmax(pack4d a, pack4d b) { return {_mm256_max_pd(a.v, b.v)}; }
inline pack4d vfloor(pack4d x) { return {_mm256_floor_pd(x.v)}; }

inline pack4m vlt(pack4d a, pack4d b) { return {_mm256_cmp_pd(a.v, b.v, _CMP_LT_OQ)}; }
inline pack4m vle(pack4d a, pack4d b) { return {_mm256_cmp_pd(a.v, b.v, _CMP_LE_OQ)}; }
inline pack4m vgt(pack4d a, pack4d b) { return {_mm256_cmp_pd(a.v, b.v, _CMP_GT_OQ)}; }
inline pack4m vge(pack4d a, pack4d b) { return {_mm256_cmp_pd(a.v, b.v, _CMP_GE_OQ)}; }

inline pack4m vand(pack4m a, pack4m b) { return {_mm256_and_pd(a.m, b.m)}; }
inline pack4m vor(pack4m a, pack4m b) { return {_mm256_or_pd(a.m, b.m)}; }
inline pack4m vnot(pack4m a) {
  const __m256d ones = _mm256_castsi256_pd(_mm256_set1_epi64x(-1ll));
  return {_mm256_xor_pd(a.m, ones)};
}
inline bool vany(pack4m a) { return _mm256_movemask_pd(a.m) != 0; }
inline int vmask_bits(pack4m a) { return _mm256_movemask_pd(a.m); }

inline pack4d vselect(pack4m m, pack4d a, pack4d b) { return {_mm256_blendv_pd(b.v, a.v, m.m)}; }

inline pack4d vfrexp(pack4d x, pack4d& mant) {
  const __m256i bits = _mm256_castpd_si256(x.v);
  const __m256i eraw = _mm256_srli_epi64(bits, 52);
  const __m256i mbits = _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFll)),
                                        _mm256_set1_epi64x(0x3FE0000000000000ll));
  mant = pack4d{_mm256_castsi256_pd(mbits)};
  // small unsigned ints to double: or in 2^52 and subtract it
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000ll);
  const __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(eraw, magic)),
                                  _mm256_set1_pd(4503599627370496.0));
  return pack4d{_mm256_sub_pd(e, _mm256_set1_pd(1022.0))};
}

template <>
struct pack_traits<pack4d> {
  using mask = pack4m;
  static constexpr int width = 4;
};

#endif  // __AVX2__

// Broadcast helper usable in templates: pbroad<P>(x).
template <class P>
inline P pbroad(double x);
template <>
inline double pbroad<double>(double x) {
  return x;
}
#if defined(__AVX2__)
template <>
inline pack4d pbroad<pack4d>(double x) {
  return pset1(x);
}
#endif

}  // namespace bmcx::simd
