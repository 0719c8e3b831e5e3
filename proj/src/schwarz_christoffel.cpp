#include "bmcx/schwarz_christoffel.hpp"

#include <algorithm>
#include <cmath>

namespace bmcx {

namespace {

constexpr int kGL = 16;
// 16-point Gauss-Legendre nodes/weights on [-1, 1]
constexpr double kNodes[kGL] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
constexpr double kWeights[kGL] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

struct ScSetup {
  const std::vector<double>* prev;
  const std::vector<double>* alpha;
  cplx phase;  // normalization making the integrand positive at the base point
};

// product over all factors, principal branches continued from the upper half-plane
cplx integrand(const ScSetup& s, cplx zeta) {
  cplx acc = s.phase;
  for (std::size_t j = 0; j < s.prev->size(); ++j) {
    const double a = (*s.alpha)[j];
    if (a == 1.0) continue;
    acc *= std::exp((a - 1.0) * std::log(zeta - (*s.prev)[j]));
  }
  return acc;
}

// product excluding factor j (for the endpoint substitution)
cplx integrand_excl(const ScSetup& s, cplx zeta, std::size_t skip) {
  cplx acc = s.phase;
  for (std::size_t j = 0; j < s.prev->size(); ++j) {
    if (j == skip) continue;
    const double a = (*s.alpha)[j];
    if (a == 1.0) continue;
    acc *= std::exp((a - 1.0) * std::log(zeta - (*s.prev)[j]));
  }
  return acc;
}

template <class F>
cplx gl16(const F& f, cplx a, cplx b) {
  const cplx mid = 0.5 * (a + b), half = 0.5 * (b - a);
  cplx sum(0.0);
  for (int k = 0; k < kGL; ++k) sum += kWeights[k] * f(mid + kNodes[k] * half);
  return sum * half;
}

template <class F>
cplx adaptive(const F& f, cplx a, cplx b, double tol, int depth) {
  const cplx whole = gl16(f, a, b);
  const cplx mid = 0.5 * (a + b);
  const cplx split = gl16(f, a, mid) + gl16(f, mid, b);
  if (std::abs(whole - split) <= tol || depth >= 24) return split;
  return adaptive(f, a, mid, 0.5 * tol, depth + 1) + adaptive(f, mid, b, 0.5 * tol, depth + 1);
}

// integral over [a, b] where a coincides with prevertex j (singular endpoint);
// u-substitution zeta = a + s^{1/alpha} (b - a) regularizes the power exactly
cplx singular_end(const ScSetup& s, std::size_t j, cplx a, cplx b, double tol) {
  const double al = (*s.alpha)[j];
  const cplx d = b - a;
  const cplx dpow = std::exp(al * std::log(d)) / al;
  auto g = [&](cplx sc) {
    const double sv = sc.real();  // path parameter s in [0,1]
    const double root = std::pow(sv, 1.0 / al);
    return dpow * integrand_excl(s, a + root * d, j);
  };
  return adaptive(g, cplx(0.0), cplx(1.0), tol, 0);
}

// integral over one segment whose interior avoids all prevertices
cplx segment(const ScSetup& s, cplx a, cplx b, double tol) {
  auto idx_at = [&](cplx p) -> long {
    if (p.imag() != 0.0) return -1;
    for (std::size_t j = 0; j < s.prev->size(); ++j)
      if (p.real() == (*s.prev)[j] && (*s.alpha)[j] != 1.0) return static_cast<long>(j);
    return -1;
  };
  const long ja = idx_at(a), jb = idx_at(b);
  auto raw = [&](cplx z) { return integrand(s, z); };
  if (ja < 0 && jb < 0) return adaptive(raw, a, b, tol, 0);
  const cplx mid = 0.5 * (a + b);
  cplx left = ja >= 0 ? singular_end(s, static_cast<std::size_t>(ja), a, mid, 0.5 * tol)
                      : adaptive(raw, a, mid, 0.5 * tol, 0);
  cplx right = jb >= 0 ? -singular_end(s, static_cast<std::size_t>(jb), b, mid, 0.5 * tol)
                       : adaptive(raw, mid, b, 0.5 * tol, 0);
  return left + right;
}

}  // namespace

cplx sc_forward_map(const std::vector<double>& prevertices, const std::vector<double>& exponents,
                    cplx scale, cplx offset, cplx z) {
  if (prevertices.size() != exponents.size())
    fail(errc::bad_config, "prevertex and exponent lists must match");
  for (double a : exponents)
    if (!(a > 0.0)) fail(errc::invalid_exponents, "exponents must be positive");
  for (std::size_t j = 1; j < prevertices.size(); ++j)
    if (!(prevertices[j] > prevertices[j - 1]))
      fail(errc::bad_config, "prevertices must be strictly increasing");

  const bool z_is_prevertex =
      z.imag() == 0.0 && std::any_of(prevertices.begin(), prevertices.end(),
                                     [&](double p) { return p == z.real(); });
  if (!(z.imag() > 0.0 || z_is_prevertex || z == cplx(0.0)))
    fail(errc::bad_config, "z must lie in the open upper half-plane or be a prevertex");

  ScSetup setup{&prevertices, &exponents, cplx(1.0)};
  {
    // rotate the integrand to be positive real at the base point 0
    double phi = 0.0;
    for (std::size_t j = 0; j < prevertices.size(); ++j)
      if (prevertices[j] > 0.0) phi += (exponents[j] - 1.0) * M_PI;
    setup.phase = std::exp(cplx(0.0, -phi));
  }

  if (z == cplx(0.0)) return offset;
  const double tol = 1e-11 * std::max(1.0, std::abs(z));

  cplx total(0.0);
  if (z.imag() > 0.0) {
    total = segment(setup, cplx(0.0), z, tol);
  } else {
    // along the real axis, splitting at every prevertex strictly between
    std::vector<double> stops{0.0};
    const double xa = std::min(0.0, z.real()), xb = std::max(0.0, z.real());
    for (double p : prevertices)
      if (p > xa && p < xb) stops.push_back(p);
    stops.push_back(z.real());
    std::sort(stops.begin(), stops.end());
    if (z.real() < 0.0) std::reverse(stops.begin(), stops.end());
    for (std::size_t k = 0; k + 1 < stops.size(); ++k)
      total += segment(setup, cplx(stops[k], 0.0), cplx(stops[k + 1], 0.0), tol);
  }
  return offset + scale * total;
}

}  // namespace bmcx
