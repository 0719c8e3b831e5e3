#include "bmcx/stats.hpp"

#include <algorithm>
#include <cmath>

namespace bmcx {

namespace {

double gamma_series(double a, double x) {
  double ap = a, sum = 1.0 / a, del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_cfrac(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double igamc(double a, double x) {
  if (x < 0.0 || a <= 0.0) fail(errc::bad_config, "igamc needs a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_series(a, x);
  return gamma_cfrac(a, x);
}

double chi2_sf(double x, int df) { return igamc(0.5 * df, 0.5 * x); }

BinCounts bin_arcs(const std::vector<PathRecord>& records, cplx center, int nbins) {
  BinCounts b;
  b.edges.resize(nbins + 1);
  for (int k = 0; k <= nbins; ++k) b.edges[k] = -M_PI + 2.0 * M_PI * k / nbins;
  b.counts.assign(nbins, 0);
  for (const auto& r : records) {
    if (r.censored) continue;
    const cplx d = r.exit - center;
    const double a = std::atan2(d.imag(), d.real());
    int k = static_cast<int>((a + M_PI) / (2.0 * M_PI) * nbins);
    k = std::clamp(k, 0, nbins - 1);
    ++b.counts[k];
    ++b.total;
  }
  return b;
}

BinCounts bin_by_edges(const std::vector<double>& xs, const std::vector<double>& edges) {
  BinCounts b;
  b.edges = edges;
  b.counts.assign(edges.size() - 1, 0);
  for (double x : xs) {
    const auto it = std::upper_bound(edges.begin(), edges.end(), x);
    if (it == edges.begin() || it == edges.end()) continue;
    ++b.counts[static_cast<std::size_t>(it - edges.begin()) - 1];
    ++b.total;
  }
  return b;
}

double chi2_gof_pvalue(const BinCounts& obs, const std::vector<double>& probs) {
  if (probs.size() != obs.counts.size()) fail(errc::bad_config, "bin/probability mismatch");
  double stat = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const double e = probs[k] * static_cast<double>(obs.total);
    if (e <= 0.0) fail(errc::bad_config, "expected bin count must be positive");
    const double d = static_cast<double>(obs.counts[k]) - e;
    stat += d * d / e;
  }
  return chi2_sf(stat, static_cast<int>(probs.size()) - 1);
}

double chi2_two_sample_pvalue(const BinCounts& a, const BinCounts& b) {
  if (a.counts.size() != b.counts.size()) fail(errc::bad_config, "bin mismatch");
  const double na = static_cast<double>(a.total), nb = static_cast<double>(b.total);
  double stat = 0.0;
  int dof = -1;
  for (std::size_t k = 0; k < a.counts.size(); ++k) {
    const double ca = static_cast<double>(a.counts[k]);
    const double cb = static_cast<double>(b.counts[k]);
    if (ca + cb == 0.0) continue;
    const double ea = (ca + cb) * na / (na + nb);
    const double eb = (ca + cb) * nb / (na + nb);
    stat += (ca - ea) * (ca - ea) / ea + (cb - eb) * (cb - eb) / eb;
    ++dof;
  }
  if (dof < 1) return 1.0;
  return chi2_sf(stat, dof);
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace bmcx
