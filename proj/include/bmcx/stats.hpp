#pragma once

#include <cstdint>
#include <vector>

#include "bmcx/engine.hpp"

namespace bmcx {

// regularized upper incomplete gamma Q(a, x)
double igamc(double a, double x);

// survival function of the chi-square distribution
double chi2_sf(double x, int df);

struct BinCounts {
  std::vector<double> edges;         // for angle bins: arc endpoints in radians
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
};

// equal arcs of the circle |z - center| = r, indexed by angle in [-pi, pi)
BinCounts bin_arcs(const std::vector<PathRecord>& records, cplx center, int nbins);

// bins on the real line: edges[0] < ... < edges[m]; values outside are dropped
BinCounts bin_by_edges(const std::vector<double>& xs, const std::vector<double>& edges);

// Pearson statistic against expected probabilities; returns the p-value with
// df = bins - 1.
double chi2_gof_pvalue(const BinCounts& obs, const std::vector<double>& probs);

// two-sample chi-square homogeneity test over shared bins
double chi2_two_sample_pvalue(const BinCounts& a, const BinCounts& b);

// two-sample Kolmogorov-Smirnov distance
double ks_distance(std::vector<double> a, std::vector<double> b);

}  // namespace bmcx
