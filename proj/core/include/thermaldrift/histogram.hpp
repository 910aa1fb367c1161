#pragma once

#include <span>
#include <vector>

namespace thermaldrift {

/// Density histogram: edges.size() == density.size() + 1 and the density
/// integrates to one over the binned range.
struct Histogram {
  std::vector<double> edges;
  std::vector<double> density;
};

/// Freedman-Diaconis bin edges with an optional lower bound on the bin
/// width (used to keep bins a few label-lattice spacings wide). Falls back
/// to a square-root rule when the IQR degenerates.
std::vector<double> freedman_diaconis_edges(std::vector<double> values,
                                            double min_width = 0.0,
                                            int max_bins = 400);

std::vector<double> uniform_edges(double lo, double hi, int bins);

/// Values outside the edge range are dropped; the result is normalized over
/// what remains.
Histogram histogram_from_values(std::span<const double> values,
                                const std::vector<double>& edges);

/// Weighted variant; weights are given in log scale and accumulated
/// stably (log-sum-exp against the largest weight).
Histogram histogram_from_log_weighted(std::span<const double> values,
                                      std::span<const double> log_weights,
                                      const std::vector<double>& edges);

/// Total variation distance between two histograms on identical edges.
double total_variation(const Histogram& a, const Histogram& b);

/// L1 distance between a histogram and a reference density evaluated at bin
/// midpoints: sum over bins of |density - ref(mid)| * width.
double l1_distance_to(const Histogram& h, double (*ref)(double));

}  // namespace thermaldrift
