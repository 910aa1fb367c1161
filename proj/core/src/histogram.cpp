#include "thermaldrift/histogram.hpp"

#include <algorithm>
#include <cmath>

#include "thermaldrift/types.hpp"

namespace thermaldrift {

std::vector<double> freedman_diaconis_edges(std::vector<double> values,
                                            double min_width, int max_bins) {
  if (values.size() < 2)
    throw ValidationError("histogram: need at least two values");
  std::sort(values.begin(), values.end());
  const double lo = values.front(), hi = values.back();
  const std::size_t n = values.size();
  const double q1 = values[n / 4];
  const double q3 = values[(3 * n) / 4];
  const double iqr = q3 - q1;
  double width = 2.0 * iqr / std::cbrt(static_cast<double>(n));
  if (!(width > 0)) width = (hi - lo) / std::sqrt(static_cast<double>(n));
  width = std::max(width, min_width);
  if (!(width > 0) || hi <= lo) return {lo - 0.5, lo + 0.5};
  int bins = static_cast<int>(std::ceil((hi - lo) / width));
  bins = std::clamp(bins, 1, max_bins);
  return uniform_edges(lo, hi + 1e-12 * std::max(1.0, std::abs(hi)), bins);
}

std::vector<double> uniform_edges(double lo, double hi, int bins) {
  if (bins < 1 || !(hi > lo))
    throw ValidationError("histogram: bad bin specification");
  std::vector<double> edges(bins + 1);
  for (int i = 0; i <= bins; ++i)
    edges[i] = lo + (hi - lo) * static_cast<double>(i) / bins;
  return edges;
}

namespace {
int locate_bin(double v, const std::vector<double>& edges) {
  if (v < edges.front() || v >= edges.back()) return -1;
  const auto it = std::upper_bound(edges.begin(), edges.end(), v);
  return static_cast<int>(it - edges.begin()) - 1;
}
}  // namespace

Histogram histogram_from_values(std::span<const double> values,
                                const std::vector<double>& edges) {
  Histogram h;
  h.edges = edges;
  h.density.assign(edges.size() - 1, 0.0);
  double total = 0;
  for (double v : values) {
    const int bin = locate_bin(v, edges);
    if (bin < 0) continue;
    h.density[bin] += 1.0;
    total += 1.0;
  }
  if (total > 0)
    for (std::size_t i = 0; i < h.density.size(); ++i)
      h.density[i] /= total * (edges[i + 1] - edges[i]);
  return h;
}

Histogram histogram_from_log_weighted(std::span<const double> values,
                                      std::span<const double> log_weights,
                                      const std::vector<double>& edges) {
  if (values.size() != log_weights.size())
    throw ValidationError("histogram: values/weights size mismatch");
  double top = -std::numeric_limits<double>::infinity();
  for (double lw : log_weights) top = std::max(top, lw);
  Histogram h;
  h.edges = edges;
  h.density.assign(edges.size() - 1, 0.0);
  double total = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const int bin = locate_bin(values[i], edges);
    if (bin < 0) continue;
    const double w = std::exp(log_weights[i] - top);
    h.density[bin] += w;
    total += w;
  }
  if (total > 0)
    for (std::size_t i = 0; i < h.density.size(); ++i)
      h.density[i] /= total * (edges[i + 1] - edges[i]);
  return h;
}

double total_variation(const Histogram& a, const Histogram& b) {
  if (a.edges != b.edges)
    throw ValidationError("total_variation: histograms use different bins");
  double tv = 0;
  for (std::size_t i = 0; i < a.density.size(); ++i)
    tv += std::abs(a.density[i] - b.density[i]) * (a.edges[i + 1] - a.edges[i]);
  return 0.5 * tv;
}

double l1_distance_to(const Histogram& h, double (*ref)(double)) {
  double dist = 0;
  for (std::size_t i = 0; i < h.density.size(); ++i) {
    const double width = h.edges[i + 1] - h.edges[i];
    const double mid = 0.5 * (h.edges[i] + h.edges[i + 1]);
    dist += std::abs(h.density[i] - ref(mid)) * width;
  }
  return dist;
}

}  // namespace thermaldrift
