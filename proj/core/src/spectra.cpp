#include "thermaldrift/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace thermaldrift {

GapRatioStats GapRatioStats::from_ratios(std::vector<double> ratios,
                                         int excluded, int merged, int bins) {
  GapRatioStats s;
  s.ratios = std::move(ratios);
  s.excluded_levels = excluded;
  s.merged_levels = merged;
  double total = 0;
  for (double r : s.ratios) total += r;
  s.mean_r = s.ratios.empty() ? 0.0 : total / static_cast<double>(s.ratios.size());
  s.histogram = histogram_from_values(s.ratios, uniform_edges(0.0, 1.0 + 1e-12, bins));
  return s;
}

std::vector<double> merge_degenerate_levels(std::vector<double> sorted_levels,
                                            double rel_tol) {
  std::vector<double> merged;
  std::size_t i = 0;
  while (i < sorted_levels.size()) {
    double sum = sorted_levels[i];
    std::size_t count = 1;
    // chain rule: extend the cluster while consecutive members are close
    while (i + count < sorted_levels.size()) {
      const double prev = sorted_levels[i + count - 1];
      const double next = sorted_levels[i + count];
      const double scale = std::max({std::abs(prev), std::abs(next), 1.0});
      if (next - prev > rel_tol * scale) break;
      sum += next;
      ++count;
    }
    merged.push_back(sum / static_cast<double>(count));
    i += count;
  }
  return merged;
}

GapRatioStats gap_ratios(std::vector<double> levels, double merge_rel_tol,
                         int bins) {
  std::sort(levels.begin(), levels.end());
  const int before = static_cast<int>(levels.size());
  const std::vector<double> merged =
      merge_degenerate_levels(std::move(levels), merge_rel_tol);
  if (merged.size() < 4)
    throw ValidationError("gap_ratios: fewer than 4 levels after merging");

  std::vector<double> ratios;
  ratios.reserve(merged.size() - 2);
  for (std::size_t i = 0; i + 2 < merged.size(); ++i) {
    const double a = merged[i + 1] - merged[i];
    const double b = merged[i + 2] - merged[i + 1];
    ratios.push_back(std::min(a, b) / std::max(a, b));
  }
  return GapRatioStats::from_ratios(std::move(ratios), 0,
                                    before - static_cast<int>(merged.size()),
                                    bins);
}

GapRatioStats modular_gap_ratios(const DensityMatrix& rho,
                                 double merge_rel_tol, double floor,
                                 int bins) {
  const ModularSpectrum spectrum = modular_hamiltonian(rho, floor);

  // The modular spacings equal the log ratios of descending eigenvalues of
  // rho; both routes are computed and must agree.
  const EigenSystem es = eigh(rho.data);
  std::vector<double> probs;
  for (Eigen::Index i = es.values.size() - 1; i >= 0; --i)
    if (es.values[i] >= floor) probs.push_back(es.values[i]);
  for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
    const double via_log_ratio = std::log(probs[i] / probs[i + 1]);
    const double via_levels = spectrum.levels[i + 1] - spectrum.levels[i];
    if (std::abs(via_log_ratio - via_levels) >
        1e-9 * std::max(1.0, std::abs(via_levels)))
      throw NumericalError("modular_gap_ratios: spacing definitions diverged");
  }

  GapRatioStats stats = gap_ratios(spectrum.levels, merge_rel_tol, bins);
  stats.excluded_levels = spectrum.excluded;
  return stats;
}

GapRatioStats pool_ratios(std::span<const GapRatioStats> parts, int bins) {
  std::vector<double> ratios;
  int excluded = 0, merged = 0;
  for (const GapRatioStats& p : parts) {
    ratios.insert(ratios.end(), p.ratios.begin(), p.ratios.end());
    excluded += p.excluded_levels;
    merged += p.merged_levels;
  }
  return GapRatioStats::from_ratios(std::move(ratios), excluded, merged, bins);
}

double poisson_density(double r) {
  return 2.0 / ((1.0 + r) * (1.0 + r));
}

namespace {
// Wigner-like surmise for the unfolded ratio, folded to the min/max
// convention on [0, 1]: 2/Z * (r + r^2)^b / (1 + r + r^2)^{1 + 3b/2}.
double surmise_density(double r, double b, double z) {
  const double num = std::pow(r + r * r, b);
  const double den = std::pow(1.0 + r + r * r, 1.0 + 1.5 * b);
  return 2.0 / z * num / den;
}
}  // namespace

double goe_density(double r) { return surmise_density(r, 1.0, 8.0 / 27.0); }

double gue_density(double r) {
  const double z = 4.0 * std::numbers::pi / (81.0 * std::sqrt(3.0));
  return surmise_density(r, 2.0, z);
}

double reference_density(LevelEnsemble kind, double r) {
  if (r < 0.0 || r > 1.0)
    throw ValidationError("reference_density: r must be in [0, 1]");
  switch (kind) {
    case LevelEnsemble::Poisson: return poisson_density(r);
    case LevelEnsemble::Goe: return goe_density(r);
    default: return gue_density(r);
  }
}

}  // namespace thermaldrift
