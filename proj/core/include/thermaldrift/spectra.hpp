#pragma once

#include <span>
#include <vector>

#include "thermaldrift/histogram.hpp"
#include "thermaldrift/operator_kit.hpp"

namespace thermaldrift {

inline constexpr double kDefaultMergeTol = 1e-6;
inline constexpr int kDefaultRatioBins = 24;

/// Adjacent-gap-ratio statistics of a level sequence: ratios r in [0, 1],
/// their mean, a binned density on [0, 1], and the merge/exclusion counts
/// bookkeeping how the levels were prepared.
struct GapRatioStats {
  std::vector<double> ratios;
  double mean_r = 0;
  Histogram histogram;
  int excluded_levels = 0;
  int merged_levels = 0;

  static GapRatioStats from_ratios(std::vector<double> ratios, int excluded,
                                   int merged, int bins = kDefaultRatioBins);
};

/// Collapses runs of near-degenerate sorted levels: neighbors within
/// rel_tol * max(|a|, |b|, 1) join one cluster, represented by its mean.
std::vector<double> merge_degenerate_levels(std::vector<double> sorted_levels,
                                            double rel_tol);

/// Spacing ratios r_n = min(d_n, d_{n+1}) / max(d_n, d_{n+1}) of the merged
/// level sequence. Needs at least 4 surviving levels.
GapRatioStats gap_ratios(std::vector<double> levels,
                         double merge_rel_tol = kDefaultMergeTol,
                         int bins = kDefaultRatioBins);

/// Gap ratios of the modular spectrum -log(spec rho); equivalent to the
/// log-eigenvalue-ratio spacings, which is asserted internally.
GapRatioStats modular_gap_ratios(const DensityMatrix& rho,
                                 double merge_rel_tol = kDefaultMergeTol,
                                 double floor = 1e-14,
                                 int bins = kDefaultRatioBins);

/// Associative pooling of ratio lists across samples.
GapRatioStats pool_ratios(std::span<const GapRatioStats> parts,
                          int bins = kDefaultRatioBins);

enum class LevelEnsemble { Poisson, Goe, Gue };

/// Normalized reference densities on [0, 1] (min/max folding): Poisson
/// 2/(1+r)^2 and the Wigner-like surmise for GOE/GUE.
double reference_density(LevelEnsemble kind, double r);
double poisson_density(double r);
double goe_density(double r);
double gue_density(double r);

}  // namespace thermaldrift
