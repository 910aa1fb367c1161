#pragma once

#include <optional>

#include "thermaldrift/histogram.hpp"
#include "thermaldrift/sampler.hpp"

namespace thermaldrift {

/// Reference lattice walk on Z^L: under the fair-coin measure each step is
/// +-e_j with probability probs[j] / 2, where probs[j] = h_j / lambda.
struct WalkLaw {
  int dims = 0;
  long steps = 0;
  std::vector<double> probs;

  static WalkLaw from_ensemble(const Ensemble& ensemble, long steps);
  static WalkLaw uniform(int dims, long steps);
};

/// 2 if x is reachable from the origin in exactly `steps` unit steps
/// (sum |x_j| <= steps with matching parity), else 0.
int reach_parity(std::span<const long> x, long steps);

/// Leading-order lattice Gaussian for the fair-coin endpoint law:
/// reach_parity(x) / ((2 pi N)^{L/2} sqrt(prod p_j)) * exp(-sum x_j^2 / (2 N p_j)).
double gaussian_endpoint_density(const WalkLaw& law, std::span<const long> x);

/// Exact path log-likelihood ratio of the sample's recorded path against the
/// fair-coin measure: sum_k log(2 P[m_k | state before step k]), computed by
/// replaying the path with forced drift steps from the maximally mixed state.
double log_likelihood_ratio(const Ensemble& ensemble, double beta,
                            const ThermalSample& sample);

/// Monte-Carlo estimate of the theoretical marginal of coefficient `axis`:
/// draws endpoints from the continuous Gaussian relaxation of the fair-coin
/// law and reweights each draw by exp(log tr e^{-beta H(x)} - n log 2).
/// Bin edges must be supplied (share them with the empirical histogram);
/// weight accumulation is log-sum-exp guarded.
Histogram theoretical_marginal(const Ensemble& ensemble, double beta,
                               long steps, int axis, long mc_count, Rng& rng,
                               const std::vector<double>& edges);

}  // namespace thermaldrift
