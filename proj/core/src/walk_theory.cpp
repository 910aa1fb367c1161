#include "thermaldrift/walk_theory.hpp"

#include <cmath>
#include <numbers>

namespace thermaldrift {

WalkLaw WalkLaw::from_ensemble(const Ensemble& ensemble, long steps) {
  WalkLaw law;
  law.dims = ensemble.size();
  law.steps = steps;
  law.probs.reserve(ensemble.bounds.size());
  for (double b : ensemble.bounds) law.probs.push_back(b / ensemble.lambda);
  return law;
}

WalkLaw WalkLaw::uniform(int dims, long steps) {
  WalkLaw law;
  law.dims = dims;
  law.steps = steps;
  law.probs.assign(dims, 1.0 / dims);
  return law;
}

int reach_parity(std::span<const long> x, long steps) {
  long total = 0;
  for (long xi : x) total += std::abs(xi);
  if (total > steps) return 0;
  return ((steps - total) % 2 == 0) ? 2 : 0;
}

double gaussian_endpoint_density(const WalkLaw& law, std::span<const long> x) {
  if (static_cast<int>(x.size()) != law.dims)
    throw ValidationError("walk law: endpoint has the wrong dimension");
  const int parity = reach_parity(x, law.steps);
  if (parity == 0) return 0.0;
  const double n = static_cast<double>(law.steps);
  double norm = 1.0, expo = 0.0;
  for (int j = 0; j < law.dims; ++j) {
    norm *= 2.0 * std::numbers::pi * n * law.probs[j];
    expo += static_cast<double>(x[j]) * static_cast<double>(x[j]) /
            (2.0 * n * law.probs[j]);
  }
  return parity / std::sqrt(norm) * std::exp(-expo);
}

double log_likelihood_ratio(const Ensemble& ensemble, double beta,
                            const ThermalSample& sample) {
  if (sample.path.empty())
    throw ValidationError("log_likelihood_ratio: sample carries no path");
  if (static_cast<long>(sample.path.size()) != sample.steps)
    throw ValidationError("log_likelihood_ratio: path length mismatch");
  const double tau = ensemble.lambda * beta / static_cast<double>(sample.steps);

  std::vector<DriftStepSpec> specs;
  specs.reserve(ensemble.size());
  for (const PauliWord& w : ensemble.words) specs.emplace_back(w, tau);

  Matrix rho = maximally_mixed(ensemble.qubits).data;
  DriftWorkspace ws;
  double total = 0;
  for (const PathStep& step : sample.path) {
    if (step.word < 0 || step.word >= ensemble.size())
      throw ValidationError("log_likelihood_ratio: path index out of range");
    const double prob =
        drift_apply_inplace(specs[step.word], rho, step.direction, ws);
    total += std::log(2.0 * prob);
  }
  return total;
}

Histogram theoretical_marginal(const Ensemble& ensemble, double beta,
                               long steps, int axis, long mc_count, Rng& rng,
                               const std::vector<double>& edges) {
  if (mc_count < 1)
    throw ValidationError("theoretical_marginal: mc_count must be >= 1");
  if (axis < 0 || axis >= ensemble.size())
    throw ValidationError("theoretical_marginal: axis out of range");
  if (ensemble.qubits > kDenseQubitLimit)
    throw ValidationError("theoretical_marginal: system too large for dense");
  const WalkLaw law = WalkLaw::from_ensemble(ensemble, steps);
  const double n_steps = static_cast<double>(steps);
  const double log_dim = ensemble.qubits * std::log(2.0);

  std::vector<double> values(mc_count);
  std::vector<double> log_weights(mc_count);
  std::vector<double> coeffs(ensemble.size());
  for (long i = 0; i < mc_count; ++i) {
    for (int j = 0; j < ensemble.size(); ++j) {
      const double x = rng.next_gaussian() * std::sqrt(n_steps * law.probs[j]);
      coeffs[j] = ensemble.lambda * x / n_steps;
    }
    values[i] = coeffs[axis];
    log_weights[i] =
        log_partition(ensemble.hamiltonian(coeffs), beta) - log_dim;
  }
  return histogram_from_log_weighted(values, log_weights, edges);
}

}  // namespace thermaldrift
