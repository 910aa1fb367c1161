#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thermaldrift/drift_channel.hpp"

namespace thermaldrift {

/// Generating set: L distinct Pauli words with positive coefficient bounds.
/// lambda = sum of bounds; index j is drawn with probability bounds[j]/lambda.
struct Ensemble {
  int qubits = 0;
  std::vector<PauliWord> words;
  std::vector<double> bounds;
  double lambda = 0;
  std::string name;
  std::vector<double> cumulative;  ///< prefix sums of bounds/lambda

  static Ensemble create(int qubits, std::vector<PauliWord> words,
                         std::vector<double> bounds, std::string name);
  int size() const { return static_cast<int>(words.size()); }

  /// sum_j coeffs[j] * sigma_j, dense.
  HermitianOperator hamiltonian(std::span<const double> coeffs) const;
};

enum class GridModel { Heisenberg, Tfim };
GridModel parse_grid_model(std::string_view name);
std::string to_string(GridModel model);

/// Nearest-neighbor ensemble on an open rows x cols grid, sites in row-major
/// order. Heisenberg: XX, YY, ZZ per edge (edge-major). Tfim: ZZ per edge
/// followed by X per site. All bounds equal h.
Ensemble build_grid_ensemble(GridModel model, int rows, int cols, double h);

struct SamplerConfig {
  double beta = 1.0;
  long steps = 1;
  uint64_t seed = 0;
  std::optional<DensityMatrix> initial_state;  ///< default: I / 2^n
  bool record_path = true;
  bool compute_diagnostics = false;  ///< trace distance to the label's Gibbs state
  bool keep_state = true;            ///< drop the final state to save memory

  double tau(const Ensemble& ensemble) const {
    return ensemble.lambda * beta / static_cast<double>(steps);
  }
  void validate(const Ensemble& ensemble) const;
};

struct PathStep {
  int32_t word = 0;      ///< ensemble index j_k
  int8_t direction = 0;  ///< m_k
};

struct ThermalSample {
  int run_index = 0;
  uint64_t seed = 0;
  double beta = 0;
  long steps = 0;
  double tau = 0;
  std::vector<double> coefficients;  ///< c_j = lambda * endpoint_j / steps
  std::vector<long> endpoint;        ///< x_j = sum of m_k over steps with j_k = j
  DensityMatrix state;               ///< rho_N (empty if keep_state was false)
  std::vector<PathStep> path;        ///< empty unless record_path
  std::optional<double> trace_distance_to_label;
};

/// Index j with probability bounds[j]/lambda.
int weighted_index(const Ensemble& ensemble, Rng& rng);

/// N measurement-controlled drift steps from the initial state; the sample
/// carries the Hamiltonian label read off the recorded directions.
ThermalSample run(const Ensemble& ensemble, const SamplerConfig& config);

struct RunFailure {
  int run_index = 0;
  std::string message;
};

struct BatchResult {
  std::vector<ThermalSample> samples;  ///< successes, ascending run_index
  std::vector<RunFailure> failures;
};

/// `count` independent runs; run i uses the seed stream derived from
/// (config.seed, i), so results do not depend on scheduling. concurrency <= 0
/// picks default_concurrency(). Per-run errors are collected, not fatal.
BatchResult run_batch(const Ensemble& ensemble, const SamplerConfig& config,
                      int count, int concurrency = 0);

/// Hardware concurrency capped by the THERMALDRIFT_THREADS environment
/// variable when set.
int default_concurrency();

HermitianOperator sample_label(const Ensemble& ensemble,
                               const ThermalSample& sample);
double label_trace_distance(const Ensemble& ensemble,
                            const ThermalSample& sample);

}  // namespace thermaldrift
