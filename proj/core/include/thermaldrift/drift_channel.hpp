#pragma once

#include <utility>

#include "thermaldrift/operator_kit.hpp"
#include "thermaldrift/pauli.hpp"
#include "thermaldrift/rng.hpp"

namespace thermaldrift {

/// One randomized nonunitary drift step along a Pauli word with thermal
/// strength tau. The scale mu is pinned to 1/cosh(tau), the unique choice
/// that makes the two-branch instrument trace preserving.
struct DriftStepSpec {
  PauliWord word;
  double tau;
  double mu;

  DriftStepSpec(PauliWord w, double tau_in);
};

struct BranchProbabilities {
  double up;    ///< P(m = +1), the e^{-tau sigma / 2} branch
  double down;  ///< P(m = -1), the e^{+tau sigma / 2} branch
};

struct DriftOutcome {
  int direction = 0;  ///< +1 or -1
  DensityMatrix post_state;
  double branch_prob = 0;
};

/// Closed-form branch probabilities: tr(e^{-+ tau sigma} rho) / (2 cosh tau)
/// evaluated as (cosh tau -+ sinh tau * tr(sigma rho)) / (2 cosh tau).
BranchProbabilities branch_probabilities(const DriftStepSpec& spec,
                                         const DensityMatrix& rho);

/// Samples a direction and applies the matching half-strength map
/// (cosh(tau/2) I -+ sinh(tau/2) sigma) rho (same factor), renormalized.
/// Direction +1 carries the minus sign. Deterministic given the rng state.
DriftOutcome apply_drift(const DriftStepSpec& spec, const DensityMatrix& rho,
                         Rng& rng);

/// Applies the requested branch unconditionally and reports the probability
/// that branch would have had; this is the fair-coin reference variant used
/// for likelihood-ratio replays.
DriftOutcome apply_drift_forced(const DriftStepSpec& spec,
                                const DensityMatrix& rho, int direction);

/// Scratch buffers for the in-place kernel below.
struct DriftWorkspace {
  Matrix a, b;
};

/// In-place forced branch; returns the branch probability. The hot path for
/// the sampling loop: two O(d^2) passes, no dense exponentials.
double drift_apply_inplace(const DriftStepSpec& spec, Matrix& rho,
                           int direction, DriftWorkspace& ws);

/// In-place sampled step; returns (direction, branch probability).
std::pair<int, double> drift_step_inplace(const DriftStepSpec& spec,
                                          Matrix& rho, Rng& rng,
                                          DriftWorkspace& ws);

}  // namespace thermaldrift
