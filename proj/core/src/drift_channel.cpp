#include "thermaldrift/drift_channel.hpp"

#include <cmath>

namespace thermaldrift {

namespace {
// Below this, a branch is numerically dead; cannot trigger for tau <= 1 at
// desk scale, so hitting it means the step parameters are broken.
constexpr double kBranchFloor = 1e-300;

void check_dims(const DriftStepSpec& spec, const Matrix& rho) {
  const auto d = static_cast<Eigen::Index>(spec.word.dim());
  if (rho.rows() != d || rho.cols() != d)
    throw ValidationError("drift step: state dimension does not match word");
}
}  // namespace

DriftStepSpec::DriftStepSpec(PauliWord w, double tau_in)
    : word(std::move(w)), tau(tau_in), mu(1.0 / std::cosh(tau_in)) {
  if (!(tau > 0)) throw ValidationError("drift step: tau must be positive");
}

BranchProbabilities branch_probabilities(const DriftStepSpec& spec,
                                         const DensityMatrix& rho) {
  check_dims(spec, rho.data);
  const double t = spec.word.trace_product(rho.data).real();
  const double th = std::tanh(spec.tau);
  return {0.5 * (1.0 - th * t), 0.5 * (1.0 + th * t)};
}

double drift_apply_inplace(const DriftStepSpec& spec, Matrix& rho,
                           int direction, DriftWorkspace& ws) {
  check_dims(spec, rho);
  if (direction != 1 && direction != -1)
    throw ValidationError("drift step: direction must be +1 or -1");
  const double t = spec.word.trace_product(rho).real();
  const double prob = 0.5 * (1.0 - direction * std::tanh(spec.tau) * t);
  if (!(prob > kBranchFloor))
    throw NumericalError(
        "drift step: branch probability underflow (state nearly orthogonal "
        "to the chosen branch)");

  const double c = std::cosh(spec.tau / 2);
  const double s = direction * std::sinh(spec.tau / 2);
  // (cI - s sigma) rho (cI - s sigma)
  //   = c^2 rho - c s (sigma rho + rho sigma) + s^2 sigma rho sigma
  spec.word.apply_left(rho, ws.a);  // a = sigma rho
  ws.b = ws.a.adjoint();            // b = rho sigma
  rho = c * c * rho - c * s * (ws.a + ws.b);
  spec.word.apply_left(ws.b, ws.a);  // a = sigma rho sigma
  rho += s * s * ws.a;

  const double norm = rho.trace().real();
  if (!(norm > kBranchFloor))
    throw NumericalError("drift step: post-state normalization underflow");
  rho /= norm;
  return prob;
}

std::pair<int, double> drift_step_inplace(const DriftStepSpec& spec,
                                          Matrix& rho, Rng& rng,
                                          DriftWorkspace& ws) {
  check_dims(spec, rho);
  const double t = spec.word.trace_product(rho).real();
  const double p_up = 0.5 * (1.0 - std::tanh(spec.tau) * t);
  const int direction = rng.next_double() < p_up ? 1 : -1;
  const double prob = drift_apply_inplace(spec, rho, direction, ws);
  return {direction, prob};
}

DriftOutcome apply_drift(const DriftStepSpec& spec, const DensityMatrix& rho,
                         Rng& rng) {
  DriftOutcome out;
  out.post_state = rho;
  DriftWorkspace ws;
  auto [direction, prob] = drift_step_inplace(spec, out.post_state.data, rng, ws);
  out.direction = direction;
  out.branch_prob = prob;
  return out;
}

DriftOutcome apply_drift_forced(const DriftStepSpec& spec,
                                const DensityMatrix& rho, int direction) {
  DriftOutcome out;
  out.post_state = rho;
  DriftWorkspace ws;
  out.branch_prob = drift_apply_inplace(spec, out.post_state.data, direction, ws);
  out.direction = direction;
  return out;
}

}  // namespace thermaldrift
