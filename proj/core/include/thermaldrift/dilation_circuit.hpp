#pragma once

#include <vector>

#include "thermaldrift/drift_channel.hpp"

namespace thermaldrift {

/// Gate vocabulary for the dilation simulator. One-qubit gates carry their
/// 2x2 matrix; CNOT/CZ are (control, target); SWAP exchanges two qubits.
struct Gate {
  enum class Kind { OneQubit, Cnot, Cz, Swap };
  Kind kind;
  int q0 = 0;
  int q1 = 0;
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
};

/// One round of the randomized drift dilation on registers A, B (ancillas,
/// one per support site) and S (the system). Qubit order is
/// A_1..A_m, B_1..B_m, S_1..S_ns with A_1 the most significant index bit;
/// the word acts on S_1..S_m, any remaining system qubits ride along.
///
/// The three-outcome measurement reads A_m and B_m in the computational
/// basis: A_m = 1 is the heralded loop, A_m = 0 selects the drift branch
/// recorded in B_m (0 -> up, 1 -> down).
struct DilationCircuit {
  int ancilla_qubits = 0;                     ///< m, the support size of the word
  int system_qubits = 0;                      ///< ns >= m
  PauliWord word = PauliWord::identity(1);    ///< no identity sites, on S_1..S_m
  double tau = 0;
  double theta = 0;        ///< arccos sqrt(e^{-tau/2} / (2 cosh(tau/2)))
  std::vector<Gate> gates; ///< one round, in application order
  int u_tau_begin = 0;     ///< [begin, end) slice of gates forming U_tau
  int u_tau_end = 0;

  int total_qubits() const { return 2 * ancilla_qubits + system_qubits; }
};

/// Builds one dilation round for a word with no identity sites.
/// theta_skew shifts theta and exists only so tests can corrupt the circuit.
DilationCircuit build_circuit(const PauliWord& word, double tau,
                              double theta_skew = 0.0);

/// Same, with the word embedded on the first support_size() sites of a
/// larger system register.
DilationCircuit build_circuit_padded(const PauliWord& word, int system_qubits,
                                     double tau, double theta_skew = 0.0);

/// Heralded loop probability 1 / (2 cosh^2(tau/2)); state independent.
double loop_probability(double tau);

/// Rotation angle arccos sqrt(e^{-tau/2} / (2 cosh(tau/2))): pi/4 at tau = 0,
/// rising monotonically toward pi/2 as tau grows.
double dilation_theta(double tau);

/// tr of the up/down/loop projectors on the 2m-qubit ancilla register.
struct PvmTraces {
  double up, down, loop;
};
PvmTraces pvm_traces(const DilationCircuit& circuit);

enum class ShotOutcome { Up, Down, Loop };

/// Exact three-outcome analysis: simulates one round per eigenvector of rho
/// (no sampling), accumulates the projected system blocks, and returns the
/// outcome probabilities with normalized conditional post-states.
struct ChannelAnalysis {
  double p_up = 0, p_down = 0, p_loop = 0;
  DensityMatrix post_up, post_down, post_loop;
};
ChannelAnalysis analyze_channel(const DilationCircuit& circuit,
                                const DensityMatrix& rho);

/// One measured round: the outcome is sampled from the exact distribution,
/// the returned state is the exact conditional post-state.
struct SingleShot {
  ShotOutcome outcome;
  DensityMatrix post_state;
  double prob = 0;
};
SingleShot run_single_shot(const DilationCircuit& circuit,
                           const DensityMatrix& rho, Rng& rng);

/// Repeats rounds on the heralded loop branch (which leaves the state
/// untouched) until a directional outcome lands, mapping up -> +1 and
/// down -> -1. Throws NumericalError if max_rounds loops in a row occur
/// (probability <= 2^-max_rounds).
struct RepeatUntilSuccess {
  DriftOutcome outcome;
  int rounds = 0;  ///< total rounds including the successful one
};
RepeatUntilSuccess run_until_success(const DilationCircuit& circuit,
                                     const DensityMatrix& rho, int max_rounds,
                                     Rng& rng);
inline constexpr int kDefaultMaxRounds = 40;

/// G_{jk} = tr_A[ U |00><jk| U^dagger ] for a unitary on the 2m-qubit AB
/// register; j indexes A, k indexes B.
Matrix kraus_extract(const Matrix& u, std::size_t j, std::size_t k);

/// Dense matrix of the circuit's U_tau block on AB.
Matrix dense_u_tau(const DilationCircuit& circuit);

/// Full-word instrument through the dilation: strips identity sites, moves
/// the support to the front, runs the padded circuit, and undoes the
/// permutation on the conditional post-states.
ChannelAnalysis drift_channel_via_circuit(const PauliWord& word, double tau,
                                          const DensityMatrix& rho,
                                          double theta_skew = 0.0);

/// Statevector gate application, exposed for tests.
void apply_gate(Vector& state, const Gate& gate, int total_qubits);

}  // namespace thermaldrift
