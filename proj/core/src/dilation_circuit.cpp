#include "thermaldrift/dilation_circuit.hpp"

#include <cmath>

namespace thermaldrift {

namespace {

constexpr double kEigenvalueCutoff = 1e-15;

Eigen::Matrix2cd hadamard() {
  Eigen::Matrix2cd h;
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

Eigen::Matrix2cd ry(double angle) {
  Eigen::Matrix2cd r;
  r << std::cos(angle / 2), -std::sin(angle / 2),  //
      std::sin(angle / 2), std::cos(angle / 2);
  return r;
}

// Single-site Clifford with T Z T^dagger equal to the given letter:
// Z -> identity, X -> H, Y -> S H.
Eigen::Matrix2cd t_layer_site(char letter) {
  switch (letter) {
    case 'X':
      return hadamard();
    case 'Y': {
      Eigen::Matrix2cd s = Eigen::Matrix2cd::Identity();
      s(1, 1) = Complex(0, 1);
      return s * hadamard();
    }
    default:
      return Eigen::Matrix2cd::Identity();
  }
}

inline std::size_t bit_mask(int qubit, int total) {
  return std::size_t{1} << (total - 1 - qubit);
}

}  // namespace

void apply_gate(Vector& state, const Gate& gate, int total_qubits) {
  const std::size_t dim = static_cast<std::size_t>(state.size());
  switch (gate.kind) {
    case Gate::Kind::OneQubit: {
      const std::size_t m = bit_mask(gate.q0, total_qubits);
      const Complex u00 = gate.u(0, 0), u01 = gate.u(0, 1);
      const Complex u10 = gate.u(1, 0), u11 = gate.u(1, 1);
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & m) continue;
        const Complex a0 = state[i], a1 = state[i | m];
        state[i] = u00 * a0 + u01 * a1;
        state[i | m] = u10 * a0 + u11 * a1;
      }
      break;
    }
    case Gate::Kind::Cnot: {
      const std::size_t cm = bit_mask(gate.q0, total_qubits);
      const std::size_t tm = bit_mask(gate.q1, total_qubits);
      for (std::size_t i = 0; i < dim; ++i)
        if ((i & cm) && !(i & tm)) std::swap(state[i], state[i | tm]);
      break;
    }
    case Gate::Kind::Cz: {
      const std::size_t cm = bit_mask(gate.q0, total_qubits);
      const std::size_t tm = bit_mask(gate.q1, total_qubits);
      for (std::size_t i = 0; i < dim; ++i)
        if ((i & cm) && (i & tm)) state[i] = -state[i];
      break;
    }
    case Gate::Kind::Swap: {
      const std::size_t am = bit_mask(gate.q0, total_qubits);
      const std::size_t bm = bit_mask(gate.q1, total_qubits);
      for (std::size_t i = 0; i < dim; ++i)
        if ((i & am) && !(i & bm)) std::swap(state[i], state[i ^ am ^ bm]);
      break;
    }
  }
}

double loop_probability(double tau) {
  const double c = std::cosh(tau / 2);
  return 1.0 / (2.0 * c * c);
}

double dilation_theta(double tau) {
  return std::acos(std::sqrt(std::exp(-tau / 2) / (2 * std::cosh(tau / 2))));
}

DilationCircuit build_circuit_padded(const PauliWord& word, int system_qubits,
                                     double tau, double theta_skew) {
  if (word.support_size() != word.qubits())
    throw ValidationError(
        "build_circuit: word has identity sites; strip them first");
  if (!(tau > 0)) throw ValidationError("build_circuit: tau must be positive");
  const int m = word.qubits();
  if (system_qubits < m)
    throw ValidationError("build_circuit: system register smaller than word");

  DilationCircuit c;
  c.ancilla_qubits = m;
  c.system_qubits = system_qubits;
  c.word = word;
  c.tau = tau;
  c.theta = dilation_theta(tau) + theta_skew;

  const auto qa = [&](int i) { return i - 1; };           // A_i
  const auto qb = [&](int i) { return m + i - 1; };       // B_i
  const auto qs = [&](int i) { return 2 * m + i - 1; };   // S_i
  auto one = [&](const Eigen::Matrix2cd& u, int q) {
    c.gates.push_back({Gate::Kind::OneQubit, q, 0, u});
  };
  auto cnot = [&](int control, int target) {
    c.gates.push_back({Gate::Kind::Cnot, control, target, {}});
  };

  // T^dagger on the system
  for (int i = 1; i <= m; ++i)
    one(t_layer_site(word.letter(i - 1)).adjoint(), qs(i));

  // U_tau on AB
  c.u_tau_begin = static_cast<int>(c.gates.size());
  for (int i = 1; i <= m - 1; ++i) one(hadamard(), qa(i));
  one(ry(2 * c.theta), qa(m));
  for (int i = 1; i <= m - 1; ++i) cnot(qa(i), qa(m));
  for (int i = 1; i <= m; ++i) cnot(qa(i), qb(i));
  c.u_tau_end = static_cast<int>(c.gates.size());

  // qubit-wise register swap between B and S
  for (int i = 1; i <= m; ++i)
    c.gates.push_back({Gate::Kind::Swap, qb(i), qs(i), {}});

  // U_tau^dagger
  for (int i = m; i >= 1; --i) cnot(qa(i), qb(i));
  for (int i = m - 1; i >= 1; --i) cnot(qa(i), qa(m));
  one(ry(-2 * c.theta), qa(m));
  for (int i = 1; i <= m - 1; ++i) one(hadamard(), qa(i));

  // V on ABS
  for (int i = 1; i <= m - 1; ++i) cnot(qa(m), qa(i));
  for (int i = 1; i <= m; ++i) {
    c.gates.push_back({Gate::Kind::Cz, qa(i), qs(i), {}});
    cnot(qb(i), qs(i));
  }
  for (int i = 1; i <= m - 1; ++i) cnot(qb(i), qb(m));

  // T on the system
  for (int i = 1; i <= m; ++i) one(t_layer_site(word.letter(i - 1)), qs(i));

  return c;
}

DilationCircuit build_circuit(const PauliWord& word, double tau,
                              double theta_skew) {
  return build_circuit_padded(word, word.qubits(), tau, theta_skew);
}

PvmTraces pvm_traces(const DilationCircuit& circuit) {
  const int m = circuit.ancilla_qubits;
  PvmTraces t{0, 0, 0};
  for (std::size_t ab = 0; ab < (std::size_t{1} << (2 * m)); ++ab) {
    const bool loop = (ab >> m) & 1;
    if (loop)
      t.loop += 1;
    else if (ab & 1)
      t.down += 1;
    else
      t.up += 1;
  }
  return t;
}

ChannelAnalysis analyze_channel(const DilationCircuit& circuit,
                                const DensityMatrix& rho) {
  const int m = circuit.ancilla_qubits;
  const int ns = circuit.system_qubits;
  if (rho.qubits != ns)
    throw ValidationError("analyze_channel: state does not match the system");
  const std::size_t ds = std::size_t{1} << ns;
  const std::size_t dab = std::size_t{1} << (2 * m);
  const int total = circuit.total_qubits();

  Matrix up = Matrix::Zero(ds, ds);
  Matrix down = Matrix::Zero(ds, ds);
  Matrix loop = Matrix::Zero(ds, ds);

  const EigenSystem es = eigh(rho.data);
  Vector psi(static_cast<Eigen::Index>(dab * ds));
  for (Eigen::Index e = 0; e < es.values.size(); ++e) {
    const double weight = es.values[e];
    if (weight < kEigenvalueCutoff) continue;
    psi.setZero();
    psi.head(static_cast<Eigen::Index>(ds)) = es.vectors.col(e);
    for (const Gate& g : circuit.gates) apply_gate(psi, g, total);
    for (std::size_t ab = 0; ab < dab; ++ab) {
      const auto block =
          psi.segment(static_cast<Eigen::Index>(ab * ds), ds);
      Matrix* target = ((ab >> m) & 1) ? &loop : ((ab & 1) ? &down : &up);
      target->noalias() += weight * block * block.adjoint();
    }
  }

  auto finish = [&](Matrix& mat, double& prob, DensityMatrix& post) {
    prob = mat.trace().real();
    post.qubits = ns;
    post.data = prob > 1e-300 ? Matrix(hermitized(mat) / prob)
                              : Matrix::Zero(ds, ds);
  };
  ChannelAnalysis out;
  finish(up, out.p_up, out.post_up);
  finish(down, out.p_down, out.post_down);
  finish(loop, out.p_loop, out.post_loop);
  return out;
}

SingleShot run_single_shot(const DilationCircuit& circuit,
                           const DensityMatrix& rho, Rng& rng) {
  const ChannelAnalysis a = analyze_channel(circuit, rho);
  const double u = rng.next_double();
  // fixed interval order: loop, up, down
  if (u < a.p_loop) return {ShotOutcome::Loop, a.post_loop, a.p_loop};
  if (u < a.p_loop + a.p_up) return {ShotOutcome::Up, a.post_up, a.p_up};
  return {ShotOutcome::Down, a.post_down, a.p_down};
}

RepeatUntilSuccess run_until_success(const DilationCircuit& circuit,
                                     const DensityMatrix& rho, int max_rounds,
                                     Rng& rng) {
  if (max_rounds < 1)
    throw ValidationError("run_until_success: max_rounds must be >= 1");
  DensityMatrix state = rho;
  for (int round = 1; round <= max_rounds; ++round) {
    const SingleShot shot = run_single_shot(circuit, state, rng);
    if (shot.outcome == ShotOutcome::Loop) {
      state = shot.post_state;
      continue;
    }
    RepeatUntilSuccess out;
    out.rounds = round;
    out.outcome.direction = shot.outcome == ShotOutcome::Up ? 1 : -1;
    out.outcome.post_state = shot.post_state;
    const double directional = 1.0 - loop_probability(circuit.tau);
    out.outcome.branch_prob = shot.prob / directional;
    return out;
  }
  throw NumericalError("run_until_success: exhausted " +
                       std::to_string(max_rounds) + " rounds of loops");
}

Matrix kraus_extract(const Matrix& u, std::size_t j, std::size_t k) {
  const std::size_t dim = static_cast<std::size_t>(u.rows());
  std::size_t half_bits = 0;
  while ((std::size_t{1} << (2 * half_bits)) < dim) ++half_bits;
  const std::size_t db = std::size_t{1} << half_bits;
  if (db * db != dim || u.cols() != u.rows())
    throw ValidationError("kraus_extract: matrix is not a two-register unitary");
  if ((u * u.adjoint() - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() >
      1e-10)
    throw ValidationError("kraus_extract: input is not unitary");
  if (j >= db || k >= db)
    throw ValidationError("kraus_extract: outcome index out of range");
  const auto col0 = u.col(0);
  const auto coljk = u.col(static_cast<Eigen::Index>(j * db + k));
  Matrix g = Matrix::Zero(db, db);
  for (std::size_t a = 0; a < db; ++a)
    for (std::size_t b = 0; b < db; ++b)
      for (std::size_t bp = 0; bp < db; ++bp)
        g(b, bp) += col0[a * db + b] * std::conj(coljk[a * db + bp]);
  return g;
}

Matrix dense_u_tau(const DilationCircuit& circuit) {
  const int m = circuit.ancilla_qubits;
  const std::size_t dab = std::size_t{1} << (2 * m);
  Matrix u(dab, dab);
  Vector col(static_cast<Eigen::Index>(dab));
  for (std::size_t i = 0; i < dab; ++i) {
    col.setZero();
    col[static_cast<Eigen::Index>(i)] = 1.0;
    for (int g = circuit.u_tau_begin; g < circuit.u_tau_end; ++g)
      apply_gate(col, circuit.gates[g], 2 * m);
    u.col(static_cast<Eigen::Index>(i)) = col;
  }
  return u;
}

ChannelAnalysis drift_channel_via_circuit(const PauliWord& word, double tau,
                                          const DensityMatrix& rho,
                                          double theta_skew) {
  const SupportSplit split = strip_identity(word);
  const int n = word.qubits();
  const DensityMatrix fronted{n, permute_sites(rho.data, split.perm)};
  const DilationCircuit circuit =
      build_circuit_padded(split.on_support, n, tau, theta_skew);
  ChannelAnalysis a = analyze_channel(circuit, fronted);
  const std::vector<int> inv = inverse_permutation(split.perm);
  for (DensityMatrix* post : {&a.post_up, &a.post_down, &a.post_loop})
    post->data = permute_sites(post->data, inv);
  return a;
}

}  // namespace thermaldrift
