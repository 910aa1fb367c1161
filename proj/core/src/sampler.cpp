#include "thermaldrift/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <set>
#include <thread>

namespace thermaldrift {

Ensemble Ensemble::create(int qubits, std::vector<PauliWord> words,
                          std::vector<double> bounds, std::string name) {
  if (words.empty()) throw ValidationError("ensemble: no words");
  if (words.size() != bounds.size())
    throw ValidationError("ensemble: bounds size does not match words");
  std::set<std::string> seen;
  for (const PauliWord& w : words) {
    if (w.qubits() != qubits)
      throw ValidationError("ensemble: word '" + w.str() +
                            "' has the wrong qubit count");
    if (w.is_identity())
      throw ValidationError(
          "ensemble: the all-identity word is not a valid generator");
    if (!seen.insert(w.str()).second)
      throw ValidationError("ensemble: duplicate word '" + w.str() + "'");
  }
  for (double b : bounds)
    if (!(b > 0)) throw ValidationError("ensemble: bounds must be positive");

  Ensemble e;
  e.qubits = qubits;
  e.words = std::move(words);
  e.bounds = std::move(bounds);
  e.name = std::move(name);
  double total = 0;
  for (double b : e.bounds) total += b;
  e.lambda = total;
  e.cumulative.reserve(e.bounds.size());
  double acc = 0;
  for (double b : e.bounds) {
    acc += b / total;
    e.cumulative.push_back(acc);
  }
  e.cumulative.back() = 1.0;
  return e;
}

HermitianOperator Ensemble::hamiltonian(std::span<const double> coeffs) const {
  if (coeffs.size() != words.size())
    throw ValidationError("ensemble: coefficient count does not match words");
  const Eigen::Index d = Eigen::Index{1} << qubits;
  Matrix h = Matrix::Zero(d, d);
  for (std::size_t j = 0; j < words.size(); ++j) {
    if (coeffs[j] == 0.0) continue;
    h += coeffs[j] * words[j].matrix();
  }
  return {qubits, std::move(h)};
}

GridModel parse_grid_model(std::string_view name) {
  if (name == "heisenberg") return GridModel::Heisenberg;
  if (name == "tfim") return GridModel::Tfim;
  throw ValidationError("unknown model '" + std::string(name) +
                        "' (expected heisenberg or tfim)");
}

std::string to_string(GridModel model) {
  return model == GridModel::Heisenberg ? "heisenberg" : "tfim";
}

Ensemble build_grid_ensemble(GridModel model, int rows, int cols, double h) {
  if (rows < 1 || cols < 1)
    throw ValidationError("grid ensemble: rows and cols must be >= 1");
  if (!(h > 0)) throw ValidationError("grid ensemble: h must be positive");
  const int n = rows * cols;
  const auto site = [cols](int r, int c) { return r * cols + c; };

  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(site(r, c), site(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(site(r, c), site(r + 1, c));
    }

  const auto two_site = [n](char letter, int i, int j) {
    std::string s(n, 'I');
    s[i] = letter;
    s[j] = letter;
    return PauliWord::parse(s);
  };

  std::vector<PauliWord> words;
  if (model == GridModel::Heisenberg) {
    for (auto [i, j] : edges) {
      words.push_back(two_site('X', i, j));
      words.push_back(two_site('Y', i, j));
      words.push_back(two_site('Z', i, j));
    }
  } else {
    for (auto [i, j] : edges) words.push_back(two_site('Z', i, j));
    for (int i = 0; i < n; ++i) {
      std::string s(n, 'I');
      s[i] = 'X';
      words.push_back(PauliWord::parse(s));
    }
  }
  std::vector<double> bounds(words.size(), h);
  const std::string name = to_string(model) + "-" + std::to_string(rows) +
                           "x" + std::to_string(cols);
  return Ensemble::create(n, std::move(words), std::move(bounds), name);
}

void SamplerConfig::validate(const Ensemble& ensemble) const {
  if (!(beta > 0)) throw ValidationError("sampler: beta must be positive");
  if (steps < 1) throw ValidationError("sampler: steps must be >= 1");
  if (initial_state) {
    if (initial_state->qubits != ensemble.qubits)
      throw ValidationError("sampler: initial state qubit count mismatch");
    check_density(*initial_state, 1e-8);
  }
}

int weighted_index(const Ensemble& ensemble, Rng& rng) {
  const double u = rng.next_double();
  const auto it = std::lower_bound(ensemble.cumulative.begin(),
                                   ensemble.cumulative.end(), u);
  return static_cast<int>(it == ensemble.cumulative.end()
                              ? ensemble.cumulative.size() - 1
                              : static_cast<std::size_t>(
                                    it - ensemble.cumulative.begin()));
}

ThermalSample run(const Ensemble& ensemble, const SamplerConfig& config) {
  config.validate(ensemble);
  const long steps = config.steps;
  const double tau = config.tau(ensemble);
  const int L = ensemble.size();

  std::vector<DriftStepSpec> specs;
  specs.reserve(L);
  for (const PauliWord& w : ensemble.words) specs.emplace_back(w, tau);

  Matrix rho = config.initial_state
                   ? config.initial_state->data
                   : maximally_mixed(ensemble.qubits).data;

  ThermalSample sample;
  sample.seed = config.seed;
  sample.beta = config.beta;
  sample.steps = steps;
  sample.tau = tau;
  sample.endpoint.assign(L, 0);
  if (config.record_path) sample.path.reserve(steps);

  Rng rng(config.seed);
  DriftWorkspace ws;
  for (long k = 0; k < steps; ++k) {
    const int j = weighted_index(ensemble, rng);
    int direction;
    try {
      direction = drift_step_inplace(specs[j], rho, rng, ws).first;
    } catch (const NumericalError& err) {
      throw NumericalError("step " + std::to_string(k + 1) + " (word " +
                           ensemble.words[j].str() + "): " + err.what());
    }
    sample.endpoint[j] += direction;
    if (config.record_path)
      sample.path.push_back({j, static_cast<int8_t>(direction)});
  }

  sample.coefficients.resize(L);
  for (int j = 0; j < L; ++j)
    sample.coefficients[j] = ensemble.lambda *
                             static_cast<double>(sample.endpoint[j]) /
                             static_cast<double>(steps);

  sample.state = {ensemble.qubits, hermitized(rho)};
  if (config.compute_diagnostics)
    sample.trace_distance_to_label = label_trace_distance(ensemble, sample);
  if (!config.keep_state) sample.state.data.resize(0, 0);
  return sample;
}

int default_concurrency() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("THERMALDRIFT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < hw) hw = cap;
  }
  return hw;
}

BatchResult run_batch(const Ensemble& ensemble, const SamplerConfig& config,
                      int count, int concurrency) {
  if (count < 1) throw ValidationError("run_batch: count must be >= 1");
  config.validate(ensemble);
  if (concurrency <= 0) concurrency = default_concurrency();
  concurrency = std::min(concurrency, count);

  std::vector<std::optional<ThermalSample>> slots(count);
  std::vector<std::optional<RunFailure>> errors(count);
  std::atomic<int> next{0};

  auto worker = [&]() {
    for (;;) {
      const int idx = next.fetch_add(1);
      if (idx >= count) return;
      SamplerConfig local = config;
      local.seed = derive_stream_seed(config.seed, static_cast<uint64_t>(idx));
      try {
        ThermalSample s = run(ensemble, local);
        s.run_index = idx;
        slots[idx] = std::move(s);
      } catch (const std::exception& err) {
        errors[idx] = RunFailure{idx, err.what()};
      }
    }
  };

  if (concurrency == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(concurrency);
    for (int t = 0; t < concurrency; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  BatchResult out;
  out.samples.reserve(count);
  for (int i = 0; i < count; ++i) {
    if (slots[i]) out.samples.push_back(std::move(*slots[i]));
    if (errors[i]) out.failures.push_back(*errors[i]);
  }
  return out;
}

HermitianOperator sample_label(const Ensemble& ensemble,
                               const ThermalSample& sample) {
  return ensemble.hamiltonian(sample.coefficients);
}

double label_trace_distance(const Ensemble& ensemble,
                            const ThermalSample& sample) {
  if (sample.state.data.size() == 0)
    throw ValidationError("label_trace_distance: sample carries no state");
  const DensityMatrix target =
      gibbs_state(sample_label(ensemble, sample), sample.beta);
  return trace_distance(sample.state, target);
}

}  // namespace thermaldrift
