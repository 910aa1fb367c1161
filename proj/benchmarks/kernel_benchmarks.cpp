#include <benchmark/benchmark.h>

#include "thermaldrift/dilation_circuit.hpp"
#include "thermaldrift/sampler.hpp"

using namespace thermaldrift;

namespace {

PauliWord random_word(int n, Rng& rng) {
  std::string s(n, 'I');
  const char alphabet[] = {'I', 'X', 'Y', 'Z'};
  do {
    for (int i = 0; i < n; ++i) s[i] = alphabet[rng.next_below(4)];
  } while (s.find_first_not_of('I') == std::string::npos);
  return PauliWord::parse(s);
}

void BM_ApplyWord(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(7);
  const PauliWord w = random_word(n, rng);
  Vector in(Eigen::Index{1} << n), out(in.size());
  for (Eigen::Index i = 0; i < in.size(); ++i)
    in[i] = Complex(rng.next_gaussian(), rng.next_gaussian());
  for (auto _ : state) {
    w.apply({in.data(), static_cast<std::size_t>(in.size())},
            {out.data(), static_cast<std::size_t>(out.size())});
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_ApplyWord)->Arg(4)->Arg(8)->Arg(12);

void BM_DriftStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(11);
  const DriftStepSpec spec(random_word(n, rng), 0.05);
  Matrix rho = maximally_mixed(n).data;
  DriftWorkspace ws;
  for (auto _ : state) {
    drift_step_inplace(spec, rho, rng, ws);
    benchmark::DoNotOptimize(rho.data());
  }
}
BENCHMARK(BM_DriftStep)->Arg(4)->Arg(6)->Arg(9);

void BM_SamplerRun(benchmark::State& state) {
  const Ensemble ensemble = build_grid_ensemble(GridModel::Heisenberg, 2, 2, 1.0);
  SamplerConfig config;
  config.beta = 2.0;
  config.steps = state.range(0);
  config.seed = 5;
  config.record_path = false;
  for (auto _ : state) {
    ThermalSample s = run(ensemble, config);
    benchmark::DoNotOptimize(s.state.data.data());
  }
}
BENCHMARK(BM_SamplerRun)->Arg(200)->Arg(2000);

void BM_DilationRound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(13);
  const PauliWord word = PauliWord::parse(std::string(n, 'Z'));
  const DilationCircuit circuit = build_circuit(word, 0.4);
  const DensityMatrix rho = maximally_mixed(n);
  for (auto _ : state) {
    auto shot = run_single_shot(circuit, rho, rng);
    benchmark::DoNotOptimize(shot.prob);
  }
}
BENCHMARK(BM_DilationRound)->Arg(1)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
