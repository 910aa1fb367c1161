#include "thermaldrift/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include <json.hpp>

#include "thermaldrift/io.hpp"

namespace thermaldrift::experiments {

namespace {

constexpr uint64_t kMcStream = 0x4d43;    // theoretical-marginal draws
constexpr uint64_t kInitStream = 0x494e;  // levelstats initial couplings
constexpr uint64_t kVerifyStream = 0x5643;
constexpr double kTrendDelta = 0.05;
constexpr double kDeskMaxSteps = 5e4;
// Desk-scale levelstats: N = C beta^2 must clear the walk's diffusive regime
// (N >> lambda^2 beta^2 fails desk budgets; this sits just above it) while
// keeping the sampled labels strong enough to mix the initial spectrum.
constexpr double kLevelstatsDeskConstant = 250.0;
// Coupling scale of the initial Heisenberg Hamiltonian relative to h. Small
// couplings keep the initial level spacings below the label perturbation;
// gap ratios are scale invariant, so the initial statistics are unchanged.
constexpr double kInitialCouplingScale = 0.15;

const std::vector<std::string> kExperiments = {
    "sample", "scaling", "marginal", "tradeoff", "levelstats",
    "verify-circuit"};

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

std::vector<ThermalSample> batch_or_throw(const Ensemble& ensemble,
                                          const SamplerConfig& config,
                                          int count) {
  BatchResult batch = run_batch(ensemble, config, count);
  if (!batch.failures.empty()) {
    const RunFailure& f = batch.failures.front();
    throw NumericalError("run " + std::to_string(f.run_index) + " failed (" +
                         std::to_string(batch.failures.size()) + " of " +
                         std::to_string(count) + "): " + f.message);
  }
  return std::move(batch.samples);
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  TextWriter w(path);
  w.stream() << j.dump(2) << "\n";
}

}  // namespace

void ExperimentConfig::apply(const ConfigEntry& e) {
  if (e.key == "experiment") {
    experiment = e.value;
  } else if (e.key == "model") {
    model = parse_grid_model(e.value);
  } else if (e.key == "rows") {
    rows = config_int(e);
  } else if (e.key == "cols") {
    cols = config_int(e);
  } else if (e.key == "h") {
    h = config_double(e);
  } else if (e.key == "beta") {
    beta = config_double(e);
  } else if (e.key == "beta_min") {
    beta_min = config_double(e);
  } else if (e.key == "beta_max") {
    beta_max = config_double(e);
  } else if (e.key == "beta_points") {
    beta_points = config_int(e);
  } else if (e.key == "k") {
    k_exponents = config_double_list(e);
  } else if (e.key == "step_constant") {
    step_constant = config_double(e);
  } else if (e.key == "steps") {
    steps_override = config_long(e);
  } else if (e.key == "runs") {
    runs = config_int(e);
  } else if (e.key == "mc_count") {
    mc_count = config_long(e);
  } else if (e.key == "seed") {
    seed = config_u64(e);
  } else if (e.key == "out") {
    out_dir = e.value;
  } else if (e.key == "dump_states") {
    dump_states = config_bool(e);
  } else if (e.key == "paper_scale") {
    paper_scale = config_bool(e);
  } else if (e.key == "axis") {
    axis = config_int(e);
  } else if (e.key == "bins") {
    bins = config_int(e);
  } else if (e.key == "theta_skew") {
    theta_skew = config_double(e);
  } else if (e.key == "max_rounds") {
    max_rounds = config_int(e);
  } else {
    throw ValidationError("config line " + std::to_string(e.line) +
                          ": unknown key '" + e.key + "'");
  }
}

void ExperimentConfig::validate() const {
  require(std::find(kExperiments.begin(), kExperiments.end(), experiment) !=
              kExperiments.end(),
          "unknown experiment '" + experiment + "'");
  require(rows >= 1 && cols >= 1, "rows and cols must be >= 1");
  require(h > 0, "h must be positive");
  require(beta > 0, "beta must be positive");
  require(beta_points >= 1, "beta_points must be >= 1");
  require(beta_min > 0 && beta_max >= beta_min,
          "beta range must be nonempty and positive");
  require(runs == -1 || runs >= 1, "runs must be >= 1");
  require(mc_count >= 1, "mc_count must be >= 1");
  require(steps_override >= 0, "steps must be nonnegative");
  require(bins >= 0, "bins must be nonnegative");
  require(max_rounds >= 1, "max_rounds must be >= 1");
  for (double k : k_exponents)
    require(k > 0, "k exponents must be positive");
}

GridModel ExperimentConfig::resolved_model() const {
  if (model) return *model;
  return experiment == "levelstats" ? GridModel::Tfim : GridModel::Heisenberg;
}

int ExperimentConfig::resolved_runs() const {
  if (runs >= 1) return runs;
  if (experiment == "sample") return 5;
  if (experiment == "scaling") return 30;
  if (experiment == "marginal") return 10000;
  if (experiment == "tradeoff") return 30;
  if (experiment == "levelstats") return 20;
  return 20;  // verify-circuit cases per qubit count
}

std::vector<double> ExperimentConfig::resolved_ks() const {
  if (!k_exponents.empty()) return k_exponents;
  if (experiment == "scaling") return {1.5, 2.0, 2.5};
  if (experiment == "tradeoff") return {1.0, 1.5, 2.0, 2.5, 3.0};
  return {2.0};
}

std::vector<double> ExperimentConfig::sweep_betas() const {
  std::vector<double> betas(beta_points);
  for (int i = 0; i < beta_points; ++i)
    betas[i] = beta_points == 1
                   ? beta_min
                   : beta_min + (beta_max - beta_min) * i / (beta_points - 1);
  return betas;
}

double ExperimentConfig::resolved_step_constant(double lambda) const {
  if (paper_scale) {
    const double c = lambda * lambda * 1e4;  // lambda^2 / eps0^{2/3}, eps0 = 1e-6
    std::cerr << "warning: paper-scale step constant C = " << c
              << "; expect very long runtimes\n";
    return c;
  }
  if (step_constant > 0) return step_constant;
  if (experiment == "levelstats") return kLevelstatsDeskConstant;
  double beta_ref = beta;
  if (experiment == "scaling") beta_ref = beta_max;
  double k_ref = 2.0;
  for (double k : resolved_ks()) k_ref = std::max(k_ref, k);
  return kDeskMaxSteps / std::pow(beta_ref, k_ref);
}

long ExperimentConfig::steps_for(double step_constant_in, double beta_in,
                                 double k) const {
  if (steps_override > 0) return steps_override;
  const double n = step_constant_in * std::pow(beta_in, k);
  return std::max(1L, std::lround(n));
}

Ensemble config_ensemble(const ExperimentConfig& config) {
  return build_grid_ensemble(config.resolved_model(), config.rows, config.cols,
                             config.h);
}

double theorem_trend(int qubits, long steps, double tau) {
  const double k0 = (qubits + 2) * std::log(2.0) +
                    std::log(static_cast<double>(steps) / kTrendDelta);
  return std::pow(k0, 1.5) * std::pow(static_cast<double>(steps), 1.5) *
         std::pow(tau, 3.0);
}

double fit_loglog_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw ValidationError("slope fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// -- sample -----------------------------------------------------------------

std::vector<ThermalSample> run_sample_data(const ExperimentConfig& config,
                                           const Ensemble& ensemble) {
  const double c = config.resolved_step_constant(ensemble.lambda);
  SamplerConfig sc;
  sc.beta = config.beta;
  sc.steps = config.steps_for(c, config.beta, 2.0);
  sc.seed = config.seed;
  sc.record_path = false;
  sc.compute_diagnostics = true;
  sc.keep_state = config.dump_states;
  return batch_or_throw(ensemble, sc, config.resolved_runs());
}

void run_sample(const ExperimentConfig& config) {
  const Ensemble ensemble = config_ensemble(config);
  const auto samples = run_sample_data(config, ensemble);
  write_sample_records(config.out_dir / "samples.txt", ensemble, samples,
                       config.dump_states);
  std::cout << "sample: wrote " << samples.size() << " records ("
            << ensemble.name << ", beta " << format_double(config.beta)
            << ", N " << samples.front().steps << ")\n";
}

// -- scaling ----------------------------------------------------------------

double ScalingPoint::mean() const {
  return std::accumulate(trace_distances.begin(), trace_distances.end(), 0.0) /
         static_cast<double>(trace_distances.size());
}

double ScalingPoint::max() const {
  return *std::max_element(trace_distances.begin(), trace_distances.end());
}

std::vector<ScalingPoint> run_scaling_data(const ExperimentConfig& config,
                                           const Ensemble& ensemble) {
  const double c = config.resolved_step_constant(ensemble.lambda);
  const std::vector<double> betas = config.sweep_betas();
  const std::vector<double> ks = config.resolved_ks();
  const int runs = config.resolved_runs();

  std::vector<ScalingPoint> points;
  uint64_t point_tag = 0;
  for (double k : ks) {
    for (double beta : betas) {
      ScalingPoint point;
      point.beta = beta;
      point.k = k;
      point.steps = config.steps_for(c, beta, k);

      SamplerConfig sc;
      sc.beta = beta;
      sc.steps = point.steps;
      sc.seed = derive_stream_seed(config.seed, point_tag++);
      sc.record_path = false;
      sc.compute_diagnostics = true;
      sc.keep_state = false;
      const auto samples = batch_or_throw(ensemble, sc, runs);
      point.trace_distances.reserve(samples.size());
      for (const ThermalSample& s : samples)
        point.trace_distances.push_back(*s.trace_distance_to_label);
      point.trend =
          theorem_trend(ensemble.qubits, point.steps,
                        ensemble.lambda * beta / static_cast<double>(point.steps));
      points.push_back(std::move(point));
    }
  }
  return points;
}

double scaling_slope(std::span<const ScalingPoint> points, double k) {
  std::vector<double> betas, means;
  for (const ScalingPoint& p : points)
    if (p.k == k) {
      betas.push_back(p.beta);
      means.push_back(p.mean());
    }
  return fit_loglog_slope(betas, means);
}

void run_scaling(const ExperimentConfig& config) {
  const Ensemble ensemble = config_ensemble(config);
  const auto points = run_scaling_data(config, ensemble);

  TextWriter csv(config.out_dir / "scaling.csv");
  csv.line("beta,k,N,run,trace_distance,theorem_trend");
  for (const ScalingPoint& p : points)
    for (std::size_t run = 0; run < p.trace_distances.size(); ++run)
      csv.line(csv_row({format_double(p.beta), format_double(p.k),
                        std::to_string(p.steps), std::to_string(run),
                        format_double(p.trace_distances[run]),
                        format_double(p.trend)}));

  TextWriter summary(config.out_dir / "scaling_summary.csv");
  summary.line("beta,k,N,mean_trace_distance,max_trace_distance,theorem_trend");
  for (const ScalingPoint& p : points)
    summary.line(csv_row({format_double(p.beta), format_double(p.k),
                          std::to_string(p.steps), format_double(p.mean()),
                          format_double(p.max()), format_double(p.trend)}));

  nlohmann::json j;
  for (double k : config.resolved_ks()) {
    const double slope = scaling_slope(points, k);
    j["slopes"][format_double(k)] = slope;
    j["expected_slopes"][format_double(k)] = 2.0 - k;
    std::cout << "scaling: k " << format_double(k) << " slope "
              << format_double(slope) << " (reference " << format_double(2.0 - k)
              << ")\n";
  }
  write_json(config.out_dir / "scaling_summary.json", j);
}

// -- marginal ---------------------------------------------------------------

MarginalResult run_marginal_data(const ExperimentConfig& config,
                                 const Ensemble& ensemble) {
  int axis = config.axis;
  if (axis < 0)
    axis = config.resolved_model() == GridModel::Heisenberg ? 1 : 0;
  require(axis < ensemble.size(), "axis exceeds the ensemble size");

  const double c = config.resolved_step_constant(ensemble.lambda);
  MarginalResult result;
  result.axis = axis;
  result.word = ensemble.words[axis].str();
  result.steps = config.steps_for(c, config.beta, 2.0);

  SamplerConfig sc;
  sc.beta = config.beta;
  sc.steps = result.steps;
  sc.seed = config.seed;
  sc.record_path = false;
  sc.compute_diagnostics = false;
  sc.keep_state = false;
  const auto samples = batch_or_throw(ensemble, sc, config.resolved_runs());

  std::vector<double> values;
  values.reserve(samples.size());
  for (const ThermalSample& s : samples) values.push_back(s.coefficients[axis]);

  // Bins must stay a few label-lattice spacings wide or the histogram
  // aliases against the grid of reachable coefficients.
  const double lattice = ensemble.lambda / static_cast<double>(result.steps);
  std::vector<double> edges;
  if (config.bins > 0) {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    edges = uniform_edges(*lo, *hi + 1e-12, config.bins);
  } else {
    edges = freedman_diaconis_edges(values, 5.0 * lattice);
  }

  result.empirical = histogram_from_values(values, edges);
  Rng mc_rng(derive_stream_seed(config.seed, kMcStream));
  result.theoretical = theoretical_marginal(ensemble, config.beta, result.steps,
                                            axis, config.mc_count, mc_rng, edges);
  result.tv_distance = total_variation(result.empirical, result.theoretical);
  return result;
}

void run_marginal(const ExperimentConfig& config) {
  const Ensemble ensemble = config_ensemble(config);
  const MarginalResult r = run_marginal_data(config, ensemble);

  TextWriter csv(config.out_dir / "marginal.csv");
  csv.line("bin_left,bin_right,empirical_density,theoretical_density");
  for (std::size_t i = 0; i < r.empirical.density.size(); ++i)
    csv.line(csv_row({format_double(r.empirical.edges[i]),
                      format_double(r.empirical.edges[i + 1]),
                      format_double(r.empirical.density[i]),
                      format_double(r.theoretical.density[i])}));

  nlohmann::json j;
  j["axis"] = r.axis;
  j["word"] = r.word;
  j["steps"] = r.steps;
  j["samples"] = config.resolved_runs();
  j["mc_count"] = config.mc_count;
  j["tv_distance"] = r.tv_distance;
  write_json(config.out_dir / "marginal_summary.json", j);
  std::cout << "marginal: coefficient " << r.word << ", TV distance "
            << format_double(r.tv_distance) << "\n";
}

// -- tradeoff ---------------------------------------------------------------

std::vector<TradeoffPoint> run_tradeoff_data(const ExperimentConfig& config,
                                             const Ensemble& ensemble) {
  const double c = config.resolved_step_constant(ensemble.lambda);
  const int runs = config.resolved_runs();
  std::vector<TradeoffPoint> points;
  uint64_t point_tag = 0;
  for (double k : config.resolved_ks()) {
    TradeoffPoint point;
    point.k = k;
    point.steps = config.steps_for(c, config.beta, k);

    SamplerConfig sc;
    sc.beta = config.beta;
    sc.steps = point.steps;
    sc.seed = derive_stream_seed(config.seed, point_tag++);
    sc.record_path = false;
    sc.compute_diagnostics = true;
    sc.keep_state = false;
    const auto samples = batch_or_throw(ensemble, sc, runs);

    double max_eps = 0;
    std::vector<double> norms;
    norms.reserve(samples.size());
    for (const ThermalSample& s : samples) {
      max_eps = std::max(max_eps, *s.trace_distance_to_label);
      norms.push_back(operator_norm(sample_label(ensemble, s).data));
    }
    point.inv_epsilon = 1.0 / max_eps;
    const double mean =
        std::accumulate(norms.begin(), norms.end(), 0.0) / norms.size();
    double var = 0;
    for (double v : norms) var += (v - mean) * (v - mean);
    var /= norms.size() > 1 ? (norms.size() - 1) : 1;
    point.hnorm_mean = mean;
    point.hnorm_se = std::sqrt(var / norms.size());
    points.push_back(point);
  }
  return points;
}

void run_tradeoff(const ExperimentConfig& config) {
  const Ensemble ensemble = config_ensemble(config);
  const auto points = run_tradeoff_data(config, ensemble);
  TextWriter csv(config.out_dir / "tradeoff.csv");
  csv.line("k,N,inv_epsilon_mean,hnorm_mean,hnorm_se");
  for (const TradeoffPoint& p : points)
    csv.line(csv_row({format_double(p.k), std::to_string(p.steps),
                      format_double(p.inv_epsilon), format_double(p.hnorm_mean),
                      format_double(p.hnorm_se)}));
  std::cout << "tradeoff: " << points.size() << " sweep points ("
            << ensemble.name << ", beta " << format_double(config.beta)
            << ")\n";
}

// -- levelstats ---------------------------------------------------------------

DensityMatrix levelstats_initial_state(const ExperimentConfig& config) {
  const int n = config.rows * config.cols;
  require(n <= kDenseQubitLimit, "levelstats grid too large for dense states");
  const auto site = [&](int r, int c) { return r * config.cols + c; };
  Rng rng(derive_stream_seed(config.seed, kInitStream));
  const double scale = kInitialCouplingScale * config.h;

  const Eigen::Index d = Eigen::Index{1} << n;
  Matrix h_init = Matrix::Zero(d, d);
  auto add_edge = [&](int i, int j) {
    const double coupling = scale * (2 * rng.next_double() - 1);
    for (char letter : {'X', 'Y', 'Z'}) {
      std::string s(n, 'I');
      s[i] = letter;
      s[j] = letter;
      h_init += coupling * PauliWord::parse(s).matrix();
    }
  };
  for (int r = 0; r < config.rows; ++r)
    for (int c = 0; c < config.cols; ++c) {
      if (c + 1 < config.cols) add_edge(site(r, c), site(r, c + 1));
      if (r + 1 < config.rows) add_edge(site(r, c), site(r + 1, c));
    }
  // random longitudinal fields: the disorder localizes the model (near
  // Poisson statistics) and removes the global spin-flip parity that the
  // sampled ensembles share, so the output is free to develop repulsion
  for (int i = 0; i < n; ++i) {
    std::string s(n, 'I');
    s[i] = 'Z';
    h_init += scale * (2 * rng.next_double() - 1) * PauliWord::parse(s).matrix();
  }
  return gibbs_state({n, std::move(h_init)}, config.beta);
}

LevelStatsResult run_levelstats_data(const ExperimentConfig& config,
                                     const Ensemble& ensemble) {
  const DensityMatrix initial = levelstats_initial_state(config);
  const int bins = config.bins > 0 ? config.bins : kDefaultRatioBins;

  LevelStatsResult result;
  result.initial = modular_gap_ratios(initial, kDefaultMergeTol, 1e-14, bins);

  const double c = config.resolved_step_constant(ensemble.lambda);
  SamplerConfig sc;
  sc.beta = config.beta;
  sc.steps = config.steps_for(c, config.beta, 2.0);
  sc.seed = config.seed;
  sc.initial_state = initial;
  sc.record_path = false;
  sc.compute_diagnostics = false;
  sc.keep_state = true;
  const auto samples = batch_or_throw(ensemble, sc, config.resolved_runs());

  std::vector<GapRatioStats> parts;
  parts.reserve(samples.size());
  for (const ThermalSample& s : samples)
    parts.push_back(modular_gap_ratios(s.state, kDefaultMergeTol, 1e-14, bins));
  result.output = pool_ratios(parts, bins);

  result.l1_initial_poisson = l1_distance_to(result.initial.histogram, poisson_density);
  result.l1_initial_goe = l1_distance_to(result.initial.histogram, goe_density);
  result.l1_initial_gue = l1_distance_to(result.initial.histogram, gue_density);
  result.l1_output_poisson = l1_distance_to(result.output.histogram, poisson_density);
  result.l1_output_goe = l1_distance_to(result.output.histogram, goe_density);
  result.l1_output_gue = l1_distance_to(result.output.histogram, gue_density);
  return result;
}

namespace {
void write_ratio_csv(const std::filesystem::path& path,
                     const GapRatioStats& stats) {
  TextWriter csv(path);
  csv.line("bin_left,bin_right,density,poisson_ref,wd_ref");
  const Histogram& h = stats.histogram;
  for (std::size_t i = 0; i < h.density.size(); ++i) {
    const double mid = 0.5 * (h.edges[i] + h.edges[i + 1]);
    csv.line(csv_row({format_double(h.edges[i]), format_double(h.edges[i + 1]),
                      format_double(h.density[i]),
                      format_double(poisson_density(mid)),
                      format_double(goe_density(mid))}));
  }
}
}  // namespace

void run_levelstats(const ExperimentConfig& config) {
  const Ensemble ensemble = config_ensemble(config);
  const LevelStatsResult r = run_levelstats_data(config, ensemble);

  write_ratio_csv(config.out_dir / "levelstats_initial.csv", r.initial);
  write_ratio_csv(config.out_dir / "levelstats_output.csv", r.output);

  nlohmann::json j;
  j["mean_r_initial"] = r.initial.mean_r;
  j["mean_r_output"] = r.output.mean_r;
  j["ratio_count_initial"] = r.initial.ratios.size();
  j["ratio_count_output"] = r.output.ratios.size();
  j["merged_levels_initial"] = r.initial.merged_levels;
  j["merged_levels_output"] = r.output.merged_levels;
  j["excluded_levels_initial"] = r.initial.excluded_levels;
  j["excluded_levels_output"] = r.output.excluded_levels;
  j["l1_initial"] = {{"poisson", r.l1_initial_poisson},
                     {"goe", r.l1_initial_goe},
                     {"gue", r.l1_initial_gue}};
  j["l1_output"] = {{"poisson", r.l1_output_poisson},
                    {"goe", r.l1_output_goe},
                    {"gue", r.l1_output_gue}};
  write_json(config.out_dir / "levelstats_summary.json", j);
  std::cout << "levelstats: mean r " << format_double(r.initial.mean_r)
            << " (initial) -> " << format_double(r.output.mean_r)
            << " (output)\n";
}

// -- verify-circuit -----------------------------------------------------------

VerifyResult run_verify_data(const ExperimentConfig& config) {
  VerifyResult result;
  const std::vector<double> taus = {0.05, 0.25, 0.5, 0.75, 1.0};
  const int cases_per_n = config.resolved_runs();
  Rng rng(derive_stream_seed(config.seed, kVerifyStream));

  for (int n = 1; n <= 3; ++n) {
    const Eigen::Index d = Eigen::Index{1} << n;
    for (int idx = 0; idx < cases_per_n; ++idx) {
      // random non-identity word; identity sites exercise the padding path
      std::string letters(n, 'I');
      do {
        const char alphabet[] = {'I', 'X', 'Y', 'Z'};
        for (int s = 0; s < n; ++s)
          letters[s] = alphabet[rng.next_below(4)];
      } while (letters.find_first_not_of('I') == std::string::npos);
      const PauliWord word = PauliWord::parse(letters);
      const double tau = taus[idx % taus.size()];

      Matrix g(d, d);
      for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index col = 0; col < d; ++col)
          g(r, col) = Complex(rng.next_gaussian(), rng.next_gaussian());
      Matrix rho_data = g * g.adjoint();
      rho_data /= rho_data.trace().real();
      const DensityMatrix rho{n, std::move(rho_data)};

      const DriftStepSpec spec(word, tau);
      const BranchProbabilities bp = branch_probabilities(spec, rho);
      const DensityMatrix post_up_cf = apply_drift_forced(spec, rho, 1).post_state;
      const DensityMatrix post_down_cf =
          apply_drift_forced(spec, rho, -1).post_state;

      const ChannelAnalysis a =
          drift_channel_via_circuit(word, tau, rho, config.theta_skew);
      const double directional = a.p_up + a.p_down;

      VerifyCase vc;
      vc.qubits = n;
      vc.word = word.str();
      vc.tau = tau;
      vc.loop_dev = std::abs(a.p_loop - loop_probability(tau));
      vc.prob_dev = std::max(std::abs(a.p_up / directional - bp.up),
                             std::abs(a.p_down / directional - bp.down));
      vc.up_state_dist = trace_distance(a.post_up, post_up_cf);
      vc.down_state_dist = trace_distance(a.post_down, post_down_cf);
      vc.loop_state_dist = trace_distance(a.post_loop, rho);
      vc.passed = vc.loop_dev <= result.tolerance &&
                  vc.prob_dev <= result.tolerance &&
                  vc.up_state_dist <= result.tolerance &&
                  vc.down_state_dist <= result.tolerance &&
                  vc.loop_state_dist <= result.tolerance;
      result.cases.push_back(std::move(vc));
    }
  }
  result.all_passed =
      std::all_of(result.cases.begin(), result.cases.end(),
                  [](const VerifyCase& c) { return c.passed; });
  return result;
}

bool run_verify(const ExperimentConfig& config) {
  const VerifyResult r = run_verify_data(config);
  TextWriter csv(config.out_dir / "verify.csv");
  csv.line(
      "n,word,tau,prob_dev,loop_dev,up_state_dist,down_state_dist,"
      "loop_state_dist,status");
  for (const VerifyCase& c : r.cases)
    csv.line(csv_row({std::to_string(c.qubits), c.word, format_double(c.tau),
                      format_double(c.prob_dev), format_double(c.loop_dev),
                      format_double(c.up_state_dist),
                      format_double(c.down_state_dist),
                      format_double(c.loop_state_dist),
                      c.passed ? "pass" : "FAIL"}));
  int failed = 0;
  for (const VerifyCase& c : r.cases)
    if (!c.passed) ++failed;
  std::cout << "verify-circuit: " << (r.cases.size() - failed) << "/"
            << r.cases.size() << " cases passed (tolerance "
            << format_double(r.tolerance) << ")\n";
  return r.all_passed;
}

int dispatch(const ExperimentConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.out_dir);
  if (config.experiment == "sample") {
    run_sample(config);
  } else if (config.experiment == "scaling") {
    run_scaling(config);
  } else if (config.experiment == "marginal") {
    run_marginal(config);
  } else if (config.experiment == "tradeoff") {
    run_tradeoff(config);
  } else if (config.experiment == "levelstats") {
    run_levelstats(config);
  } else {
    return run_verify(config) ? 0 : 3;
  }
  return 0;
}

}  // namespace thermaldrift::experiments
