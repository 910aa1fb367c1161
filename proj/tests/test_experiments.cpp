#include <doctest.h>

#include <cmath>
#include <fstream>

#include "support/oracles.hpp"
#include "thermaldrift/experiments.hpp"
#include "thermaldrift/io.hpp"

using namespace thermaldrift;
using experiments::ExperimentConfig;

namespace {

std::filesystem::path scratch_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("thermaldrift_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::filesystem::path write_file(const std::filesystem::path& path,
                                 const std::string& text) {
  std::ofstream out(path);
  out << text;
  return path;
}

std::string first_line(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  return line;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("config files parse with line-precise errors") {
  const auto dir = scratch_dir("config");
  const auto good = write_file(dir / "good.cfg",
                               "# comment\n"
                               "experiment = sample\n"
                               "beta = 2.5\n"
                               "k = 1.5, 2, 2.5\n");
  const auto entries = parse_config_file(good);
  REQUIRE(entries.size() == 3);
  CHECK(entries[1].line == 3);
  CHECK(config_double(entries[1]) == 2.5);
  CHECK(config_double_list(entries[2]) == std::vector<double>{1.5, 2.0, 2.5});

  const auto broken = write_file(dir / "broken.cfg", "beta\n");
  CHECK_THROWS_WITH_AS(parse_config_file(broken),
                       doctest::Contains("broken.cfg:1"), ValidationError);

  const auto bad_value = write_file(dir / "bad.cfg", "\n\nbeta = abc\n");
  const auto bad_entries = parse_config_file(bad_value);
  CHECK_THROWS_WITH_AS(config_double(bad_entries[0]),
                       doctest::Contains("line 3"), ValidationError);
}

TEST_CASE("unknown config keys are rejected") {
  ExperimentConfig cfg;
  cfg.experiment = "sample";
  CHECK_THROWS_WITH_AS(cfg.apply({4, "betaa", "1"}),
                       doctest::Contains("line 4"), ValidationError);
}

TEST_CASE("validation catches bad counts") {
  ExperimentConfig cfg;
  cfg.experiment = "sample";
  cfg.runs = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg.runs = -1;
  CHECK_NOTHROW(cfg.validate());
  cfg.experiment = "nonsense";
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("per-experiment defaults") {
  ExperimentConfig cfg;
  cfg.experiment = "levelstats";
  CHECK(cfg.resolved_model() == GridModel::Tfim);
  CHECK(cfg.resolved_runs() == 20);
  cfg.experiment = "scaling";
  CHECK(cfg.resolved_model() == GridModel::Heisenberg);
  CHECK(cfg.resolved_runs() == 30);
  CHECK(cfg.resolved_ks() == std::vector<double>{1.5, 2.0, 2.5});
  cfg.experiment = "tradeoff";
  CHECK(cfg.resolved_ks() == std::vector<double>{1.0, 1.5, 2.0, 2.5, 3.0});
}

TEST_CASE("desk step constant caps the sweep's largest run") {
  ExperimentConfig cfg;
  cfg.experiment = "scaling";
  cfg.beta_max = 6.0;
  const double c = cfg.resolved_step_constant(21.0);
  CHECK(cfg.steps_for(c, 6.0, 2.5) <= 50000);
  CHECK(cfg.steps_for(c, 6.0, 2.5) >= 49000);
  cfg.steps_override = 123;
  CHECK(cfg.steps_for(c, 6.0, 2.5) == 123);
}

TEST_CASE("paper-scale step constant") {
  ExperimentConfig cfg;
  cfg.experiment = "sample";
  cfg.paper_scale = true;
  CHECK(cfg.resolved_step_constant(36.0) == doctest::Approx(36.0 * 36.0 * 1e4));
}

TEST_CASE("log-log slope fit recovers a power law") {
  std::vector<double> xs, ys;
  for (double x : {1.0, 2.0, 3.0, 4.0}) {
    xs.push_back(x);
    ys.push_back(2.5 * std::pow(x, -1.7));
  }
  CHECK(experiments::fit_loglog_slope(xs, ys) == doctest::Approx(-1.7));
}

TEST_CASE("scaling sweep slopes straddle the reference exponents") {
  ExperimentConfig cfg;
  cfg.experiment = "scaling";
  cfg.rows = 2;
  cfg.cols = 2;
  cfg.beta_min = 1;
  cfg.beta_max = 4;
  cfg.beta_points = 4;
  cfg.runs = 6;
  cfg.step_constant = 120;
  cfg.seed = 424242;
  const Ensemble ensemble = experiments::config_ensemble(cfg);
  const auto points = experiments::run_scaling_data(cfg, ensemble);
  REQUIRE(points.size() == 12);
  const double s15 = experiments::scaling_slope(points, 1.5);
  const double s20 = experiments::scaling_slope(points, 2.0);
  const double s25 = experiments::scaling_slope(points, 2.5);
  CHECK(std::abs(s20 - 0.0) < 0.5);
  CHECK(s15 > s20);
  CHECK(s20 > s25);
  for (const auto& p : points) {
    REQUIRE(p.trend > 0.0);
    REQUIRE(p.trace_distances.size() == 6);
  }
}

TEST_CASE("error shrinks as the step constant grows") {
  ExperimentConfig cfg;
  cfg.experiment = "scaling";
  cfg.rows = 2;
  cfg.cols = 2;
  cfg.beta_min = 2;
  cfg.beta_max = 2;
  cfg.beta_points = 1;
  cfg.k_exponents = {2.0};
  cfg.runs = 8;
  cfg.seed = 5150;
  const Ensemble ensemble = experiments::config_ensemble(cfg);
  cfg.step_constant = 40;
  const double coarse = experiments::run_scaling_data(cfg, ensemble)[0].mean();
  cfg.step_constant = 400;
  const double fine = experiments::run_scaling_data(cfg, ensemble)[0].mean();
  CHECK(fine < coarse);
}

TEST_CASE("near-zero beta gives a symmetric marginal") {
  ExperimentConfig cfg;
  cfg.experiment = "marginal";
  cfg.rows = 2;
  cfg.cols = 2;
  cfg.beta = 1e-9;
  cfg.steps_override = 200;
  cfg.runs = 600;
  cfg.mc_count = 600;
  cfg.seed = 616;
  const Ensemble ensemble = experiments::config_ensemble(cfg);
  const auto result = experiments::run_marginal_data(cfg, ensemble);
  double mean = 0, mass = 0, var = 0;
  for (std::size_t i = 0; i < result.empirical.density.size(); ++i) {
    const double mid =
        0.5 * (result.empirical.edges[i] + result.empirical.edges[i + 1]);
    const double w = result.empirical.density[i] *
                     (result.empirical.edges[i + 1] - result.empirical.edges[i]);
    mean += mid * w;
    var += mid * mid * w;
    mass += w;
  }
  CHECK(mass == doctest::Approx(1.0));
  CHECK(std::abs(mean) < 3 * std::sqrt(var / 600));
  // the histogram integrates to one by construction
}

TEST_CASE("marginal result carries matching histograms") {
  ExperimentConfig cfg;
  cfg.experiment = "marginal";
  cfg.rows = 2;
  cfg.cols = 2;
  cfg.beta = 2.0;
  cfg.steps_override = 300;
  cfg.runs = 500;
  cfg.mc_count = 800;
  cfg.seed = 99;
  const Ensemble ensemble = experiments::config_ensemble(cfg);
  const auto result = experiments::run_marginal_data(cfg, ensemble);
  CHECK(result.word == "YYII");  // first nearest-neighbor YY coefficient
  CHECK(result.empirical.edges == result.theoretical.edges);
  CHECK(result.tv_distance < 0.25);
}

TEST_CASE("tradeoff trends move in opposite directions") {
  ExperimentConfig cfg;
  cfg.experiment = "tradeoff";
  cfg.rows = 2;
  cfg.cols = 2;
  cfg.beta = 2.0;
  cfg.runs = 8;
  cfg.step_constant = 60;
  cfg.seed = 8080;
  const Ensemble ensemble = experiments::config_ensemble(cfg);
  const auto points = experiments::run_tradeoff_data(cfg, ensemble);
  REQUIRE(points.size() == 5);
  int eps_inversions = 0, norm_inversions = 0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i + 1].inv_epsilon < points[i].inv_epsilon) ++eps_inversions;
    if (points[i + 1].hnorm_mean > points[i].hnorm_mean) ++norm_inversions;
  }
  CHECK(eps_inversions <= 1);
  CHECK(norm_inversions <= 1);
}

TEST_CASE("levelstats shows the crossover at desk scale") {
  ExperimentConfig cfg;
  cfg.experiment = "levelstats";
  cfg.rows = 2;
  cfg.cols = 3;
  cfg.beta = 2.0;
  cfg.seed = 1;
  const Ensemble ensemble = experiments::config_ensemble(cfg);
  const auto result = experiments::run_levelstats_data(cfg, ensemble);
  CHECK(std::abs(result.initial.mean_r - 0.386) < 0.06);
  CHECK(result.output.mean_r - result.initial.mean_r > 0.05);
  CHECK(result.l1_output_goe < result.l1_output_poisson);
  for (double r : result.output.ratios) {
    REQUIRE(r >= 0.0);
    REQUIRE(r <= 1.0);
  }
}

TEST_CASE("verify data flags a corrupted circuit") {
  ExperimentConfig cfg;
  cfg.experiment = "verify-circuit";
  cfg.runs = 3;
  cfg.seed = 7;
  CHECK(experiments::run_verify_data(cfg).all_passed);
  cfg.theta_skew = 0.01;
  CHECK_FALSE(experiments::run_verify_data(cfg).all_passed);
}

TEST_CASE("output files carry the pinned headers") {
  const auto dir = scratch_dir("headers");
  ExperimentConfig cfg;
  cfg.rows = 2;
  cfg.cols = 2;
  cfg.seed = 3;
  cfg.out_dir = dir;

  cfg.experiment = "scaling";
  cfg.beta_min = 1;
  cfg.beta_max = 2;
  cfg.beta_points = 2;
  cfg.runs = 2;
  cfg.step_constant = 10;
  experiments::run_scaling(cfg);
  CHECK(first_line(dir / "scaling.csv") ==
        "beta,k,N,run,trace_distance,theorem_trend");
  CHECK(first_line(dir / "scaling_summary.csv") ==
        "beta,k,N,mean_trace_distance,max_trace_distance,theorem_trend");

  cfg.experiment = "marginal";
  cfg.beta = 2;
  cfg.steps_override = 100;
  cfg.runs = 200;
  cfg.mc_count = 200;
  experiments::run_marginal(cfg);
  CHECK(first_line(dir / "marginal.csv") ==
        "bin_left,bin_right,empirical_density,theoretical_density");

  cfg.experiment = "tradeoff";
  cfg.runs = 2;
  cfg.k_exponents = {1.0, 2.0};
  experiments::run_tradeoff(cfg);
  CHECK(first_line(dir / "tradeoff.csv") ==
        "k,N,inv_epsilon_mean,hnorm_mean,hnorm_se");

  cfg.experiment = "levelstats";
  cfg.runs = 2;
  cfg.k_exponents.clear();
  cfg.steps_override = 400;
  experiments::run_levelstats(cfg);
  CHECK(first_line(dir / "levelstats_initial.csv") ==
        "bin_left,bin_right,density,poisson_ref,wd_ref");
  CHECK(first_line(dir / "levelstats_output.csv") ==
        "bin_left,bin_right,density,poisson_ref,wd_ref");

  cfg.experiment = "verify-circuit";
  cfg.runs = 2;
  CHECK(experiments::run_verify(cfg));
  CHECK(first_line(dir / "verify.csv") ==
        "n,word,tau,prob_dev,loop_dev,up_state_dist,down_state_dist,"
        "loop_state_dist,status");
}

}  // TEST_SUITE
