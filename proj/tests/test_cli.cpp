#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "thermaldrift/io.hpp"
#include "thermaldrift/sampler.hpp"
#include "thermaldrift/walk_theory.hpp"

using namespace thermaldrift;

namespace {

std::string cli_path() {
  const char* env = std::getenv("THERMALDRIFT_CLI");
  REQUIRE_MESSAGE(env != nullptr,
                  "THERMALDRIFT_CLI must point at the thermaldrift binary");
  return env;
}

struct CliResult {
  int exit_code = -1;
};

CliResult run_cli(const std::string& args, int threads = 0) {
  std::string command;
  if (threads > 0)
    command += "THERMALDRIFT_THREADS=" + std::to_string(threads) + " ";
  command += cli_path() + " " + args + " >/dev/null 2>/dev/null";
  const int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path scratch_dir(const std::string& tag) {
  const auto dir =
      std::filesystem::temp_directory_path() / ("thermaldrift_cli_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file: " << path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("sample runs are byte-identical across repeats and thread counts") {
  const auto dir = scratch_dir("determinism");
  const std::string base =
      "sample --rows 2 --cols 2 --beta 1.5 --steps 250 --runs 4 --seed 99 "
      "--dump-states --out ";
  CHECK(run_cli(base + (dir / "a").string(), 1).exit_code == 0);
  CHECK(run_cli(base + (dir / "b").string(), 1).exit_code == 0);
  CHECK(run_cli(base + (dir / "c").string(), 3).exit_code == 0);
  const std::string a = slurp(dir / "a" / "samples.txt");
  CHECK(a == slurp(dir / "b" / "samples.txt"));
  CHECK(a == slurp(dir / "c" / "samples.txt"));
}

TEST_CASE("sample records parse back and satisfy the sampler invariants") {
  const auto dir = scratch_dir("records");
  CHECK(run_cli("sample --rows 2 --cols 2 --beta 1 --steps 500 --runs 5 "
                "--seed 31 --out " +
                dir.string())
            .exit_code == 0);
  const auto records = read_sample_records(dir / "samples.txt");
  const Ensemble ensemble = build_grid_ensemble(GridModel::Heisenberg, 2, 2, 1.0);
  REQUIRE(records.size() == 5);
  for (const SampleRecord& r : records) {
    REQUIRE(r.ensemble == "heisenberg-2x2");
    REQUIRE(r.qubits == 4);
    REQUIRE(r.steps == 500);
    REQUIRE(r.coefficients.size() == static_cast<std::size_t>(ensemble.size()));
    REQUIRE(r.endpoint.size() == static_cast<std::size_t>(ensemble.size()));
    REQUIRE(std::abs(r.tau - ensemble.lambda * r.beta / r.steps) < 1e-12);
    REQUIRE(reach_parity(r.endpoint, r.steps) == 2);
    for (int j = 0; j < ensemble.size(); ++j) {
      REQUIRE(r.coefficients[j].first == ensemble.words[j].str());
      const double grid =
          r.coefficients[j].second * r.steps / ensemble.lambda;
      REQUIRE(std::abs(grid - std::round(grid)) < 1e-9);
      REQUIRE(grid == static_cast<double>(r.endpoint[j]));
    }
    REQUIRE(r.trace_distance.has_value());
    REQUIRE(*r.trace_distance >= 0.0);
  }
}

TEST_CASE("command-line flags override config file keys") {
  const auto dir = scratch_dir("override");
  write_file(dir / "run.cfg",
             "experiment = sample\n"
             "rows = 2\n"
             "cols = 2\n"
             "beta = 1\n"
             "steps = 40\n"
             "runs = 2\n"
             "seed = 5\n");
  CHECK(run_cli("sample --config " + (dir / "run.cfg").string() +
                " --beta 3 --out " + (dir / "out").string())
            .exit_code == 0);
  const auto records = read_sample_records(dir / "out" / "samples.txt");
  REQUIRE(records.size() == 2);
  CHECK(records[0].beta == 3.0);
}

TEST_CASE("the bare binary dispatches on the config discriminator") {
  const auto dir = scratch_dir("bare");
  write_file(dir / "run.cfg",
             "experiment = sample\n"
             "rows = 2\n"
             "cols = 2\n"
             "steps = 30\n"
             "runs = 1\n");
  CHECK(run_cli("--config " + (dir / "run.cfg").string() + " --out " +
                (dir / "out").string())
            .exit_code == 0);
  CHECK(std::filesystem::exists(dir / "out" / "samples.txt"));
}

TEST_CASE("validation failures exit with code 1") {
  const auto dir = scratch_dir("validation");
  CHECK(run_cli("sample --runs 0 --out " + dir.string()).exit_code == 1);
  write_file(dir / "bad.cfg", "experiment = sample\nbogus_key = 1\n");
  CHECK(run_cli("sample --config " + (dir / "bad.cfg").string()).exit_code == 1);
  write_file(dir / "mismatch.cfg", "experiment = scaling\n");
  CHECK(run_cli("sample --config " + (dir / "mismatch.cfg").string()).exit_code ==
        1);
}

TEST_CASE("verification failures exit with code 3") {
  const auto dir = scratch_dir("verify");
  CHECK(run_cli("verify-circuit --runs 2 --seed 4 --out " +
                (dir / "ok").string())
            .exit_code == 0);
  CHECK(run_cli("verify-circuit --runs 2 --seed 4 --theta-skew 0.01 --out " +
                (dir / "skew").string())
            .exit_code == 3);
  // the report carries per-case deviations
  const std::string csv = slurp(dir / "skew" / "verify.csv");
  CHECK(csv.find("prob_dev") != std::string::npos);
  CHECK(csv.find("FAIL") != std::string::npos);
}

TEST_CASE("scaling outputs are deterministic under threading") {
  const auto dir = scratch_dir("scaling");
  const std::string base =
      "scaling --rows 2 --cols 2 --beta-min 1 --beta-max 2 --beta-points 2 "
      "--k 1.5 --k 2 --runs 3 --step-constant 15 --seed 12 --out ";
  CHECK(run_cli(base + (dir / "a").string(), 1).exit_code == 0);
  CHECK(run_cli(base + (dir / "b").string(), 4).exit_code == 0);
  for (const char* file :
       {"scaling.csv", "scaling_summary.csv", "scaling_summary.json"})
    CHECK(slurp(dir / "a" / file) == slurp(dir / "b" / file));
}

TEST_CASE("golden tiny sample output") {
  const auto golden_path =
      std::filesystem::path(__FILE__).parent_path() / "golden" /
      "sample_tiny.txt";
  const auto dir = scratch_dir("golden");
  write_file(dir / "tiny.cfg",
             "experiment = sample\n"
             "model = tfim\n"
             "rows = 1\n"
             "cols = 2\n"
             "beta = 1.25\n"
             "steps = 16\n"
             "runs = 2\n"
             "seed = 2718281828\n");
  CHECK(run_cli("sample --config " + (dir / "tiny.cfg").string() + " --out " +
                (dir / "out").string())
            .exit_code == 0);
  CHECK(slurp(dir / "out" / "samples.txt") == slurp(golden_path));
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("sample --help").exit_code == 0);
}

}  // TEST_SUITE
