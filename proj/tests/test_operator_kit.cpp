#include <doctest.h>

#include <cmath>

#include "support/oracles.hpp"
#include "thermaldrift/operator_kit.hpp"

using namespace thermaldrift;

namespace {
double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_SUITE("operator_kit") {

TEST_CASE("expm of zero is the identity") {
  const Matrix m = expm_hermitian({2, Matrix::Zero(4, 4)});
  CHECK(max_abs(m - Matrix::Identity(4, 4)) < 1e-15);
}

TEST_CASE("expm of a diagonal matrix") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 0.7;
  a(1, 1) = -1.3;
  const Matrix m = expm_hermitian({1, a});
  CHECK(std::abs(m(0, 0) - std::exp(0.7)) < 1e-14);
  CHECK(std::abs(m(1, 1) - std::exp(-1.3)) < 1e-14);
  CHECK(std::abs(m(0, 1)) < 1e-15);
}

TEST_CASE("expm matches a Taylor series on random Hermitian input") {
  Rng rng(31);
  const Matrix a = oracles::random_hermitian(3, rng);
  CHECK(max_abs(expm_hermitian({3, a}) - oracles::taylor_expm(a)) < 1e-10);
}

TEST_CASE("expm rejects non-Hermitian input") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(expm_hermitian({1, a}), ValidationError);
}

TEST_CASE("gibbs state at beta 0 is maximally mixed") {
  Rng rng(37);
  const DensityMatrix rho = gibbs_state({2, oracles::random_hermitian(2, rng)}, 0.0);
  CHECK(max_abs(rho.data - Matrix::Identity(4, 4) / 4.0) < 1e-14);
}

TEST_CASE("gibbs state of a two-level system") {
  const double delta = 1.7, beta = 0.9;
  Matrix h = Matrix::Zero(2, 2);
  h(1, 1) = delta;
  const DensityMatrix rho = gibbs_state({1, h}, beta);
  const double z = 1.0 + std::exp(-beta * delta);
  CHECK(std::abs(rho.data(0, 0).real() - 1.0 / z) < 1e-12);
  CHECK(std::abs(rho.data(1, 1).real() - std::exp(-beta * delta) / z) < 1e-12);
}

TEST_CASE("gibbs state of Z tensor Z at beta 1") {
  const DensityMatrix rho = gibbs_state({2, PauliWord::parse("ZZ").matrix()}, 1.0);
  const double e = std::exp(1.0), z = 2 * e + 2 / e;
  CHECK(std::abs(rho.data(0, 0).real() - 1 / (e * z)) < 1e-12);
  CHECK(std::abs(rho.data(1, 1).real() - e / z) < 1e-12);
  CHECK(std::abs(rho.data(2, 2).real() - e / z) < 1e-12);
  CHECK(std::abs(rho.data(3, 3).real() - 1 / (e * z)) < 1e-12);
}

TEST_CASE("gibbs states satisfy the density invariants") {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(3));
    const double beta = 10.0 * rng.next_double();
    const DensityMatrix rho = gibbs_state({n, oracles::random_hermitian(n, rng)}, beta);
    REQUIRE_NOTHROW(check_density(rho));
  }
}

TEST_CASE("gibbs state is invariant under uniform shifts") {
  Rng rng(43);
  const Matrix h = oracles::random_hermitian(2, rng);
  const double c = 13.7 * rng.next_double() - 5;
  const DensityMatrix a = gibbs_state({2, h}, 1.3);
  const DensityMatrix b =
      gibbs_state({2, h + c * Matrix::Identity(4, 4)}, 1.3);
  CHECK(max_abs(a.data - b.data) < 1e-10);
}

TEST_CASE("log partition of the zero Hamiltonian") {
  CHECK(std::abs(log_partition({3, Matrix::Zero(8, 8)}, 2.0) - 3 * std::log(2.0)) <
        1e-12);
}

TEST_CASE("log partition of a single Z") {
  const double beta = 1.4;
  const double expected = std::log(2 * std::cosh(beta));
  CHECK(std::abs(log_partition({1, PauliWord::parse("Z").matrix()}, beta) -
                 expected) < 1e-12);
}

TEST_CASE("log partition matches the direct trace") {
  Rng rng(47);
  const Matrix h = oracles::random_hermitian(3, rng);
  const double direct = std::log(oracles::taylor_expm(-2.0 * h).trace().real());
  CHECK(std::abs(log_partition({3, h}, 2.0) - direct) < 1e-9);
}

TEST_CASE("trace distance of identical states is zero") {
  Rng rng(53);
  const DensityMatrix rho = oracles::random_density(2, rng);
  CHECK(trace_distance(rho, rho) < 1e-14);
}

TEST_CASE("trace distance of orthogonal pure states is two") {
  Vector a = Vector::Zero(4), b = Vector::Zero(4);
  a[0] = 1;
  b[3] = 1;
  CHECK(std::abs(trace_distance(pure_state(a), pure_state(b)) - 2.0) < 1e-14);
}

TEST_CASE("trace distance matches the singular value oracle") {
  Rng rng(59);
  const DensityMatrix a = oracles::random_density(2, rng);
  const DensityMatrix b = oracles::random_density(2, rng);
  Eigen::JacobiSVD<Matrix> svd(a.data - b.data);
  CHECK(std::abs(trace_distance(a, b) - svd.singularValues().sum()) < 1e-10);
}

TEST_CASE("trace distance is symmetric and satisfies the triangle inequality") {
  Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix a = oracles::random_density(2, rng);
    const DensityMatrix b = oracles::random_density(2, rng);
    const DensityMatrix c = oracles::random_density(2, rng);
    const double ab = trace_distance(a, b);
    REQUIRE(std::abs(ab - trace_distance(b, a)) < 1e-12);
    REQUIRE(ab <= trace_distance(a, c) + trace_distance(c, b) + 1e-9);
  }
}

TEST_CASE("modular Hamiltonian of the maximally mixed state") {
  const ModularSpectrum ms = modular_hamiltonian(maximally_mixed(3));
  CHECK(ms.excluded == 0);
  CHECK(ms.levels.size() == 8);
  for (double level : ms.levels) REQUIRE(std::abs(level - 3 * std::log(2.0)) < 1e-12);
}

TEST_CASE("modular Hamiltonian inverts the Gibbs map up to a shift") {
  Rng rng(67);
  const Matrix h = oracles::random_hermitian(2, rng);
  const DensityMatrix rho = gibbs_state({2, h}, 1.0);
  const ModularSpectrum ms = modular_hamiltonian(rho);
  const EigenSystem es = eigh(h);
  REQUIRE(ms.levels.size() == 4);
  const double log_z = log_partition({2, h}, 1.0);
  std::vector<double> expected;
  for (Eigen::Index i = 0; i < es.values.size(); ++i)
    expected.push_back(es.values[i] + log_z);
  std::sort(expected.begin(), expected.end());
  double mean_diff = 0, var = 0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    REQUIRE(std::abs(ms.levels[i] - expected[i]) < 1e-9);
    mean_diff += ms.levels[i] - (expected[i] - log_z);
  }
  mean_diff /= expected.size();
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const double d = ms.levels[i] - (expected[i] - log_z) - mean_diff;
    var += d * d;
  }
  CHECK(var / expected.size() < 1e-16);
}

TEST_CASE("modular Hamiltonian excludes levels below the floor") {
  Matrix data = Matrix::Zero(4, 4);
  data(0, 0) = 0.5;
  data(1, 1) = 0.3;
  data(2, 2) = 0.2;
  const ModularSpectrum ms = modular_hamiltonian({2, data});
  CHECK(ms.excluded == 1);
  CHECK(ms.levels.size() == 3);
}

TEST_CASE("modular Hamiltonian rejects an empty retained spectrum") {
  CHECK_THROWS_AS(modular_hamiltonian(maximally_mixed(2), 0.3), ValidationError);
}

}  // TEST_SUITE
