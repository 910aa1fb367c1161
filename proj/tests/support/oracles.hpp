#pragma once

// Test-only oracles, independent of the library code paths they check:
// a Taylor-series matrix exponential, an exact lattice-walk endpoint law,
// random operator generators, quadrature, and a chi-squared tail.

#include <functional>
#include <vector>

#include "thermaldrift/operator_kit.hpp"
#include "thermaldrift/pauli.hpp"
#include "thermaldrift/rng.hpp"
#include "thermaldrift/walk_theory.hpp"

namespace oracles {

using thermaldrift::Complex;
using thermaldrift::Matrix;
using thermaldrift::Vector;

/// Plain truncated Taylor series for e^A (no eigendecomposition).
Matrix taylor_expm(const Matrix& a, int terms = 30);

Matrix random_hermitian(int qubits, thermaldrift::Rng& rng);
thermaldrift::DensityMatrix random_density(int qubits, thermaldrift::Rng& rng);
Vector random_state(int qubits, thermaldrift::Rng& rng);
thermaldrift::PauliWord random_word(int qubits, thermaldrift::Rng& rng,
                                    bool allow_identity_sites = true);

/// Exact endpoint distribution of the fair-coin lattice walk, computed by
/// stepping the full distribution (equivalent to path enumeration).
class ExactWalkLaw {
 public:
  ExactWalkLaw(const thermaldrift::WalkLaw& law);
  double prob(std::span<const long> x) const;

 private:
  int dims_;
  long steps_;
  std::vector<double> table_;
  long side_() const { return 2 * steps_ + 1; }
  long index_(std::span<const long> x) const;
};

double simpson(const std::function<double(double)>& f, double a, double b,
               int intervals = 2000);

/// Upper tail P(X >= value) of a chi-squared distribution with dof degrees.
double chi_squared_sf(double value, int dof);

/// GOE draw: (A + A^T) / 2 with i.i.d. standard normal entries.
Eigen::MatrixXd goe_matrix(int dim, thermaldrift::Rng& rng);

}  // namespace oracles
