#pragma once

#include <vector>

#include "thermaldrift/types.hpp"

namespace thermaldrift {

struct HermitianOperator {
  int qubits = 0;
  Matrix data;
};

/// Dense density operator: Hermitian, PSD, unit trace (see check_density).
struct DensityMatrix {
  int qubits = 0;
  Matrix data;
};

DensityMatrix maximally_mixed(int qubits);
DensityMatrix pure_state(const Vector& amplitudes);

Matrix hermitized(const Matrix& a);
bool is_hermitian(const Matrix& a, double tol = 1e-10);

/// Throws ValidationError unless rho is Hermitian, unit trace, and PSD
/// within tol.
void check_density(const DensityMatrix& rho, double tol = 1e-10);

struct EigenSystem {
  RealVector values;  // ascending
  Matrix vectors;     // columns
};

/// Self-adjoint eigendecomposition. The input is hermitized first: the drift
/// kernels leave 1e-15-scale asymmetry that accumulates over long runs.
EigenSystem eigh(const Matrix& a);

/// e^{A} for Hermitian A, via eigendecomposition.
Matrix expm_hermitian(const HermitianOperator& a);

/// e^{-beta H} / tr(e^{-beta H}); the exponent is shifted by the smallest
/// eigenvalue before exponentiation so large beta cannot overflow.
DensityMatrix gibbs_state(const HermitianOperator& h, double beta);

/// log tr(e^{-beta H}) via log-sum-exp over the spectrum.
double log_partition(const HermitianOperator& h, double beta);

/// Trace norm of a - b (the full ||.||_1, not halved): 0 for equal states,
/// 2 for orthogonal pure states.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Largest singular value; for Hermitian input this is max |eigenvalue|.
double operator_norm(const Matrix& a);

struct ModularSpectrum {
  HermitianOperator op;         ///< -log(rho) on the retained eigenspace
  std::vector<double> levels;   ///< retained modular levels, ascending
  int excluded = 0;             ///< eigenvalues dropped below the floor
};

/// K = -log(rho). Eigenvalues of rho below `floor` are dropped and counted
/// rather than mapped to huge levels.
ModularSpectrum modular_hamiltonian(const DensityMatrix& rho, double floor = 1e-14);

}  // namespace thermaldrift
