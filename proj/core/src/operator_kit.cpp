#include "thermaldrift/operator_kit.hpp"

#include <algorithm>
#include <cmath>

namespace thermaldrift {

DensityMatrix maximally_mixed(int qubits) {
  const Eigen::Index d = Eigen::Index{1} << qubits;
  return {qubits, Matrix::Identity(d, d) / static_cast<double>(d)};
}

DensityMatrix pure_state(const Vector& amplitudes) {
  int qubits = 0;
  while ((Eigen::Index{1} << qubits) < amplitudes.size()) ++qubits;
  if ((Eigen::Index{1} << qubits) != amplitudes.size())
    throw ValidationError("pure_state: amplitude length must be a power of two");
  const Vector normalized = amplitudes / amplitudes.norm();
  return {qubits, normalized * normalized.adjoint()};
}

Matrix hermitized(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

void check_density(const DensityMatrix& rho, double tol) {
  const Eigen::Index d = Eigen::Index{1} << rho.qubits;
  if (rho.data.rows() != d || rho.data.cols() != d)
    throw ValidationError("density matrix: dimension does not match qubit count");
  if (!is_hermitian(rho.data, tol))
    throw ValidationError("density matrix: not Hermitian within tolerance");
  if (std::abs(rho.data.trace().real() - 1.0) > tol ||
      std::abs(rho.data.trace().imag()) > tol)
    throw ValidationError("density matrix: trace differs from one");
  const EigenSystem es = eigh(rho.data);
  if (es.values.minCoeff() < -tol)
    throw ValidationError("density matrix: negative eigenvalue beyond tolerance");
}

EigenSystem eigh(const Matrix& a) {
  if (a.rows() != a.cols())
    throw ValidationError("eigh: matrix must be square");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitized(a));
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigh: eigendecomposition failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix expm_hermitian(const HermitianOperator& a) {
  if (!is_hermitian(a.data))
    throw ValidationError("expm_hermitian: input is not Hermitian");
  const EigenSystem es = eigh(a.data);
  return es.vectors * es.values.array().exp().matrix().asDiagonal() *
         es.vectors.adjoint();
}

DensityMatrix gibbs_state(const HermitianOperator& h, double beta) {
  if (beta < 0) throw ValidationError("gibbs_state: beta must be nonnegative");
  const EigenSystem es = eigh(h.data);
  const double ground = es.values.minCoeff();
  RealVector weights =
      (-beta * (es.values.array() - ground)).exp().matrix();
  weights /= weights.sum();
  return {h.qubits,
          es.vectors * weights.asDiagonal() * es.vectors.adjoint()};
}

double log_partition(const HermitianOperator& h, double beta) {
  const EigenSystem es = eigh(h.data);
  const RealVector exponents = -beta * es.values;
  const double top = exponents.maxCoeff();
  return top + std::log((exponents.array() - top).exp().sum());
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.data.rows() != b.data.rows())
    throw ValidationError("trace_distance: dimension mismatch");
  const EigenSystem es = eigh(a.data - b.data);
  return es.values.cwiseAbs().sum();
}

double operator_norm(const Matrix& a) {
  if (is_hermitian(a))
    return eigh(a).values.cwiseAbs().maxCoeff();
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

ModularSpectrum modular_hamiltonian(const DensityMatrix& rho, double floor) {
  const EigenSystem es = eigh(rho.data);
  ModularSpectrum out;
  out.op.qubits = rho.qubits;
  out.op.data = Matrix::Zero(rho.data.rows(), rho.data.cols());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const double p = es.values[i];
    if (p < floor) {
      ++out.excluded;
      continue;
    }
    const double level = -std::log(p);
    out.levels.push_back(level);
    out.op.data += level * es.vectors.col(i) * es.vectors.col(i).adjoint();
  }
  if (out.levels.empty())
    throw ValidationError("modular_hamiltonian: every eigenvalue is below the floor");
  std::sort(out.levels.begin(), out.levels.end());
  return out;
}

}  // namespace thermaldrift
