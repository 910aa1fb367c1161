#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thermaldrift/types.hpp"

namespace thermaldrift {

/// Largest qubit count for which dense 2^n x 2^n materialization is allowed.
inline constexpr int kDenseQubitLimit = 12;

/// An n-qubit Pauli word in symplectic (x, z) bit-mask form: per site, the
/// x bit flags an X factor and the z bit a Z factor, Y being both with an
/// explicit factor i per Y site. Site 0 is the leftmost letter of the string
/// form and the most significant bit of a computational basis index, so the
/// dense form is the Kronecker product of the single-site matrices in site
/// order. Immutable after construction and safe to share across threads.
class PauliWord {
 public:
  PauliWord(int qubits, uint64_t x_mask, uint64_t z_mask);

  static PauliWord identity(int qubits);

  /// Parses a string over {I, X, Y, Z}, e.g. "IXZY" (site 0 leftmost).
  static PauliWord parse(std::string_view letters);

  int qubits() const { return qubits_; }
  uint64_t x_mask() const { return x_mask_; }
  uint64_t z_mask() const { return z_mask_; }
  std::size_t dim() const { return std::size_t{1} << qubits_; }
  bool is_identity() const { return (x_mask_ | z_mask_) == 0; }
  int support_size() const;

  char letter(int site) const;
  std::string str() const;

  bool operator==(const PauliWord&) const = default;

  /// out = sigma * in via the signed bit-mask permutation, O(2^n). The two
  /// spans must not alias.
  void apply(std::span<const Complex> in, std::span<Complex> out) const;
  Vector apply(const Vector& in) const;

  /// out = sigma * in, column by column. in and out must be distinct.
  void apply_left(const Matrix& in, Matrix& out) const;

  /// tr(sigma * a) off the sparsity pattern, O(2^n).
  Complex trace_product(const Matrix& a) const;

  /// Dense Kronecker materialization; requires qubits() <= kDenseQubitLimit.
  Matrix matrix() const;

 private:
  int qubits_;
  uint64_t x_mask_;
  uint64_t z_mask_;
};

/// e^{s sigma / 2} = cosh(s/2) I + sinh(s/2) sigma, dense closed form.
Matrix pauli_exponential(const PauliWord& word, double s);

/// Word restricted to its non-identity sites, together with the site
/// permutation that moves the support to the front: perm[i] is the original
/// site sitting at position i after the move.
struct SupportSplit {
  PauliWord on_support;
  std::vector<int> perm;
};

/// Rejects the all-identity word: a pure-identity generator only drifts the
/// global normalization and is excluded from ensembles.
SupportSplit strip_identity(const PauliWord& word);

/// Basis-index action of the site permutation P defined by
/// P|b_0 b_1 ... b_{n-1}> = |b_{perm[0]} b_{perm[1]} ... b_{perm[n-1]}>.
std::size_t permute_index(std::size_t index, std::span<const int> perm);

/// P v and P a P^dagger for the permutation above.
Vector permute_sites(const Vector& v, std::span<const int> perm);
Matrix permute_sites(const Matrix& a, std::span<const int> perm);

std::vector<int> inverse_permutation(std::span<const int> perm);

}  // namespace thermaldrift
