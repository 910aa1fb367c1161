#include "thermaldrift/pauli.hpp"

#include <bit>
#include <cmath>

namespace thermaldrift {

namespace {

// Phase of the word on basis state |b>: i^{#Y} * (-1)^{popcount(b & z)}.
inline Complex phase_base(uint64_t x_mask, uint64_t z_mask) {
  switch (std::popcount(x_mask & z_mask) & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

inline double z_sign(uint64_t index, uint64_t z_mask) {
  return (std::popcount(index & z_mask) & 1) ? -1.0 : 1.0;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

Matrix single_site(char letter) {
  Matrix m(2, 2);
  switch (letter) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default:  m << 1, 0, 0, -1; break;  // 'Z'
  }
  return m;
}

}  // namespace

PauliWord::PauliWord(int qubits, uint64_t x_mask, uint64_t z_mask)
    : qubits_(qubits), x_mask_(x_mask), z_mask_(z_mask) {
  if (qubits < 1 || qubits > 63)
    throw ValidationError("PauliWord: qubit count must be in [1, 63], got " +
                          std::to_string(qubits));
  const uint64_t valid = (uint64_t{1} << qubits) - 1;
  if ((x_mask | z_mask) & ~valid)
    throw ValidationError("PauliWord: mask bits outside the qubit range");
}

PauliWord PauliWord::identity(int qubits) { return PauliWord(qubits, 0, 0); }

PauliWord PauliWord::parse(std::string_view letters) {
  const int n = static_cast<int>(letters.size());
  if (n < 1 || n > 63)
    throw ValidationError("PauliWord: string length must be in [1, 63]");
  uint64_t x = 0, z = 0;
  for (int site = 0; site < n; ++site) {
    const uint64_t bit = uint64_t{1} << (n - 1 - site);
    switch (letters[site]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default:
        throw ValidationError("PauliWord: invalid letter '" +
                              std::string(1, letters[site]) + "' at site " +
                              std::to_string(site));
    }
  }
  return PauliWord(n, x, z);
}

int PauliWord::support_size() const {
  return std::popcount(x_mask_ | z_mask_);
}

char PauliWord::letter(int site) const {
  const uint64_t bit = uint64_t{1} << (qubits_ - 1 - site);
  const bool x = x_mask_ & bit, z = z_mask_ & bit;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

std::string PauliWord::str() const {
  std::string s(qubits_, 'I');
  for (int site = 0; site < qubits_; ++site) s[site] = letter(site);
  return s;
}

void PauliWord::apply(std::span<const Complex> in, std::span<Complex> out) const {
  const std::size_t d = dim();
  if (in.size() != d || out.size() != d)
    throw ValidationError("PauliWord::apply: vector length must be 2^n");
  const Complex base = phase_base(x_mask_, z_mask_);
  for (std::size_t b = 0; b < d; ++b)
    out[b ^ x_mask_] = base * z_sign(b, z_mask_) * in[b];
}

Vector PauliWord::apply(const Vector& in) const {
  Vector out(in.size());
  apply({in.data(), static_cast<std::size_t>(in.size())},
        {out.data(), static_cast<std::size_t>(out.size())});
  return out;
}

void PauliWord::apply_left(const Matrix& in, Matrix& out) const {
  const std::size_t d = dim();
  if (static_cast<std::size_t>(in.rows()) != d)
    throw ValidationError("PauliWord::apply_left: dimension mismatch");
  out.resize(in.rows(), in.cols());
  const Complex base = phase_base(x_mask_, z_mask_);
  for (Eigen::Index col = 0; col < in.cols(); ++col) {
    const Complex* src = in.col(col).data();
    Complex* dst = out.col(col).data();
    for (std::size_t b = 0; b < d; ++b)
      dst[b ^ x_mask_] = base * z_sign(b, z_mask_) * src[b];
  }
}

Complex PauliWord::trace_product(const Matrix& a) const {
  const std::size_t d = dim();
  if (static_cast<std::size_t>(a.rows()) != d ||
      static_cast<std::size_t>(a.cols()) != d)
    throw ValidationError("PauliWord::trace_product: dimension mismatch");
  // tr(sigma a) = sum_c sigma(c ^ x, c) a(c, c ^ x), one entry per column.
  const Complex base = phase_base(x_mask_, z_mask_);
  Complex total = 0;
  for (std::size_t c = 0; c < d; ++c)
    total += z_sign(c, z_mask_) * a(c, c ^ x_mask_);
  return base * total;
}

Matrix PauliWord::matrix() const {
  if (qubits_ > kDenseQubitLimit)
    throw ValidationError("PauliWord::matrix: " + std::to_string(qubits_) +
                          " qubits exceeds the dense limit of " +
                          std::to_string(kDenseQubitLimit));
  Matrix out = Matrix::Identity(1, 1);
  for (int site = 0; site < qubits_; ++site)
    out = kron(out, single_site(letter(site)));
  return out;
}

Matrix pauli_exponential(const PauliWord& word, double s) {
  const Eigen::Index d = static_cast<Eigen::Index>(word.dim());
  Matrix out = std::cosh(s / 2) * Matrix::Identity(d, d);
  out += std::sinh(s / 2) * word.matrix();
  return out;
}

SupportSplit strip_identity(const PauliWord& word) {
  if (word.is_identity())
    throw ValidationError("strip_identity: all-identity word has no support");
  const int n = word.qubits();
  std::vector<int> perm;
  perm.reserve(n);
  std::string support_letters;
  for (int site = 0; site < n; ++site)
    if (word.letter(site) != 'I') {
      perm.push_back(site);
      support_letters.push_back(word.letter(site));
    }
  for (int site = 0; site < n; ++site)
    if (word.letter(site) == 'I') perm.push_back(site);
  return {PauliWord::parse(support_letters), std::move(perm)};
}

std::size_t permute_index(std::size_t index, std::span<const int> perm) {
  const int n = static_cast<int>(perm.size());
  std::size_t out = 0;
  for (int i = 0; i < n; ++i) {
    const std::size_t bit = (index >> (n - 1 - perm[i])) & 1;
    out |= bit << (n - 1 - i);
  }
  return out;
}

Vector permute_sites(const Vector& v, std::span<const int> perm) {
  Vector out(v.size());
  for (Eigen::Index b = 0; b < v.size(); ++b)
    out[static_cast<Eigen::Index>(permute_index(b, perm))] = v[b];
  return out;
}

Matrix permute_sites(const Matrix& a, std::span<const int> perm) {
  Matrix out(a.rows(), a.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    const auto pr = static_cast<Eigen::Index>(permute_index(r, perm));
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out(pr, static_cast<Eigen::Index>(permute_index(c, perm))) = a(r, c);
  }
  return out;
}

std::vector<int> inverse_permutation(std::span<const int> perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
  return inv;
}

}  // namespace thermaldrift
