#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dcdepol/qmath.hpp"

namespace dcdepol {

// Computational basis convention: |b1 b2 ... bN> has index sum_i b_i 2^(N-i),
// i.e. qubit 1 is the most significant bit. Qubits are numbered from 1.

using Index = std::uint64_t;

inline constexpr int kMaxQubits = 10;
inline constexpr double kPsdTolerance = 1e-9;

inline Index dimension(int n_qubits) { return Index{1} << n_qubits; }

/// Bit of the computational index that holds `qubit` (1-based).
inline Index qubit_mask(int n_qubits, int qubit) { return Index{1} << (n_qubits - qubit); }

inline int qubit_value(Index basis_index, int n_qubits, int qubit) {
  return (basis_index & qubit_mask(n_qubits, qubit)) ? 1 : 0;
}

void check_qubit_count(int n_qubits);

/// Throws InvalidDensityMatrix naming the first violated invariant.
void validate_density_matrix(const ComplexMatrix& m, double tol = kDefaultTolerance,
                             double psd_tol = kPsdTolerance);

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positivity.
  static DensityMatrix from_matrix(ComplexMatrix m, double tol = kDefaultTolerance);
  /// Skips validation; for outputs of maps already known to preserve states.
  static DensityMatrix assume_valid(ComplexMatrix m);
  static DensityMatrix from_pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  std::complex<double> operator()(Eigen::Index r, Eigen::Index c) const { return matrix_(r, c); }

  double purity() const;

 private:
  DensityMatrix(int n_qubits, ComplexMatrix m) : n_qubits_(n_qubits), matrix_(std::move(m)) {}

  int n_qubits_;
  ComplexMatrix matrix_;
};

enum class Sign { Plus, Minus };

inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

/// Label (j, ±) of the generalized GHZ vector (|0 j> ± |1 j̄>)/√2, where
/// j = sum_{i=2}^N j_i 2^(i-2) lists the bits of qubits 2..N (qubit 2 least
/// significant).
struct GhzLabel {
  Index j = 0;
  Sign sign = Sign::Plus;

  friend bool operator==(const GhzLabel&, const GhzLabel&) = default;
};

/// Number of distinct j values, 2^(N-1).
inline Index ghz_j_count(int n_qubits) { return Index{1} << (n_qubits - 1); }

/// j̄ = 2^(N-1) - 1 - j.
Index bit_flip(int n_qubits, Index j);

/// Computational index of |b j> for b the first-qubit bit and j a GHZ label
/// index (qubits 2..N).
Index branch_index(int n_qubits, int first_bit, Index j);

/// Position of a label in GHZ tables: all '+' labels by j, then all '-'.
inline Index ghz_position(int n_qubits, const GhzLabel& label) {
  return label.j + (label.sign == Sign::Minus ? ghz_j_count(n_qubits) : 0);
}

GhzLabel ghz_label_at(int n_qubits, Index position);

ComplexVector ghz_state(int n_qubits, const GhzLabel& label);

/// Unitary whose columns are the GHZ vectors in ghz_position order.
ComplexMatrix ghz_basis(int n_qubits);

/// ⟨Ψ_j^σ|ρ|Ψ_j'^σ'⟩ for every pair of labels.
class GhzTable {
 public:
  GhzTable(int n_qubits, ComplexMatrix elements)
      : n_qubits_(n_qubits), elements_(std::move(elements)) {}

  int n_qubits() const { return n_qubits_; }
  const ComplexMatrix& elements() const { return elements_; }

  std::complex<double> operator()(const GhzLabel& row, const GhzLabel& col) const {
    return elements_(static_cast<Eigen::Index>(ghz_position(n_qubits_, row)),
                     static_cast<Eigen::Index>(ghz_position(n_qubits_, col)));
  }
  double population(const GhzLabel& label) const { return (*this)(label, label).real(); }

  /// Largest |element| off the table diagonal.
  double max_off_diagonal() const;

 private:
  int n_qubits_;
  ComplexMatrix elements_;
};

GhzTable ghz_matrix_elements(const DensityMatrix& rho);

/// Bipartition k: qubit i (i >= 2) sits on side B when bit (i-2) of k is set;
/// qubit 1 is always on side A.
class Bipartition {
 public:
  Bipartition(int n_qubits, Index k);

  int n_qubits() const { return n_qubits_; }
  Index k() const { return k_; }
  bool on_side_b(int qubit) const;
  std::vector<int> side_b_qubits() const;
  /// Computational-index mask of the side-B qubits.
  Index side_b_mask() const { return mask_; }

  friend bool operator==(const Bipartition& a, const Bipartition& b) {
    return a.n_qubits_ == b.n_qubits_ && a.k_ == b.k_;
  }

 private:
  int n_qubits_;
  Index k_;
  Index mask_;
};

inline Index bipartition_count(int n_qubits) { return ghz_j_count(n_qubits) - 1; }

std::vector<Bipartition> all_bipartitions(int n_qubits);

/// Bipartitions separating qubits i and j (1 <= i < j <= N), sorted by k.
std::vector<Bipartition> enumerate_pair_bipartitions(int n_qubits, int i, int j);

struct BellDiagonalSpec {
  int n_qubits = 2;
  /// (μ_j^+, μ_j^-) for j = 0 .. 2^(N-1)-1.
  std::vector<std::pair<double, double>> weights;
};

void validate_bell_diagonal_spec(const BellDiagonalSpec& spec, double tol = kDefaultTolerance);

DensityMatrix bell_diagonal_state(const BellDiagonalSpec& spec);

/// Mixture of `rank` random pure states (normalized complex Gaussian vectors)
/// with uniformly random simplex weights. Deterministic in `seed`.
DensityMatrix random_density_matrix(int n_qubits, int rank, std::uint64_t seed);

/// (U ⊗ ... ) ρ (U ⊗ ...)† for a full-size unitary.
DensityMatrix conjugate(const DensityMatrix& rho, const ComplexMatrix& unitary);

}  // namespace dcdepol
