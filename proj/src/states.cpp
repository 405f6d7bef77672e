#include "dcdepol/states.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace dcdepol {

namespace {

// Maps bit (i-2) of a label index onto the computational position of qubit i.
Index spread_label_bits(int n_qubits, Index label) {
  Index out = 0;
  for (int qubit = 2; qubit <= n_qubits; ++qubit)
    if ((label >> (qubit - 2)) & 1u) out |= qubit_mask(n_qubits, qubit);
  return out;
}

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

void check_qubit_count(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw Error(ErrorCode::WrongQubitCount,
                "qubit count must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                    std::to_string(n_qubits));
}

void validate_density_matrix(const ComplexMatrix& m, double tol, double psd_tol) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::InvalidDensityMatrix, "matrix is not square");
  const auto d = static_cast<Index>(m.rows());
  if (d < 2 || (d & (d - 1)) != 0)
    throw Error(ErrorCode::InvalidDensityMatrix,
                "dimension " + std::to_string(d) + " is not a power of two >= 2");
  if (!m.allFinite())
    throw Error(ErrorCode::InvalidDensityMatrix, "matrix has non-finite entries");
  const double herm = hermiticity_defect(m);
  if (herm > tol)
    throw Error(ErrorCode::InvalidDensityMatrix,
                "not Hermitian: max |ρ - ρ†| = " + format_value(herm));
  const auto tr = m.trace();
  if (std::abs(tr - 1.0) > tol)
    throw Error(ErrorCode::InvalidDensityMatrix,
                "trace is not 1: tr ρ = " + format_value(tr.real()) +
                    (tr.imag() != 0 ? " + " + format_value(tr.imag()) + "i" : ""));
  JacobiOptions opts;
  opts.hermitian_tolerance = tol;
  const auto eig = hermitian_eigenvalues(m, opts);
  if (eig(0) < -psd_tol)
    throw Error(ErrorCode::InvalidDensityMatrix,
                "not positive semidefinite: min eigenvalue " + format_value(eig(0)));
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m, double tol) {
  validate_density_matrix(m, tol);
  return assume_valid(std::move(m));
}

DensityMatrix DensityMatrix::assume_valid(ComplexMatrix m) {
  const auto d = static_cast<Index>(m.rows());
  int n = 0;
  while ((Index{1} << n) < d) ++n;
  if (m.rows() != m.cols() || (Index{1} << n) != d || n < 1)
    throw Error(ErrorCode::DimensionMismatch, "density matrix must be 2^N x 2^N");
  check_qubit_count(n);
  return DensityMatrix(n, std::move(m));
}

DensityMatrix DensityMatrix::from_pure(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw Error(ErrorCode::InvalidArgument, "zero state vector");
  const ComplexVector unit = psi / norm;
  return assume_valid(unit * unit.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  check_qubit_count(n_qubits);
  const auto d = static_cast<Eigen::Index>(dimension(n_qubits));
  return DensityMatrix(n_qubits, ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

Index bit_flip(int n_qubits, Index j) { return ghz_j_count(n_qubits) - 1 - j; }

Index branch_index(int n_qubits, int first_bit, Index j) {
  return (first_bit ? qubit_mask(n_qubits, 1) : 0) | spread_label_bits(n_qubits, j);
}

GhzLabel ghz_label_at(int n_qubits, Index position) {
  const Index half = ghz_j_count(n_qubits);
  if (position >= 2 * half)
    throw Error(ErrorCode::LabelOutOfRange, "GHZ table position out of range");
  return position < half ? GhzLabel{position, Sign::Plus} : GhzLabel{position - half, Sign::Minus};
}

ComplexVector ghz_state(int n_qubits, const GhzLabel& label) {
  check_qubit_count(n_qubits);
  if (label.j >= ghz_j_count(n_qubits))
    throw Error(ErrorCode::LabelOutOfRange,
                "GHZ label j = " + std::to_string(label.j) + " out of range for N = " +
                    std::to_string(n_qubits));
  const double amp = 1.0 / std::sqrt(2.0);
  ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(dimension(n_qubits)));
  psi(static_cast<Eigen::Index>(branch_index(n_qubits, 0, label.j))) = amp;
  psi(static_cast<Eigen::Index>(branch_index(n_qubits, 1, bit_flip(n_qubits, label.j)))) =
      label.sign == Sign::Plus ? amp : -amp;
  return psi;
}

ComplexMatrix ghz_basis(int n_qubits) {
  check_qubit_count(n_qubits);
  const auto d = static_cast<Eigen::Index>(dimension(n_qubits));
  ComplexMatrix basis(d, d);
  for (Eigen::Index p = 0; p < d; ++p)
    basis.col(p) = ghz_state(n_qubits, ghz_label_at(n_qubits, static_cast<Index>(p)));
  return basis;
}

double GhzTable::max_off_diagonal() const {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < elements_.cols(); ++c)
    for (Eigen::Index r = 0; r < elements_.rows(); ++r)
      if (r != c) worst = std::max(worst, std::abs(elements_(r, c)));
  return worst;
}

GhzTable ghz_matrix_elements(const DensityMatrix& rho) {
  const ComplexMatrix basis = ghz_basis(rho.n_qubits());
  return GhzTable(rho.n_qubits(), basis.adjoint() * rho.matrix() * basis);
}

Bipartition::Bipartition(int n_qubits, Index k) : n_qubits_(n_qubits), k_(k), mask_(0) {
  if (n_qubits < 2 || n_qubits > kMaxQubits)
    throw Error(ErrorCode::WrongQubitCount, "bipartitions need 2 <= N <= " +
                                                std::to_string(kMaxQubits));
  if (k < 1 || k > bipartition_count(n_qubits))
    throw Error(ErrorCode::IndexOutOfRange,
                "bipartition k = " + std::to_string(k) + " outside [1, " +
                    std::to_string(bipartition_count(n_qubits)) + "]");
  mask_ = spread_label_bits(n_qubits, k);
}

bool Bipartition::on_side_b(int qubit) const {
  return qubit >= 2 && qubit <= n_qubits_ && ((k_ >> (qubit - 2)) & 1u);
}

std::vector<int> Bipartition::side_b_qubits() const {
  std::vector<int> out;
  for (int q = 2; q <= n_qubits_; ++q)
    if (on_side_b(q)) out.push_back(q);
  return out;
}

std::vector<Bipartition> all_bipartitions(int n_qubits) {
  std::vector<Bipartition> out;
  for (Index k = 1; k <= bipartition_count(n_qubits); ++k) out.emplace_back(n_qubits, k);
  return out;
}

std::vector<Bipartition> enumerate_pair_bipartitions(int n_qubits, int i, int j) {
  if (n_qubits < 2 || n_qubits > kMaxQubits)
    throw Error(ErrorCode::WrongQubitCount, "pair bipartitions need N >= 2");
  if (!(1 <= i && i < j && j <= n_qubits))
    throw Error(ErrorCode::IndexOutOfRange, "qubit pair (" + std::to_string(i) + ", " +
                                                std::to_string(j) + ") invalid for N = " +
                                                std::to_string(n_qubits));
  std::vector<Bipartition> out;
  for (auto& part : all_bipartitions(n_qubits))
    if (part.on_side_b(i) != part.on_side_b(j)) out.push_back(part);
  return out;
}

void validate_bell_diagonal_spec(const BellDiagonalSpec& spec, double tol) {
  if (spec.n_qubits < 1 || spec.n_qubits > kMaxQubits)
    throw Error(ErrorCode::InvalidWeights, "Bell-diagonal spec has invalid qubit count");
  if (spec.weights.size() != ghz_j_count(spec.n_qubits))
    throw Error(ErrorCode::InvalidWeights,
                "expected " + std::to_string(ghz_j_count(spec.n_qubits)) + " weight pairs, got " +
                    std::to_string(spec.weights.size()));
  double total = 0.0;
  for (const auto& [plus, minus] : spec.weights) {
    if (!(plus >= 0.0) || !(minus >= 0.0))
      throw Error(ErrorCode::InvalidWeights, "Bell-diagonal weights must be non-negative");
    total += plus + minus;
  }
  if (std::abs(total - 1.0) > tol)
    throw Error(ErrorCode::InvalidWeights,
                "Bell-diagonal weights sum to " + format_value(total) + ", not 1");
}

DensityMatrix bell_diagonal_state(const BellDiagonalSpec& spec) {
  validate_bell_diagonal_spec(spec);
  const int n = spec.n_qubits;
  const auto d = static_cast<Eigen::Index>(dimension(n));
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (Index j = 0; j < spec.weights.size(); ++j) {
    const auto plus = ghz_state(n, {j, Sign::Plus});
    const auto minus = ghz_state(n, {j, Sign::Minus});
    m += spec.weights[j].first * plus * plus.adjoint();
    m += spec.weights[j].second * minus * minus.adjoint();
  }
  return DensityMatrix::assume_valid(std::move(m));
}

DensityMatrix random_density_matrix(int n_qubits, int rank, std::uint64_t seed) {
  check_qubit_count(n_qubits);
  const auto d = static_cast<Eigen::Index>(dimension(n_qubits));
  if (rank < 1 || rank > d)
    throw Error(ErrorCode::RankOutOfRange, "rank " + std::to_string(rank) + " outside [1, " +
                                               std::to_string(d) + "]");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);

  std::vector<double> weights(static_cast<std::size_t>(rank));
  for (auto& w : weights) w = expo(rng);
  double total = 0.0;
  for (double w : weights) total += w;

  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (int r = 0; r < rank; ++r) {
    ComplexVector psi(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      psi(i) = {re, im};
    }
    psi.normalize();
    m += (weights[static_cast<std::size_t>(r)] / total) * psi * psi.adjoint();
  }
  // Exact Hermiticity regardless of summation rounding.
  m = (0.5 * (m + m.adjoint())).eval();
  return DensityMatrix::assume_valid(std::move(m));
}

DensityMatrix conjugate(const DensityMatrix& rho, const ComplexMatrix& unitary) {
  if (unitary.rows() != rho.dim() || unitary.cols() != rho.dim())
    throw Error(ErrorCode::DimensionMismatch, "unitary does not match state dimension");
  ComplexMatrix out = unitary * rho.matrix() * unitary.adjoint();
  out = (0.5 * (out + out.adjoint())).eval();
  return DensityMatrix::assume_valid(std::move(out));
}

}  // namespace dcdepol
