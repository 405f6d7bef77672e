#include "dcdepol/dc_channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace dcdepol {

namespace {

using Complex = std::complex<double>;

Index all_ones(const DensityMatrix& rho) { return static_cast<Index>(rho.dim()) - 1; }

ComplexMatrix hermitize(ComplexMatrix m) { return (0.5 * (m + m.adjoint())).eval(); }

std::mt19937_64 trajectory_stream(std::uint64_t seed, std::uint64_t trajectory) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trajectory),
                    static_cast<std::uint32_t>(trajectory >> 32)};
  return std::mt19937_64(seq);
}

// One trajectory unitary is monomial: U|x> = c(x ^ flip) |x ^ flip>.
struct MonomialUnitary {
  Index flip = 0;
  std::vector<Complex> phase;  // indexed by the image basis state
};

MonomialUnitary draw_trajectory(int n, std::uint64_t seed, std::uint64_t trajectory) {
  auto rng = trajectory_stream(seed, trajectory);
  std::bernoulli_distribution coin(0.5);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  const Index d = dimension(n);
  MonomialUnitary u;
  u.flip = coin(rng) ? d - 1 : 0;

  std::vector<int> sign_flips;
  for (int l = 2; l <= n; ++l)
    if (coin(rng)) sign_flips.push_back(l);

  std::vector<double> phi(static_cast<std::size_t>(n), 0.0);
  double partial = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    phi[static_cast<std::size_t>(i)] = angle(rng);
    partial += phi[static_cast<std::size_t>(i)];
  }
  phi[static_cast<std::size_t>(n - 1)] = std::fmod(2.0 * std::numbers::pi - partial,
                                                   2.0 * std::numbers::pi);

  u.phase.resize(d);
  for (Index x = 0; x < d; ++x) {
    double sign = 1.0;
    for (int l : sign_flips)
      if (qubit_value(x, n, 1) != qubit_value(x, n, l)) sign = -sign;
    double total = 0.0;
    for (int q = 1; q <= n; ++q)
      if (qubit_value(x, n, q) == 0) total += phi[static_cast<std::size_t>(q - 1)];
    u.phase[x] = sign * std::polar(1.0, total);
  }
  return u;
}

}  // namespace

double DcCoefficients::lambda(Index j) const {
  if (j < 1 || j > lambdas.size())
    throw Error(ErrorCode::IndexOutOfRange, "coefficient index j = " + std::to_string(j) +
                                                " outside [1, " + std::to_string(lambdas.size()) +
                                                "]");
  return lambdas[j - 1];
}

DensityMatrix apply_l1(const DensityMatrix& rho) {
  const Index f = all_ones(rho);
  const auto d = rho.dim();
  ComplexMatrix out(d, d);
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < d; ++r)
      out(r, c) = 0.5 * (rho(r, c) + rho(static_cast<Eigen::Index>(r ^ f),
                                          static_cast<Eigen::Index>(c ^ f)));
  return DensityMatrix::assume_valid(std::move(out));
}

DensityMatrix apply_ll(const DensityMatrix& rho, int l) {
  const int n = rho.n_qubits();
  if (l < 2 || l > n)
    throw Error(ErrorCode::IndexOutOfRange,
                "L_l needs 2 <= l <= N, got l = " + std::to_string(l));
  const auto d = rho.dim();
  auto parity = [&](Eigen::Index x) {
    return qubit_value(static_cast<Index>(x), n, 1) ^ qubit_value(static_cast<Index>(x), n, l);
  };
  ComplexMatrix out = rho.matrix();
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < d; ++r)
      if (parity(r) != parity(c)) out(r, c) = 0.0;
  return DensityMatrix::assume_valid(std::move(out));
}

DensityMatrix apply_lr(const DensityMatrix& rho) {
  const auto f = static_cast<Eigen::Index>(all_ones(rho));
  const auto d = rho.dim();
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Eigen::Index x = 0; x < d; ++x) out(x, x) = rho(x, x);
  out(0, f) = rho(0, f);
  out(f, 0) = rho(f, 0);
  return DensityMatrix::assume_valid(std::move(out));
}

DensityMatrix dc_transform(const DensityMatrix& rho) {
  DensityMatrix out = apply_l1(rho);
  for (int l = 2; l <= rho.n_qubits(); ++l) out = apply_ll(out, l);
  return apply_lr(out);
}

DcCoefficients extract_coefficients(const DensityMatrix& rho) {
  const int n = rho.n_qubits();
  DcCoefficients c;
  c.n_qubits = n;
  auto population = [&](const GhzLabel& label) {
    const ComplexVector psi = ghz_state(n, label);
    return psi.dot(rho.matrix() * psi).real();
  };
  c.lambda0_plus = population({0, Sign::Plus});
  c.lambda0_minus = population({0, Sign::Minus});
  for (Index j = 1; j < ghz_j_count(n); ++j)
    c.lambdas.push_back(0.5 * (population({j, Sign::Plus}) + population({j, Sign::Minus})));
  c.delta = std::abs(c.lambda0_plus - c.lambda0_minus);
  return c;
}

DensityMatrix dc_state(const DcCoefficients& coeffs) {
  const int n = coeffs.n_qubits;
  check_qubit_count(n);
  if (coeffs.lambdas.size() + 1 != ghz_j_count(n))
    throw Error(ErrorCode::DimensionMismatch, "coefficient count does not match N");
  BellDiagonalSpec spec;
  spec.n_qubits = n;
  spec.weights.emplace_back(coeffs.lambda0_plus, coeffs.lambda0_minus);
  for (double l : coeffs.lambdas) spec.weights.emplace_back(l, l);
  return bell_diagonal_state(spec);
}

DcCoefficients coefficients_from_diagonal(const DensityMatrix& rho_n) {
  const GhzTable table = ghz_matrix_elements(rho_n);
  const int n = rho_n.n_qubits();
  DcCoefficients c;
  c.n_qubits = n;
  c.lambda0_plus = table.population({0, Sign::Plus});
  c.lambda0_minus = table.population({0, Sign::Minus});
  for (Index j = 1; j < ghz_j_count(n); ++j)
    c.lambdas.push_back(0.5 * (table.population({j, Sign::Plus}) +
                               table.population({j, Sign::Minus})));
  c.delta = std::abs(c.lambda0_plus - c.lambda0_minus);
  return c;
}

std::vector<DensityMatrix> sample_trajectory_prefixes(const DensityMatrix& rho,
                                                      const std::vector<std::uint64_t>& counts,
                                                      std::uint64_t seed) {
  if (counts.empty()) return {};
  if (counts.front() < 1 || !std::is_sorted(counts.begin(), counts.end()))
    throw Error(ErrorCode::InvalidArgument, "sample counts must be ascending and >= 1");

  const int n = rho.n_qubits();
  const auto d = rho.dim();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  std::vector<DensityMatrix> out;
  out.reserve(counts.size());

  std::size_t next = 0;
  for (std::uint64_t t = 0; t < counts.back(); ++t) {
    const MonomialUnitary u = draw_trajectory(n, seed, t);
    for (Eigen::Index c = 0; c < d; ++c) {
      const auto cy = static_cast<Eigen::Index>(static_cast<Index>(c) ^ u.flip);
      const Complex pc = std::conj(u.phase[static_cast<Index>(cy)]);
      for (Eigen::Index r = 0; r < d; ++r) {
        const auto rx = static_cast<Eigen::Index>(static_cast<Index>(r) ^ u.flip);
        sum(rx, cy) += u.phase[static_cast<Index>(rx)] * pc * rho(r, c);
      }
    }
    while (next < counts.size() && counts[next] == t + 1) {
      out.push_back(DensityMatrix::assume_valid(
          hermitize(sum / static_cast<double>(counts[next]))));
      ++next;
    }
  }
  return out;
}

DensityMatrix sample_trajectories(const DensityMatrix& rho, const TrajectoryConfig& config) {
  if (config.samples < 1)
    throw Error(ErrorCode::InvalidArgument, "trajectory sample count must be >= 1");
  return sample_trajectory_prefixes(rho, {config.samples}, config.seed).front();
}

}  // namespace dcdepol
