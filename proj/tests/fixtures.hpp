#pragma once

#include <cmath>
#include <random>

#include "dcdepol/states.hpp"

namespace fixtures {

using namespace dcdepol;

inline ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

inline ComplexVector ghz(int n, Index j, Sign s) { return ghz_state(n, {j, s}); }

/// ½|Ψ0+><Ψ0+| + ¼|Ψ1+><Ψ1+| + ¼|Ψ1-><Ψ1-| + ¼(|Ψ1+><Ψ1-| + |Ψ1-><Ψ1+|).
inline DensityMatrix rho_f() {
  const auto p0 = ghz(2, 0, Sign::Plus);
  const auto p1 = ghz(2, 1, Sign::Plus);
  const auto m1 = ghz(2, 1, Sign::Minus);
  ComplexMatrix m = 0.5 * projector(p0) + 0.25 * projector(p1) + 0.25 * projector(m1) +
                    0.25 * (p1 * m1.adjoint() + m1 * p1.adjoint());
  return DensityMatrix::from_matrix(m);
}

inline DensityMatrix werner(double p) {
  ComplexMatrix m = p * projector(ghz(2, 0, Sign::Plus)) +
                    (1.0 - p) * ComplexMatrix::Identity(4, 4) / 4.0;
  return DensityMatrix::from_matrix(m);
}

inline DensityMatrix bell_diagonal(double p0, double m0, double p1, double m1) {
  return bell_diagonal_state(BellDiagonalSpec{2, {{p0, m0}, {p1, m1}}});
}

/// Uniform point on the probability simplex with `count` entries.
inline std::vector<double> simplex_point(std::mt19937_64& rng, std::size_t count) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(count);
  double total = 0;
  for (auto& x : w) total += (x = e(rng));
  for (auto& x : w) x /= total;
  return w;
}

inline BellDiagonalSpec random_bell_spec(int n, std::mt19937_64& rng) {
  const auto half = static_cast<std::size_t>(ghz_j_count(n));
  const auto w = simplex_point(rng, 2 * half);
  BellDiagonalSpec spec{n, {}};
  for (std::size_t j = 0; j < half; ++j) spec.weights.emplace_back(w[2 * j], w[2 * j + 1]);
  return spec;
}

/// Random state already in depolarized form: λ0± and λ_j (j >= 1) from a
/// uniform simplex draw over 2 + (2^(N-1) - 1) weights, λ_j split equally.
inline BellDiagonalSpec random_dc_spec(int n, std::mt19937_64& rng) {
  const auto half = static_cast<std::size_t>(ghz_j_count(n));
  const auto w = simplex_point(rng, half + 1);
  BellDiagonalSpec spec{n, {{w[0], w[1]}}};
  for (std::size_t j = 1; j < half; ++j) spec.weights.emplace_back(w[j + 1] / 2, w[j + 1] / 2);
  return spec;
}

inline ComplexMatrix random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix z(dim, dim);
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = {g(rng), g(rng)};
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  return qr.householderQ() * ComplexMatrix::Identity(dim, dim);
}

inline ComplexMatrix random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix z(dim, dim);
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = {g(rng), g(rng)};
  return 0.5 * (z + z.adjoint());
}

}  // namespace fixtures
