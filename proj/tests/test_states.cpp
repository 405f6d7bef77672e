#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dcdepol;
using fixtures::projector;

namespace {

ComplexVector basis_ket(int n, Index index) {
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dimension(n)));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

TEST_CASE("ghz_state for two qubits") {
  CHECK(approx_equal(ghz_state(2, {0, Sign::Plus}),
                     kInvSqrt2 * (basis_ket(2, 0b00) + basis_ket(2, 0b11)), 1e-15));
  CHECK(approx_equal(ghz_state(2, {1, Sign::Minus}),
                     kInvSqrt2 * (basis_ket(2, 0b01) - basis_ket(2, 0b10)), 1e-15));
}

TEST_CASE("ghz_state for three qubits reads j bit by bit from qubit 2") {
  // j = 2: j2 = 0, j3 = 1, so |0 j> = |0>|0>|1> and |1 j̄> = |1>|1>|0>.
  CHECK(approx_equal(ghz_state(3, {2, Sign::Plus}),
                     kInvSqrt2 * (basis_ket(3, 0b001) + basis_ket(3, 0b110)), 1e-15));
  // j = 1: j2 = 1, j3 = 0.
  CHECK(approx_equal(ghz_state(3, {1, Sign::Plus}),
                     kInvSqrt2 * (basis_ket(3, 0b010) + basis_ket(3, 0b101)), 1e-15));
  CHECK(bit_flip(3, 2) == 1);
}

TEST_CASE("ghz_state rejects labels out of range") {
  try {
    (void)ghz_state(2, {2, Sign::Plus});
    FAIL("expected LabelOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LabelOutOfRange);
  }
}

TEST_CASE("GHZ vectors form an orthonormal basis") {
  for (int n = 1; n <= 4; ++n) {
    const ComplexMatrix b = ghz_basis(n);
    CHECK(max_abs_diff(b.adjoint() * b, identity(b.rows())) <= 1e-14);
  }
}

TEST_CASE("ghz_matrix_elements of simple states") {
  SUBCASE("Bell projector") {
    const auto rho = DensityMatrix::from_pure(ghz_state(2, {0, Sign::Plus}));
    const GhzTable t = ghz_matrix_elements(rho);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 0) = 1.0;
    CHECK(max_abs_diff(t.elements(), expected) <= 1e-14);
  }
  SUBCASE("rho_f") {
    const GhzTable t = ghz_matrix_elements(fixtures::rho_f());
    const GhzLabel p0{0, Sign::Plus}, p1{1, Sign::Plus}, m1{1, Sign::Minus};
    CHECK(t(p0, p0).real() == doctest::Approx(0.5));
    CHECK(t(p1, p1).real() == doctest::Approx(0.25));
    CHECK(t(m1, m1).real() == doctest::Approx(0.25));
    CHECK(t(p1, m1).real() == doctest::Approx(0.25));
    CHECK(t(m1, p1).real() == doctest::Approx(0.25));
    double rest = 0.0;
    for (Index r = 0; r < 4; ++r)
      for (Index c = 0; c < 4; ++c) {
        const auto a = ghz_label_at(2, r), b = ghz_label_at(2, c);
        const bool listed = (a == p0 && b == p0) || ((a == p1 || a == m1) && (b == p1 || b == m1));
        if (!listed) rest = std::max(rest, std::abs(t(a, b)));
      }
    CHECK(rest <= 1e-15);
  }
  SUBCASE("maximally mixed") {
    for (int n = 1; n <= 3; ++n) {
      const GhzTable t = ghz_matrix_elements(DensityMatrix::maximally_mixed(n));
      const double expected = 1.0 / static_cast<double>(dimension(n));
      CHECK(t.max_off_diagonal() <= 1e-15);
      for (Eigen::Index i = 0; i < t.elements().rows(); ++i)
        CHECK(t.elements()(i, i).real() == doctest::Approx(expected));
    }
  }
}

TEST_CASE("ghz_matrix_elements reconstructs the state") {
  for (int n = 1; n <= 4; ++n) {
    const DensityMatrix rho = random_density_matrix(n, 1 + n % 3, 300 + static_cast<std::uint64_t>(n));
    const GhzTable t = ghz_matrix_elements(rho);
    ComplexMatrix rebuilt = ComplexMatrix::Zero(rho.dim(), rho.dim());
    for (Index r = 0; r < dimension(n); ++r)
      for (Index c = 0; c < dimension(n); ++c) {
        const auto a = ghz_label_at(n, r), b = ghz_label_at(n, c);
        rebuilt += t(a, b) * ghz_state(n, a) * ghz_state(n, b).adjoint();
      }
    CHECK(max_abs_diff(rebuilt, rho.matrix()) <= 1e-10);
    CHECK(is_hermitian(t.elements(), 1e-14));
  }
}

TEST_CASE("bell_diagonal_state") {
  SUBCASE("single projector") {
    const auto rho = fixtures::bell_diagonal(1, 0, 0, 0);
    CHECK(max_abs_diff(rho.matrix(), projector(ghz_state(2, {0, Sign::Plus}))) <= 1e-15);
  }
  SUBCASE("uniform weights give the maximally mixed state") {
    const auto rho = fixtures::bell_diagonal(0.25, 0.25, 0.25, 0.25);
    CHECK(max_abs_diff(rho.matrix(), identity(4) / 4.0) <= 1e-15);
  }
  SUBCASE("projection recovers the weight") {
    const auto rho = fixtures::bell_diagonal(0.6, 0.1, 0.2, 0.1);
    const ComplexVector psi = ghz_state(2, {0, Sign::Plus});
    CHECK(psi.dot(rho.matrix() * psi).real() == doctest::Approx(0.6).epsilon(1e-14));
  }
  SUBCASE("random specs validate") {
    std::mt19937_64 rng(8);
    for (int n = 1; n <= 4; ++n)
      for (int trial = 0; trial < 10; ++trial) {
        const auto rho = bell_diagonal_state(fixtures::random_bell_spec(n, rng));
        CHECK_NOTHROW(validate_density_matrix(rho.matrix()));
      }
  }
  SUBCASE("invalid weights") {
    for (const auto& spec : {BellDiagonalSpec{2, {{0.5, 0.5}, {0.1, 0.0}}},
                             BellDiagonalSpec{2, {{1.2, -0.2}, {0.0, 0.0}}},
                             BellDiagonalSpec{2, {{1.0, 0.0}}}}) {
      try {
        (void)bell_diagonal_state(spec);
        FAIL("expected InvalidWeights");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidWeights);
      }
    }
  }
}

TEST_CASE("enumerate_pair_bipartitions") {
  auto ks = [](const std::vector<Bipartition>& parts) {
    std::vector<Index> out;
    for (const auto& p : parts) out.push_back(p.k());
    return out;
  };
  CHECK(ks(enumerate_pair_bipartitions(2, 1, 2)) == std::vector<Index>{1});
  CHECK(ks(enumerate_pair_bipartitions(3, 1, 2)) == std::vector<Index>{1, 3});
  CHECK(ks(enumerate_pair_bipartitions(3, 2, 3)) == std::vector<Index>{1, 2});
  CHECK(ks(enumerate_pair_bipartitions(3, 1, 3)) == std::vector<Index>{2, 3});

  for (int n = 2; n <= 5; ++n)
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        // brute force over all k and bit patterns
        Index expected = 0;
        for (Index k = 1; k <= bipartition_count(n); ++k) {
          const int ki = i == 1 ? 0 : static_cast<int>((k >> (i - 2)) & 1u);
          const int kj = static_cast<int>((k >> (j - 2)) & 1u);
          if (ki != kj) ++expected;
        }
        const auto parts = enumerate_pair_bipartitions(n, i, j);
        CHECK(parts.size() == expected);
        CHECK(parts.size() == (Index{1} << (n - 2)));
      }

  for (auto [n, i, j] : {std::tuple{2, 2, 1}, std::tuple{3, 0, 2}, std::tuple{3, 2, 4}, std::tuple{3, 2, 2}}) {
    try {
      (void)enumerate_pair_bipartitions(n, i, j);
      FAIL("expected IndexOutOfRange");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::IndexOutOfRange);
    }
  }
}

TEST_CASE("Bipartition keeps qubit 1 on side A") {
  for (int n = 2; n <= 5; ++n)
    for (const auto& part : all_bipartitions(n)) {
      CHECK_FALSE(part.on_side_b(1));
      CHECK_FALSE(part.side_b_qubits().empty());
      Index k = 0;
      for (int q : part.side_b_qubits()) k += Index{1} << (q - 2);
      CHECK(k == part.k());
    }
  CHECK_THROWS_AS(Bipartition(3, 0), Error);
  CHECK_THROWS_AS(Bipartition(3, 4), Error);
}

TEST_CASE("random_density_matrix") {
  SUBCASE("rank one is pure") {
    for (int n = 1; n <= 4; ++n)
      CHECK(random_density_matrix(n, 1, 17).purity() == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("same seed gives the same matrix") {
    CHECK(random_density_matrix(3, 4, 123).matrix() == random_density_matrix(3, 4, 123).matrix());
    CHECK(random_density_matrix(3, 4, 123).matrix() != random_density_matrix(3, 4, 124).matrix());
  }
  SUBCASE("full rank") {
    const auto rho = random_density_matrix(2, 4, 7);
    CHECK(hermitian_eigenvalues(rho.matrix())(0) > 0.0);
  }
  SUBCASE("outputs validate") {
    for (std::uint64_t seed = 0; seed < 20; ++seed)
      CHECK_NOTHROW(validate_density_matrix(random_density_matrix(3, 1 + seed % 8, seed).matrix()));
  }
  SUBCASE("rank out of range") {
    for (int rank : {0, 5}) {
      try {
        (void)random_density_matrix(2, rank, 1);
        FAIL("expected RankOutOfRange");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RankOutOfRange);
      }
    }
  }
}

TEST_CASE("DensityMatrix validation names the violated invariant") {
  auto message = [](const ComplexMatrix& m) {
    try {
      (void)DensityMatrix::from_matrix(m);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidDensityMatrix);
      return std::string(e.what());
    }
    return std::string();
  };
  ComplexMatrix m = identity(4) / 4.0;
  m(0, 1) = 0.1;
  CHECK(message(m).find("Hermitian") != std::string::npos);
  CHECK(message(identity(4) / 2.0).find("trace") != std::string::npos);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK(message(neg).find("positive") != std::string::npos);
  CHECK(message(identity(3) / 3.0).find("power of two") != std::string::npos);
}
