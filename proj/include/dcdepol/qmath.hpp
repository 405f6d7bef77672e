#pragma once

// Dense complex linear algebra used by the rest of the library. Everything
// here is templated on the real scalar type; the library itself instantiates
// with double through the aliases at the bottom.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "dcdepol/error.hpp"

namespace dcdepol {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

inline constexpr double kDefaultTolerance = 1e-10;

template <typename Real>
struct EigenDecomposition {
  RVector<Real> eigenvalues;   // ascending
  CMatrix<Real> eigenvectors;  // column i pairs with eigenvalues(i)
};

struct JacobiOptions {
  double hermitian_tolerance = kDefaultTolerance;
  double off_diagonal_threshold = 1e-14;
  int max_sweeps = 100;
};

/// Kronecker product, a ⊗ b.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

template <typename Derived>
auto dagger(const Eigen::MatrixBase<Derived>& a) {
  return a.adjoint().eval();
}

template <typename Derived>
typename Derived::Scalar trace(const Eigen::MatrixBase<Derived>& a) {
  return a.trace();
}

/// Max-norm of the elementwise difference.
template <typename DerivedA, typename DerivedB>
double max_abs_diff(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "max_abs_diff: shape mismatch");
  if (a.size() == 0) return 0.0;
  return static_cast<double>((a - b).cwiseAbs().maxCoeff());
}

template <typename DerivedA, typename DerivedB>
bool approx_equal(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                  double tol = kDefaultTolerance) {
  return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= tol;
}

template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return max_abs_diff(a, a.adjoint());
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a, double tol = kDefaultTolerance) {
  return hermiticity_defect(a) <= tol;
}

namespace detail {

// Rotate each eigenvector so its first non-negligible component is real and
// positive.
template <typename Real>
void fix_phases(CMatrix<Real>& vectors) {
  using std::abs;
  const Real cutoff = Real(1e-12);
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const auto z = vectors(r, c);
      if (abs(z) > cutoff) {
        vectors.col(c) *= std::conj(z) / abs(z);
        vectors(r, c) = std::complex<Real>(abs(z), Real(0));
        break;
      }
    }
  }
}

template <typename Real>
Real off_diagonal_norm(const CMatrix<Real>& a) {
  Real sum = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

}  // namespace detail

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Each (p, q) rotation first removes the phase of a(p, q) with a diagonal
/// unitary and then applies the classical real Jacobi rotation, so a(p, q)
/// is annihilated exactly. Sweeps stop once the off-diagonal Frobenius mass
/// falls below `off_diagonal_threshold` (relative to max(1, ‖a‖_F)).
/// Eigenvalues come back ascending; the eigenvector phase is fixed so the
/// first non-negligible component is real positive.
template <typename Derived>
EigenDecomposition<typename Eigen::NumTraits<typename Derived::Scalar>::Real> hermitian_eigen(
    const Eigen::MatrixBase<Derived>& input, const JacobiOptions& opts = {}) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  using Complex = std::complex<Real>;

  if (input.rows() != input.cols() || input.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, "hermitian_eigen: matrix must be square");
  const double defect = hermiticity_defect(input);
  if (!(defect <= opts.hermitian_tolerance))
    throw Error(ErrorCode::NotHermitian,
                "hermitian_eigen: ‖A − A†‖_max = " + std::to_string(defect));

  const Eigen::Index n = input.rows();
  CMatrix<Real> a = input.template cast<Complex>();
  // Symmetrize so the solver sees an exactly Hermitian matrix.
  a = (a + a.adjoint().eval()) * Real(0.5);
  CMatrix<Real> v = CMatrix<Real>::Identity(n, n);

  const Real scale = std::max<Real>(Real(1), a.norm());
  const Real threshold = Real(opts.off_diagonal_threshold) * scale;

  bool converged = detail::off_diagonal_norm(a) < threshold;
  for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const Real r = std::abs(apq);
        if (r == Real(0)) continue;
        const Real app = a(p, p).real();
        const Real aqq = a(q, q).real();

        const Complex phase = apq / r;  // e^{iθ}
        const Real tau = (aqq - app) / (Real(2) * r);
        const Real t = (tau >= 0 ? Real(1) : Real(-1)) / (std::abs(tau) + std::sqrt(Real(1) + tau * tau));
        const Real c = Real(1) / std::sqrt(Real(1) + t * t);
        const Real s = t * c;

        // G = D · P with D = diag(1, e^{-iθ}) on (p, q) and P the real
        // rotation [[c, s], [-s, c]]. Columns: A ← A G, then rows: A ← G† A.
        const Complex g_pp = c;
        const Complex g_pq = s;
        const Complex g_qp = -s * std::conj(phase);
        const Complex g_qq = c * std::conj(phase);

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * g_pp + akq * g_qp;
          a(k, q) = akp * g_pq + akq * g_qq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
          a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
        }
        a(p, q) = Complex(0);
        a(q, p) = Complex(0);
        a(p, p) = Complex(a(p, p).real(), 0);
        a(q, q) = Complex(a(q, q).real(), 0);

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * g_pp + vkq * g_qp;
          v(k, q) = vkp * g_pq + vkq * g_qq;
        }
      }
    }
    converged = detail::off_diagonal_norm(a) < threshold;
  }
  if (!converged)
    throw Error(ErrorCode::NoConvergence, "hermitian_eigen: sweep budget exhausted");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return a(x, x).real() < a(y, y).real();
  });

  EigenDecomposition<Real> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto src = order[static_cast<std::size_t>(i)];
    out.eigenvalues(i) = a(src, src).real();
    out.eigenvectors.col(i) = v.col(src);
  }
  detail::fix_phases(out.eigenvectors);
  return out;
}

template <typename Derived>
auto hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& a, const JacobiOptions& opts = {}) {
  return hermitian_eigen(a, opts).eigenvalues;
}

using ComplexMatrix = CMatrix<double>;
using ComplexVector = CVector<double>;
using RealVector = RVector<double>;

/// Pauli matrices and the 2×2 identity.
template <typename Real = double>
CMatrix<Real> pauli_x() {
  CMatrix<Real> m = CMatrix<Real>::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1;
  return m;
}

template <typename Real = double>
CMatrix<Real> pauli_y() {
  CMatrix<Real> m = CMatrix<Real>::Zero(2, 2);
  m(0, 1) = std::complex<Real>(0, -1);
  m(1, 0) = std::complex<Real>(0, 1);
  return m;
}

template <typename Real = double>
CMatrix<Real> pauli_z() {
  CMatrix<Real> m = CMatrix<Real>::Zero(2, 2);
  m(0, 0) = 1;
  m(1, 1) = -1;
  return m;
}

template <typename Real = double>
CMatrix<Real> identity(Eigen::Index n) {
  return CMatrix<Real>::Identity(n, n);
}

}  // namespace dcdepol
