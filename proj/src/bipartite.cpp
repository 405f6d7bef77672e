#include "dcdepol/bipartite.hpp"

namespace dcdepol {

const char* to_string(PptStatus s) { return s == PptStatus::PPT ? "PPT" : "NPT"; }

const char* to_string(DcVerdict v) {
  return v == DcVerdict::NptCertified ? "NPT_CERTIFIED" : "INCONCLUSIVE";
}

const char* to_string(PairVerdict v) {
  return v == PairVerdict::DistillablePair ? "DISTILLABLE_PAIR" : "INCONCLUSIVE";
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, const Bipartition& part) {
  if (rho.rows() != rho.cols() ||
      static_cast<Index>(rho.rows()) != dimension(part.n_qubits()))
    throw Error(ErrorCode::DimensionMismatch,
                "partial_transpose: matrix dimension does not match the bipartition's N");
  const Index mask = part.side_b_mask();
  const auto d = rho.rows();
  ComplexMatrix out(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    for (Eigen::Index r = 0; r < d; ++r) {
      const auto x = static_cast<Index>(r);
      const auto y = static_cast<Index>(c);
      const auto xt = static_cast<Eigen::Index>((x & ~mask) | (y & mask));
      const auto yt = static_cast<Eigen::Index>((y & ~mask) | (x & mask));
      out(xt, yt) = rho(r, c);
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, const Bipartition& part) {
  if (rho.n_qubits() != part.n_qubits())
    throw Error(ErrorCode::DimensionMismatch,
                "partial_transpose: state has N = " + std::to_string(rho.n_qubits()) +
                    ", bipartition has N = " + std::to_string(part.n_qubits()));
  return partial_transpose(rho.matrix(), part);
}

namespace {

double negative_mass(const RealVector& eigenvalues) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues(i) < 0.0) sum -= eigenvalues(i);
  return sum;
}

}  // namespace

double negativity(const DensityMatrix& rho, const Bipartition& part) {
  return negative_mass(hermitian_eigenvalues(partial_transpose(rho, part)));
}

PptReport ppt_report(const DensityMatrix& rho, const Bipartition& part, double tol) {
  const RealVector eig = hermitian_eigenvalues(partial_transpose(rho, part));
  PptReport report{part, eig(0), PptStatus::PPT, negative_mass(eig)};
  if (eig(0) < -tol) report.status = PptStatus::NPT;
  return report;
}

DcVerdict dc_criterion(const DcCoefficients& coeffs, Index k, double tie_tol) {
  const double two_lambda = coeffs.two_lambda(k);
  return coeffs.delta > two_lambda + tie_tol ? DcVerdict::NptCertified : DcVerdict::Inconclusive;
}

DistillabilityReport pair_distillability(const DensityMatrix& rho, int i, int j,
                                         double tie_tol) {
  const auto parts = enumerate_pair_bipartitions(rho.n_qubits(), i, j);
  const DcCoefficients coeffs = extract_coefficients(rho);
  const DensityMatrix rho_n = dc_transform(rho);

  DistillabilityReport report;
  report.pair = {i, j};
  bool all_certified = true;
  for (const auto& part : parts) {
    report.per_bipartition.push_back(ppt_report(rho_n, part, 0.5 * tie_tol));
    const DcVerdict v = dc_criterion(coeffs, part.k(), tie_tol);
    report.dc_verdicts.push_back(v);
    all_certified = all_certified && v == DcVerdict::NptCertified;
  }
  report.verdict = all_certified ? PairVerdict::DistillablePair : PairVerdict::Inconclusive;
  return report;
}

}  // namespace dcdepol
