#pragma once

#include <utility>
#include <vector>

#include "dcdepol/dc_channel.hpp"

namespace dcdepol {

enum class PptStatus { PPT, NPT };
enum class DcVerdict { NptCertified, Inconclusive };
enum class PairVerdict { DistillablePair, Inconclusive };

const char* to_string(PptStatus s);
const char* to_string(DcVerdict v);
const char* to_string(PairVerdict v);

/// Tie band of the DC criterion: Δ must exceed 2λ_k by more than this.
inline constexpr double kDcTieTolerance = 1e-9;

struct PptReport {
  Bipartition bipartition;
  double min_eigenvalue = 0.0;
  PptStatus status = PptStatus::PPT;
  double negativity = 0.0;
};

struct DistillabilityReport {
  std::pair<int, int> pair;
  std::vector<PptReport> per_bipartition;
  std::vector<DcVerdict> dc_verdicts;  // one per entry of per_bipartition
  PairVerdict verdict = PairVerdict::Inconclusive;
};

/// Transposes the side-B qubit indices of ρ.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, const Bipartition& part);
ComplexMatrix partial_transpose(const DensityMatrix& rho, const Bipartition& part);

/// Sum of |negative eigenvalues| of the partial transpose.
double negativity(const DensityMatrix& rho, const Bipartition& part);

/// NPT when the smallest eigenvalue of the partial transpose is below -tol.
PptReport ppt_report(const DensityMatrix& rho, const Bipartition& part,
                     double tol = kDefaultTolerance);

/// NPT_CERTIFIED iff Δ > 2λ_k + tie_tol.
DcVerdict dc_criterion(const DcCoefficients& coeffs, Index k, double tie_tol = kDcTieTolerance);

/// DC sufficient condition for distilling a maximally entangled pair between
/// qubits i and j: every bipartition separating them must be NPT-certified
/// on the depolarized coefficients of ρ. The PPT reports describe
/// dc_transform(ρ), evaluated with tolerance tie_tol / 2 so that NPT there
/// coincides with NPT_CERTIFIED.
DistillabilityReport pair_distillability(const DensityMatrix& rho, int i, int j,
                                         double tie_tol = kDcTieTolerance);

}  // namespace dcdepol
