#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "dcdepol/bipartite.hpp"

namespace dcdepol {

/// Rz(α) Ry(β) Rz(γ), an SU(2) element; the global phase is dropped.
Eigen::Matrix2cd euler_zyz(double alpha, double beta, double gamma);

/// U on qubit 1, V on qubit 2, each from z-y-z Euler angles (radians).
struct LocalUnitaryPair {
  std::array<double, 3> u_angles{};
  std::array<double, 3> v_angles{};
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd v = Eigen::Matrix2cd::Identity();

  static LocalUnitaryPair identity() { return {}; }
  static LocalUnitaryPair from_angles(const std::array<double, 6>& angles);

  /// U ⊗ V as a 4×4 matrix.
  ComplexMatrix tensor() const;
};

struct FefOptions {
  int starts = 32;
  std::uint64_t seed = 0;
  /// Nelder-Mead stops once the simplex spans less than this in every angle.
  double step_tolerance = 1e-9;
  int max_iterations = 20000;
};

struct FefResult {
  double value = 0.0;
  LocalUnitaryPair optimizer;
  /// (U ⊗ V) ρ (U ⊗ V)†; its <Ψ0+|·|Ψ0+> equals value.
  DensityMatrix transformed_state;
  int starts_used = 0;
  bool converged = false;
};

/// <Ψ0+| (U⊗V) ρ (U⊗V)† |Ψ0+> for the given 6 Euler angles.
double fef_objective(const DensityMatrix& rho, const std::array<double, 6>& angles);

/// Fully entangled fraction max_{U,V} <Ψ0+|(U⊗V) ρ (U⊗V)†|Ψ0+> of a
/// two-qubit state, by multi-start Nelder-Mead over the 6 Euler angles.
/// Start s draws its initial point from a stream seeded by (seed, s); the
/// best value wins, ties going to the lowest start index.
FefResult fef(const DensityMatrix& rho, const FefOptions& options = {});

/// max_{σ, j} μ_j^σ for a two-qubit Bell-diagonal spec.
double fef_bell_diagonal(const BellDiagonalSpec& spec);

/// NPT iff |μ0+ - μ0-| > μ1+ + μ1- or |μ1+ - μ1-| > μ0+ + μ0-. A margin of
/// 2·tol keeps the boundary on the PPT side, matching ppt_report(·, tol).
PptStatus bell_diagonal_npt(const BellDiagonalSpec& spec, double tol = kDefaultTolerance);

enum class Detectability { Direct, AfterLocalUnitary, DcBlindEntangled, Separable };

const char* to_string(Detectability d);

/// fef within this distance of ½ is never treated as exceeding ½.
inline constexpr double kFefBand = 1e-6;

struct DetectabilityVerdict {
  Detectability kind = Detectability::Separable;
  double fef = 0.0;
  double delta = 0.0;
  double two_lambda1 = 0.0;
  std::optional<LocalUnitaryPair> witness_frame;
  /// Coefficients of ρ̃ under the witness frame, when one is reported.
  std::optional<DcCoefficients> witness_coefficients;
  PptReport ppt;
  FefResult fef_result;
};

/// Two-qubit detectability by the DC method:
///   Δ > 2λ1                      → Direct
///   else fef > ½                 → AfterLocalUnitary (frame restores Δ̃ > 2λ̃1)
///   else NPT                     → DcBlindEntangled
///   else                         → Separable
DetectabilityVerdict classify(const DensityMatrix& rho, const FefOptions& options = {},
                              double tol = kDefaultTolerance);

/// Checks [Δ > 2λ1] ⟺ [<Ψ0+|ρ|Ψ0+> > ½ or <Ψ0-|ρ|Ψ0-> > ½] on one state.
bool verify_statement_11(const DensityMatrix& rho, double tie_tol = kDcTieTolerance);

}  // namespace dcdepol
