#pragma once

#include <cstdint>
#include <vector>

#include "dcdepol/states.hpp"

namespace dcdepol {

/// Coefficients of the GHZ-diagonal depolarized form
///   λ0+ |Ψ0+><Ψ0+| + λ0- |Ψ0-><Ψ0-| + Σ_{j>=1} λ_j (|Ψj+><Ψj+| + |Ψj-><Ψj-|).
struct DcCoefficients {
  int n_qubits = 0;
  double lambda0_plus = 0.0;
  double lambda0_minus = 0.0;
  /// λ_j for j = 1 .. 2^(N-1)-1; lambdas[0] holds λ_1.
  std::vector<double> lambdas;
  double delta = 0.0;

  double lambda(Index j) const;
  double two_lambda(Index j) const { return 2.0 * lambda(j); }
};

/// ½ρ + ½ W1 ρ W1† with W1 = σx ⊗ ... ⊗ σx.
DensityMatrix apply_l1(const DensityMatrix& rho);

/// ½ρ + ½ Wl ρ Wl† with Wl = σz on qubit 1 and on qubit l (2 <= l <= N).
DensityMatrix apply_ll(const DensityMatrix& rho, int l);

/// Random local phase shift averaged under the constraint Σφ_i = 2π.
/// The average keeps |x><y| only when x = y or {x, y} = {0...0, 1...1}.
DensityMatrix apply_lr(const DensityMatrix& rho);

/// L_r ∘ L_N ∘ ... ∘ L_2 ∘ L_1.
DensityMatrix dc_transform(const DensityMatrix& rho);

/// λ0± = <Ψ0±|ρ|Ψ0±>, 2λ_j = <Ψj+|ρ|Ψj+> + <Ψj-|ρ|Ψj->.
DcCoefficients extract_coefficients(const DensityMatrix& rho);

/// Builds the GHZ-diagonal state described by `coeffs`.
DensityMatrix dc_state(const DcCoefficients& coeffs);

/// Reads the coefficients from the GHZ diagonal of a state already in
/// depolarized form.
DcCoefficients coefficients_from_diagonal(const DensityMatrix& rho_n);

struct TrajectoryConfig {
  std::uint64_t samples = 1;
  std::uint64_t seed = 0;
};

/// Monte Carlo realization of dc_transform. Each trajectory applies W1 and
/// each Wl with probability ½, then R_φ with φ_1..φ_{N-1} uniform on
/// [0, 2π) and φ_N = 2π - Σ others. Trajectory t draws from its own stream
/// seeded by (seed, t); the mean is accumulated in trajectory order.
DensityMatrix sample_trajectories(const DensityMatrix& rho, const TrajectoryConfig& config);

/// Estimates after each of `counts` (ascending) trajectories of one run, so
/// the estimate for M uses exactly the first M trajectories.
std::vector<DensityMatrix> sample_trajectory_prefixes(const DensityMatrix& rho,
                                                      const std::vector<std::uint64_t>& counts,
                                                      std::uint64_t seed);

}  // namespace dcdepol
