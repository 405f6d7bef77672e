#include "dcdepol/fef.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace dcdepol {

namespace {

using Angles = std::array<double, 6>;
using Complex = std::complex<double>;

void require_two_qubits(const DensityMatrix& rho, const char* what) {
  if (rho.n_qubits() != 2)
    throw Error(ErrorCode::WrongQubitCount, std::string(what) + " needs a 2-qubit state, got N = " +
                                                std::to_string(rho.n_qubits()));
}

void require_two_qubits(const BellDiagonalSpec& spec, const char* what) {
  if (spec.n_qubits != 2)
    throw Error(ErrorCode::WrongQubitCount, std::string(what) + " needs a 2-qubit spec");
}

Eigen::Vector4cd phi_plus() {
  const double a = 1.0 / std::sqrt(2.0);
  return Eigen::Vector4cd(a, 0, 0, a);
}

Eigen::Matrix4cd tensor4(const Eigen::Matrix2cd& u, const Eigen::Matrix2cd& v) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = u(i, j) * v;
  return out;
}

double objective(const Eigen::Matrix4cd& rho, const Angles& x) {
  const Eigen::Matrix2cd u = euler_zyz(x[0], x[1], x[2]);
  const Eigen::Matrix2cd v = euler_zyz(x[3], x[4], x[5]);
  const Eigen::Vector4cd psi = tensor4(u, v).adjoint() * phi_plus();
  return psi.dot(rho * psi).real();
}

struct LocalMax {
  Angles point{};
  double value = 0.0;
  bool converged = false;
};

// Nelder-Mead maximization on R^6 (the objective is 2π-periodic in every
// angle, so no wrapping is needed).
LocalMax nelder_mead(const Eigen::Matrix4cd& rho, const Angles& start, double initial_step,
                     const FefOptions& opts) {
  constexpr int n = 6;
  std::array<Angles, n + 1> simplex{};
  std::array<double, n + 1> value{};
  simplex[0] = start;
  for (int i = 0; i < n; ++i) {
    simplex[i + 1] = start;
    simplex[i + 1][static_cast<std::size_t>(i)] += initial_step;
  }
  // Work with the negated objective so "best" is smallest.
  auto f = [&](const Angles& x) { return -objective(rho, x); };
  for (int i = 0; i <= n; ++i) value[i] = f(simplex[i]);

  std::array<int, n + 1> order{};
  bool converged = false;
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return value[a] < value[b]; });
    const int best = order[0];
    const int worst = order[n];
    const int second_worst = order[n - 1];

    double diameter = 0.0;
    for (int i = 0; i <= n; ++i)
      for (int k = 0; k < n; ++k)
        diameter = std::max(diameter, std::abs(simplex[i][k] - simplex[best][k]));
    if (diameter < opts.step_tolerance || value[worst] - value[best] <= 1e-16) {
      converged = true;
      break;
    }

    Angles centroid{};
    for (int i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (int k = 0; k < n; ++k) centroid[k] += simplex[i][k] / n;
    }
    auto along = [&](double t) {
      Angles x{};
      for (int k = 0; k < n; ++k) x[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
      return x;
    };

    const Angles reflected = along(-1.0);
    const double f_reflected = f(reflected);
    if (f_reflected < value[best]) {
      const Angles expanded = along(-2.0);
      const double f_expanded = f(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        value[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        value[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < value[second_worst]) {
      simplex[worst] = reflected;
      value[worst] = f_reflected;
      continue;
    }
    const bool outside = f_reflected < value[worst];
    const Angles contracted = along(outside ? -0.5 : 0.5);
    const double f_contracted = f(contracted);
    if (f_contracted < (outside ? f_reflected : value[worst])) {
      simplex[worst] = contracted;
      value[worst] = f_contracted;
      continue;
    }
    for (int i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (int k = 0; k < n; ++k) simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
      value[i] = f(simplex[i]);
    }
  }

  const auto best_it = std::min_element(value.begin(), value.end());
  const auto best = static_cast<std::size_t>(best_it - value.begin());
  return {simplex[best], -value[best], converged};
}

Angles draw_start(std::uint64_t seed, int start) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(start)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  Angles x{};
  for (auto& a : x) a = angle(rng);
  return x;
}

double wrap_angle(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  return a < 0 ? a + two_pi : a;
}

}  // namespace

Eigen::Matrix2cd euler_zyz(double alpha, double beta, double gamma) {
  auto rz = [](double t) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = std::polar(1.0, -0.5 * t);
    m(1, 1) = std::polar(1.0, 0.5 * t);
    return m;
  };
  Eigen::Matrix2cd ry;
  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);
  ry << c, -s, s, c;
  return rz(alpha) * ry * rz(gamma);
}

LocalUnitaryPair LocalUnitaryPair::from_angles(const std::array<double, 6>& angles) {
  LocalUnitaryPair p;
  for (int i = 0; i < 3; ++i) {
    p.u_angles[static_cast<std::size_t>(i)] = angles[static_cast<std::size_t>(i)];
    p.v_angles[static_cast<std::size_t>(i)] = angles[static_cast<std::size_t>(i + 3)];
  }
  p.u = euler_zyz(angles[0], angles[1], angles[2]);
  p.v = euler_zyz(angles[3], angles[4], angles[5]);
  return p;
}

ComplexMatrix LocalUnitaryPair::tensor() const { return tensor4(u, v); }

double fef_objective(const DensityMatrix& rho, const std::array<double, 6>& angles) {
  require_two_qubits(rho, "fef_objective");
  return objective(rho.matrix(), angles);
}

FefResult fef(const DensityMatrix& rho, const FefOptions& options) {
  require_two_qubits(rho, "fef");
  if (options.starts < 1) throw Error(ErrorCode::InvalidArgument, "fef needs at least one start");
  const Eigen::Matrix4cd m = rho.matrix();

  LocalMax winner;
  winner.value = -1.0;
  for (int s = 0; s < options.starts; ++s) {
    LocalMax local = nelder_mead(m, draw_start(options.seed, s), 0.5, options);
    // Restart from the optimum with a small simplex to shake off a
    // collapsed search direction.
    const LocalMax polished = nelder_mead(m, local.point, 1e-3, options);
    if (polished.value >= local.value) local = polished;
    if (local.value > winner.value) winner = local;
  }

  Angles wrapped{};
  for (std::size_t i = 0; i < wrapped.size(); ++i) wrapped[i] = wrap_angle(winner.point[i]);
  LocalUnitaryPair frame = LocalUnitaryPair::from_angles(wrapped);
  DensityMatrix transformed = conjugate(rho, frame.tensor());
  return FefResult{std::min(1.0, winner.value), frame, std::move(transformed), options.starts,
                   winner.converged};
}

double fef_bell_diagonal(const BellDiagonalSpec& spec) {
  require_two_qubits(spec, "fef_bell_diagonal");
  validate_bell_diagonal_spec(spec);
  double best = 0.0;
  for (const auto& [plus, minus] : spec.weights) best = std::max({best, plus, minus});
  return best;
}

PptStatus bell_diagonal_npt(const BellDiagonalSpec& spec, double tol) {
  require_two_qubits(spec, "bell_diagonal_npt");
  validate_bell_diagonal_spec(spec);
  const auto [p0, m0] = spec.weights[0];
  const auto [p1, m1] = spec.weights[1];
  const bool first = std::abs(p0 - m0) > p1 + m1 + 2.0 * tol;
  const bool second = std::abs(p1 - m1) > p0 + m0 + 2.0 * tol;
  return first || second ? PptStatus::NPT : PptStatus::PPT;
}

const char* to_string(Detectability d) {
  switch (d) {
    case Detectability::Direct: return "DIRECT";
    case Detectability::AfterLocalUnitary: return "AFTER_LOCAL_UNITARY";
    case Detectability::DcBlindEntangled: return "DC_BLIND_ENTANGLED";
    case Detectability::Separable: return "SEPARABLE";
  }
  return "UNKNOWN";
}

DetectabilityVerdict classify(const DensityMatrix& rho, const FefOptions& options, double tol) {
  require_two_qubits(rho, "classify");
  const DcCoefficients coeffs = extract_coefficients(rho);
  const double two_lambda1 = coeffs.two_lambda(1);
  FefResult fr = fef(rho, options);
  PptReport ppt = ppt_report(rho, Bipartition(2, 1), tol);

  DetectabilityVerdict verdict{Detectability::Separable, fr.value, coeffs.delta, two_lambda1,
                               std::nullopt, std::nullopt, ppt, fr};
  if (dc_criterion(coeffs, 1) == DcVerdict::NptCertified) {
    verdict.kind = Detectability::Direct;
  } else if (fr.value > 0.5 + kFefBand) {
    const DcCoefficients rotated = extract_coefficients(fr.transformed_state);
    if (dc_criterion(rotated, 1) != DcVerdict::NptCertified)
      throw Error(ErrorCode::Internal,
                  "witness frame does not restore Δ̃ > 2λ̃1 although fef > ½");
    verdict.kind = Detectability::AfterLocalUnitary;
    verdict.witness_frame = fr.optimizer;
    verdict.witness_coefficients = rotated;
  } else if (ppt.status == PptStatus::NPT) {
    verdict.kind = Detectability::DcBlindEntangled;
  }
  return verdict;
}

bool verify_statement_11(const DensityMatrix& rho, double tie_tol) {
  require_two_qubits(rho, "verify_statement_11");
  const DcCoefficients c = extract_coefficients(rho);
  const bool dc_side = c.delta > c.two_lambda(1) + tie_tol;
  const bool overlap_side =
      c.lambda0_plus > 0.5 + 0.5 * tie_tol || c.lambda0_minus > 0.5 + 0.5 * tie_tol;
  return dc_side == overlap_side;
}

}  // namespace dcdepol
