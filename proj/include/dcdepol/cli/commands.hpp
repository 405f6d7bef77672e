#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "dcdepol/fef.hpp"

namespace dcdepol::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 2,
  kExitValidation = 3,
  kExitPrecondition = 4,
  kExitInternal = 5,
};

int exit_code_for(ErrorCode code);

struct GlobalOptions {
  double tol = kDefaultTolerance;
  int starts = 32;
  std::uint64_t seed = 0;
  bool json = false;
};

nlohmann::json analysis_report(const DensityMatrix& rho, const GlobalOptions& opts);
nlohmann::json classification_report(const DensityMatrix& rho, const GlobalOptions& opts);

struct ConvergenceRow {
  std::uint64_t samples;
  double distance;
};

/// Sample counts samples/16, samples/8, ..., samples (at least 1, distinct).
std::vector<std::uint64_t> doubling_schedule(std::uint64_t samples);

std::vector<ConvergenceRow> trajectory_convergence(const DensityMatrix& rho,
                                                   std::uint64_t samples, std::uint64_t seed);

/// Entry point shared by the executable and the tests. argv[0] is the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dcdepol::cli
