#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "dcdepol/states.hpp"

namespace dcdepol::cli {

/// On-disk state format (JSON):
///   {
///     "n_qubits": N,
///     "matrix_re": [[...], ...],   // 2^N rows of 2^N numbers
///     "matrix_im": [[...], ...],
///     "metadata": {"name": "...", "description": "..."}   // optional
///   }
/// Rows are row-major; basis index sum_i b_i 2^(N-i) (qubit 1 most
/// significant). Numbers are written in shortest round-trip form, so a
/// read/write cycle reproduces every double exactly.
struct StateFile {
  int n_qubits = 0;
  ComplexMatrix matrix;
  std::optional<std::string> name;
  std::optional<std::string> description;
};

/// Throws Error(Parse) on malformed content.
StateFile parse_state_file(const std::string& text);
StateFile read_state_file(const std::string& path);

nlohmann::json to_json(const StateFile& file);
std::string serialize_state_file(const StateFile& file);
void write_state_file(const std::string& path, const StateFile& file);

/// Throws Error(InvalidDensityMatrix) naming the violated invariant.
DensityMatrix to_density_matrix(const StateFile& file, double tol = kDefaultTolerance);

StateFile from_density_matrix(const DensityMatrix& rho, std::optional<std::string> name = {},
                              std::optional<std::string> description = {});

}  // namespace dcdepol::cli
