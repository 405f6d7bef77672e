#include "dcdepol/cli/state_file.hpp"

#include <fstream>
#include <sstream>

namespace dcdepol::cli {

namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& msg) {
  throw Error(ErrorCode::Parse, "state file: " + msg);
}

void read_real_block(const json& doc, const char* key, Eigen::Index d, ComplexMatrix& m,
                     bool imaginary) {
  if (!doc.contains(key)) parse_error(std::string("missing field '") + key + "'");
  const json& rows = doc.at(key);
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != d)
    parse_error(std::string("'") + key + "' must be an array of " + std::to_string(d) + " rows");
  for (Eigen::Index r = 0; r < d; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d)
      parse_error(std::string("'") + key + "' row " + std::to_string(r) + " must have " +
                  std::to_string(d) + " entries");
    for (Eigen::Index c = 0; c < d; ++c) {
      const json& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number())
        parse_error(std::string("'") + key + "'[" + std::to_string(r) + "][" +
                    std::to_string(c) + "] is not a number");
      const double x = v.get<double>();
      if (imaginary)
        m(r, c).imag(x);
      else
        m(r, c).real(x);
    }
  }
}

}  // namespace

StateFile parse_state_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) parse_error("top level must be an object");
  if (!doc.contains("n_qubits") || !doc.at("n_qubits").is_number_integer())
    parse_error("missing integer field 'n_qubits'");
  const auto n = doc.at("n_qubits").get<long long>();
  if (n < 1 || n > kMaxQubits)
    parse_error("'n_qubits' must be in [1, " + std::to_string(kMaxQubits) + "]");

  StateFile file;
  file.n_qubits = static_cast<int>(n);
  const auto d = static_cast<Eigen::Index>(dimension(file.n_qubits));
  file.matrix = ComplexMatrix::Zero(d, d);
  read_real_block(doc, "matrix_re", d, file.matrix, false);
  read_real_block(doc, "matrix_im", d, file.matrix, true);

  if (doc.contains("metadata")) {
    const json& meta = doc.at("metadata");
    if (!meta.is_object()) parse_error("'metadata' must be an object");
    if (meta.contains("name")) {
      if (!meta.at("name").is_string()) parse_error("'metadata.name' must be a string");
      file.name = meta.at("name").get<std::string>();
    }
    if (meta.contains("description")) {
      if (!meta.at("description").is_string())
        parse_error("'metadata.description' must be a string");
      file.description = meta.at("description").get<std::string>();
    }
  }
  return file;
}

StateFile read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_file(buf.str());
}

nlohmann::json to_json(const StateFile& file) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < file.matrix.rows(); ++r) {
    json row_re = json::array();
    json row_im = json::array();
    for (Eigen::Index c = 0; c < file.matrix.cols(); ++c) {
      row_re.push_back(file.matrix(r, c).real());
      row_im.push_back(file.matrix(r, c).imag());
    }
    re.push_back(std::move(row_re));
    im.push_back(std::move(row_im));
  }
  json doc = {{"n_qubits", file.n_qubits}, {"matrix_re", std::move(re)}, {"matrix_im", std::move(im)}};
  if (file.name || file.description) {
    json meta = json::object();
    if (file.name) meta["name"] = *file.name;
    if (file.description) meta["description"] = *file.description;
    doc["metadata"] = std::move(meta);
  }
  return doc;
}

std::string serialize_state_file(const StateFile& file) { return to_json(file).dump(2) + "\n"; }

void write_state_file(const std::string& path, const StateFile& file) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << serialize_state_file(file);
  if (!out) throw Error(ErrorCode::Io, "failed writing '" + path + "'");
}

DensityMatrix to_density_matrix(const StateFile& file, double tol) {
  return DensityMatrix::from_matrix(file.matrix, tol);
}

StateFile from_density_matrix(const DensityMatrix& rho, std::optional<std::string> name,
                              std::optional<std::string> description) {
  return StateFile{rho.n_qubits(), rho.matrix(), std::move(name), std::move(description)};
}

}  // namespace dcdepol::cli
