#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "dcdepol/cli/commands.hpp"
#include "dcdepol/cli/state_file.hpp"
#include "fixtures.hpp"

using namespace dcdepol;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "dcdepol");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / ("dcdepol-test-" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }
  std::string write_state(const std::string& name, const DensityMatrix& rho) const {
    cli::write_state_file(path(name), cli::from_density_matrix(rho, name));
    return path(name);
  }
  std::string read(const std::string& name) const {
    std::ifstream f(path(name));
    return {std::istreambuf_iterator<char>(f), {}};
  }

 private:
  fs::path dir_;
};

}  // namespace

TEST_CASE("state file parsing") {
  const auto file = cli::parse_state_file(R"({"n_qubits": 1, "matrix_re": [[0.5, 0], [0, 0.5]],
    "matrix_im": [[0, 0], [0, 0]], "metadata": {"name": "mixed"}})");
  CHECK(file.n_qubits == 1);
  CHECK(file.name == "mixed");
  CHECK_FALSE(file.description.has_value());
  CHECK(cli::to_density_matrix(file).purity() == doctest::Approx(0.5));

  for (const char* bad : {"{", R"({"n_qubits": 1})", R"({"n_qubits": "one", "matrix_re": [], "matrix_im": []})",
                          R"({"n_qubits": 1, "matrix_re": [[1, 0], [0]], "matrix_im": [[0, 0], [0, 0]]})",
                          R"({"n_qubits": 2, "matrix_re": [[1, 0], [0, 0]], "matrix_im": [[0, 0], [0, 0]]})"}) {
    try {
      (void)cli::parse_state_file(bad);
      FAIL("accepted: " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Parse);
    }
  }
}

TEST_CASE("state file round trip is exact") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto rho = random_density_matrix(1 + static_cast<int>(seed % 3), 2, seed);
    const auto file = cli::from_density_matrix(rho, "r", "d");
    const auto back = cli::parse_state_file(cli::serialize_state_file(file));
    CHECK(back.matrix == rho.matrix());
    CHECK(back.name == "r");
    CHECK(back.description == "d");
  }
}

TEST_CASE("exit codes") {
  Scratch dir;
  CHECK(invoke({}).code == cli::kExitParse);
  CHECK(invoke({"analyze"}).code == cli::kExitParse);
  CHECK(invoke({"bogus"}).code == cli::kExitParse);
  CHECK(invoke({"analyze", dir.path("missing.json")}).code == cli::kExitParse);
  CHECK(invoke({"analyze", dir.write("broken.json", "{\"n_qubits\": 2,")}).code == cli::kExitParse);

  const auto not_hermitian = dir.write(
      "nh.json", R"({"n_qubits": 1, "matrix_re": [[0.5, 0.3], [0, 0.5]], "matrix_im": [[0, 0], [0, 0]]})");
  const Run r = invoke({"analyze", not_hermitian});
  CHECK(r.code == cli::kExitValidation);
  CHECK(r.err.find("Hermitian") != std::string::npos);
  const auto bad_trace = dir.write(
      "tr.json", R"({"n_qubits": 1, "matrix_re": [[0.5, 0], [0, 0.6]], "matrix_im": [[0, 0], [0, 0]]})");
  CHECK(invoke({"analyze", bad_trace}).code == cli::kExitValidation);

  const auto three = dir.write_state("ghz3.json", DensityMatrix::from_pure(ghz_state(3, {0, Sign::Plus})));
  CHECK(invoke({"classify", three}).code == cli::kExitPrecondition);
  CHECK(invoke({"random", "-n", "2", "-r", "5", "-o", dir.path("x.json")}).code == cli::kExitPrecondition);
  CHECK(invoke({"random", "-n", "0", "-r", "1", "-o", dir.path("x.json")}).code == cli::kExitPrecondition);

  CHECK(cli::exit_code_for(ErrorCode::Internal) == cli::kExitInternal);
  CHECK(cli::exit_code_for(ErrorCode::NoConvergence) == cli::kExitInternal);
}

TEST_CASE("analyze rho_f") {
  Scratch dir;
  const auto file = dir.write_state("rho_f.json", fixtures::rho_f());
  const Run text = invoke({"analyze", file});
  REQUIRE(text.code == 0);
  CHECK(text.out.find("DC_BLIND_ENTANGLED") != std::string::npos);

  const Run js = invoke({"analyze", file, "--format", "json", "-o", dir.path("report.json")});
  REQUIRE(js.code == 0);
  const json r = json::parse(js.out);
  CHECK(r == json::parse(dir.read("report.json")));
  CHECK(r["n_qubits"] == 2);
  CHECK(r["coefficients"]["lambda0_plus"].get<double>() == doctest::Approx(0.5));
  CHECK(r["coefficients"]["delta"].get<double>() == doctest::Approx(0.5));
  CHECK(r["coefficients"]["two_lambdas"][0].get<double>() == doctest::Approx(0.5));
  CHECK(r["bipartitions"][0]["status"] == "NPT");
  CHECK(r["bipartitions"][0]["dc_criterion"] == "INCONCLUSIVE");
  CHECK(r["pairs"][0]["verdict"] == "INCONCLUSIVE");
  CHECK(r["two_qubit"]["verdict"] == "DC_BLIND_ENTANGLED");
  CHECK(std::abs(r["two_qubit"]["fef"].get<double>() - 0.5) <= 1e-6);
}

TEST_CASE("analyze three-qubit GHZ") {
  Scratch dir;
  const auto file = dir.write_state("ghz3.json", DensityMatrix::from_pure(ghz_state(3, {0, Sign::Plus})));
  const Run js = invoke({"--format", "json", "analyze", file});
  REQUIRE(js.code == 0);
  const json r = json::parse(js.out);
  CHECK(r["bipartitions"].size() == 3);
  for (const auto& b : r["bipartitions"]) {
    CHECK(b["status"] == "NPT");
    CHECK(b["dc_criterion"] == "NPT_CERTIFIED");
  }
  CHECK(r["pairs"].size() == 3);
  for (const auto& p : r["pairs"]) CHECK(p["verdict"] == "DISTILLABLE_PAIR");
  CHECK_FALSE(r.contains("two_qubit"));
}

TEST_CASE("classify reports") {
  Scratch dir;
  const auto file = dir.write_state("bd.json", fixtures::bell_diagonal(0.6, 0.1, 0.2, 0.1));
  const Run text = invoke({"classify", file});
  REQUIRE(text.code == 0);
  CHECK(text.out.rfind("verdict: DIRECT\n", 0) == 0);
  CHECK(text.out.find("fef: 0.600000") != std::string::npos);

  const Run js = invoke({"classify", file, "--format", "json", "--starts", "4", "--seed", "9"});
  REQUIRE(js.code == 0);
  const json r = json::parse(js.out);
  CHECK(r["starts"] == 4);
  CHECK(r["verdict"] == "DIRECT");
  CHECK_FALSE(r.contains("witness_frame"));
  CHECK(js.out == invoke({"classify", file, "--format", "json", "--starts", "4", "--seed", "9"}).out);
}

TEST_CASE("depolarize is idempotent") {
  Scratch dir;
  const auto in = dir.write_state("in.json", random_density_matrix(3, 2, 31));
  REQUIRE(invoke({"depolarize", in, dir.path("once.json")}).code == 0);
  REQUIRE(invoke({"depolarize", dir.path("once.json"), dir.path("twice.json")}).code == 0);
  const auto once = cli::to_density_matrix(cli::read_state_file(dir.path("once.json")));
  const auto twice = cli::to_density_matrix(cli::read_state_file(dir.path("twice.json")));
  CHECK(max_abs_diff(once.matrix(), twice.matrix()) <= 1e-12);
  CHECK(max_abs_diff(once.matrix(),
                     dc_transform(cli::to_density_matrix(cli::read_state_file(in))).matrix()) == 0.0);
}

TEST_CASE("random is deterministic in the seed") {
  Scratch dir;
  REQUIRE(invoke({"random", "-n", "3", "-r", "2", "-o", dir.path("a.json"), "--seed", "12"}).code == 0);
  REQUIRE(invoke({"random", "-n", "3", "-r", "2", "-o", dir.path("b.json"), "--seed", "12"}).code == 0);
  REQUIRE(invoke({"random", "-n", "3", "-r", "2", "-o", dir.path("c.json"), "--seed", "13"}).code == 0);
  CHECK(dir.read("a.json") == dir.read("b.json"));
  CHECK(dir.read("a.json") != dir.read("c.json"));
  const auto a = cli::read_state_file(dir.path("a.json"));
  CHECK(a.n_qubits == 3);
  CHECK(a.matrix == random_density_matrix(3, 2, 12).matrix());
}

TEST_CASE("trajectories") {
  Scratch dir;
  const auto file = dir.write_state("s.json", random_density_matrix(2, 2, 3));
  const Run a = invoke({"trajectories", file, "-m", "4096", "--format", "json", "--seed", "5"});
  REQUIRE(a.code == 0);
  CHECK(a.out == invoke({"trajectories", file, "-m", "4096", "--format", "json", "--seed", "5"}).out);
  const json rows = json::parse(a.out)["rows"];
  REQUIRE(rows.size() == 5);
  CHECK(rows[0]["samples"] == 256);
  CHECK(rows[4]["samples"] == 4096);
  CHECK(rows[4]["distance"].get<double>() < 0.1);
  CHECK(invoke({"trajectories", file, "-m", "0"}).code == cli::kExitParse);

  CHECK(cli::doubling_schedule(1) == std::vector<std::uint64_t>{1});
  CHECK(cli::doubling_schedule(4) == std::vector<std::uint64_t>{1, 2, 4});
}
