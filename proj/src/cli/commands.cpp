#include "dcdepol/cli/commands.hpp"

#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "dcdepol/cli/state_file.hpp"

namespace dcdepol::cli {

namespace {

using nlohmann::json;

json coefficients_json(const DcCoefficients& c) {
  json two_lambdas = json::array();
  for (double l : c.lambdas) two_lambdas.push_back(2.0 * l);
  return {{"lambda0_plus", c.lambda0_plus}, {"lambda0_minus", c.lambda0_minus},
          {"lambdas", c.lambdas},           {"two_lambdas", two_lambdas},
          {"delta", c.delta}};
}

json frame_json(const LocalUnitaryPair& f) {
  return {{"u_angles", f.u_angles}, {"v_angles", f.v_angles}};
}

json ppt_json(const PptReport& r) {
  return {{"k", r.bipartition.k()},
          {"side_b", r.bipartition.side_b_qubits()},
          {"min_eigenvalue", r.min_eigenvalue},
          {"status", to_string(r.status)},
          {"negativity", r.negativity}};
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

void render_analysis_text(const json& r, std::ostream& out) {
  const auto& c = r["coefficients"];
  fmt::print(out, "N = {}   purity = {:.6f}\n", r["n_qubits"].get<int>(),
             r["purity"].get<double>());
  fmt::print(out, "lambda0+ = {:.6f}   lambda0- = {:.6f}   Delta = {:.6f}\n",
             c["lambda0_plus"].get<double>(), c["lambda0_minus"].get<double>(),
             c["delta"].get<double>());
  fmt::print(out, "\n{:>4}  {:<10} {:>10} {:>14} {:>5} {:>11}  {}\n", "k", "side B", "2lambda_k",
             "min eig(PT)", "PPT", "negativity", "DC criterion");
  for (const auto& b : r["bipartitions"]) {
    fmt::print(out, "{:>4}  {:<10} {:>10.6f} {:>14.6e} {:>5} {:>11.6f}  {}\n",
               b["k"].get<Index>(), join_ints(b["side_b"].get<std::vector<int>>()),
               b["two_lambda"].get<double>(), b["min_eigenvalue"].get<double>(),
               b["status"].get<std::string>(), b["negativity"].get<double>(),
               b["dc_criterion"].get<std::string>());
  }
  fmt::print(out, "\npair distillability (DC sufficient condition):\n");
  for (const auto& p : r["pairs"])
    fmt::print(out, "  ({},{})  {}\n", p["i"].get<int>(), p["j"].get<int>(),
               p["verdict"].get<std::string>());
  if (r.contains("two_qubit")) {
    const auto& t = r["two_qubit"];
    fmt::print(out, "\nfully entangled fraction = {:.6f}\nverdict: {}\n", t["fef"].get<double>(),
               t["verdict"].get<std::string>());
  }
}

void render_classification_text(const json& r, std::ostream& out) {
  fmt::print(out, "verdict: {}\n", r["verdict"].get<std::string>());
  fmt::print(out, "fef: {:.6f}\n", r["fef"].get<double>());
  fmt::print(out, "delta: {:.6f}\n", r["delta"].get<double>());
  fmt::print(out, "two_lambda1: {:.6f}\n", r["two_lambda1"].get<double>());
  fmt::print(out, "ppt: {} (min eigenvalue {:.6e})\n", r["ppt_status"].get<std::string>(),
             r["min_pt_eigenvalue"].get<double>());
  if (r.contains("witness_frame")) {
    const auto& f = r["witness_frame"];
    const auto u = f["u_angles"].get<std::vector<double>>();
    const auto v = f["v_angles"].get<std::vector<double>>();
    fmt::print(out, "witness U angles (z-y-z): {:.9f} {:.9f} {:.9f}\n", u[0], u[1], u[2]);
    fmt::print(out, "witness V angles (z-y-z): {:.9f} {:.9f} {:.9f}\n", v[0], v[1], v[2]);
    fmt::print(out, "rotated delta: {:.6f}   rotated two_lambda1: {:.6f}\n",
               r["witness_delta"].get<double>(), r["witness_two_lambda1"].get<double>());
  }
}

DensityMatrix load_state(const std::string& path, double tol) {
  return to_density_matrix(read_state_file(path), tol);
}

void emit(const json& report, bool as_json, std::ostream& out,
          void (*render)(const json&, std::ostream&)) {
  if (as_json)
    out << report.dump(2) << "\n";
  else
    render(report, out);
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::Io:
      return kExitParse;
    case ErrorCode::InvalidDensityMatrix:
    case ErrorCode::NotHermitian:
      return kExitValidation;
    case ErrorCode::WrongQubitCount:
    case ErrorCode::RankOutOfRange:
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::LabelOutOfRange:
    case ErrorCode::InvalidWeights:
    case ErrorCode::InvalidArgument:
    case ErrorCode::DimensionMismatch:
      return kExitPrecondition;
    case ErrorCode::NoConvergence:
    case ErrorCode::Internal:
      return kExitInternal;
  }
  return kExitInternal;
}

json analysis_report(const DensityMatrix& rho, const GlobalOptions& opts) {
  const int n = rho.n_qubits();
  const DcCoefficients coeffs = extract_coefficients(rho);
  json report = {{"command", "analyze"},
                 {"n_qubits", n},
                 {"purity", rho.purity()},
                 {"coefficients", coefficients_json(coeffs)}};

  json parts = json::array();
  json pairs = json::array();
  if (n >= 2) {
    for (const auto& part : all_bipartitions(n)) {
      json entry = ppt_json(ppt_report(rho, part, opts.tol));
      entry["two_lambda"] = coeffs.two_lambda(part.k());
      entry["dc_criterion"] = to_string(dc_criterion(coeffs, part.k()));
      parts.push_back(std::move(entry));
    }
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        const DistillabilityReport d = pair_distillability(rho, i, j);
        json ks = json::array();
        for (const auto& r : d.per_bipartition) ks.push_back(r.bipartition.k());
        pairs.push_back({{"i", i}, {"j", j}, {"bipartitions", ks},
                         {"verdict", to_string(d.verdict)}});
      }
    }
  }
  report["bipartitions"] = std::move(parts);
  report["pairs"] = std::move(pairs);
  if (n == 2) {
    json t = classification_report(rho, opts);
    t.erase("command");
    report["two_qubit"] = std::move(t);
  }
  return report;
}

json classification_report(const DensityMatrix& rho, const GlobalOptions& opts) {
  FefOptions fo;
  fo.starts = opts.starts;
  fo.seed = opts.seed;
  const DetectabilityVerdict v = classify(rho, fo, opts.tol);
  json report = {{"command", "classify"},
                 {"verdict", to_string(v.kind)},
                 {"fef", v.fef},
                 {"fef_converged", v.fef_result.converged},
                 {"starts", v.fef_result.starts_used},
                 {"delta", v.delta},
                 {"two_lambda1", v.two_lambda1},
                 {"ppt_status", to_string(v.ppt.status)},
                 {"min_pt_eigenvalue", v.ppt.min_eigenvalue},
                 {"optimizer_frame", frame_json(v.fef_result.optimizer)}};
  if (v.witness_frame) {
    report["witness_frame"] = frame_json(*v.witness_frame);
    report["witness_delta"] = v.witness_coefficients->delta;
    report["witness_two_lambda1"] = v.witness_coefficients->two_lambda(1);
  }
  return report;
}

std::vector<std::uint64_t> doubling_schedule(std::uint64_t samples) {
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "--samples must be >= 1");
  std::vector<std::uint64_t> out;
  for (int shift = 4; shift >= 0; --shift) {
    const std::uint64_t m = std::max<std::uint64_t>(1, samples >> shift);
    if (out.empty() || out.back() != m) out.push_back(m);
  }
  return out;
}

std::vector<ConvergenceRow> trajectory_convergence(const DensityMatrix& rho,
                                                   std::uint64_t samples, std::uint64_t seed) {
  const auto schedule = doubling_schedule(samples);
  const DensityMatrix exact = dc_transform(rho);
  const auto estimates = sample_trajectory_prefixes(rho, schedule, seed);
  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < schedule.size(); ++i)
    rows.push_back({schedule[i], max_abs_diff(estimates[i].matrix(), exact.matrix())});
  return rows;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dür-Cirac depolarization and two-qubit detectability analysis", "dcdepol"};
  app.require_subcommand(1);

  GlobalOptions opts;
  std::string format = "text";
  app.add_option("--tol", opts.tol, "validation / PPT tolerance")->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--starts", opts.starts, "multi-start count for the fully entangled fraction")
      ->capture_default_str()->check(CLI::Range(1, 100000));
  app.add_option("--seed", opts.seed, "random seed")->capture_default_str();
  app.add_option("--format", format, "output format")->capture_default_str()
      ->check(CLI::IsMember({"text", "json"}));

  std::string input;
  std::string output;

  auto* analyze = app.add_subcommand("analyze", "DC coefficients, PPT per bipartition, pair distillability");
  analyze->fallthrough();
  analyze->add_option("input", input, "state file")->required();
  analyze->add_option("-o,--output", output, "also write the JSON report here");

  auto* classify_cmd = app.add_subcommand("classify", "two-qubit detectability verdict");
  classify_cmd->fallthrough();
  classify_cmd->add_option("input", input, "state file")->required();

  auto* depolarize = app.add_subcommand("depolarize", "write the DC-depolarized state");
  depolarize->fallthrough();
  depolarize->add_option("input", input, "state file")->required();
  depolarize->add_option("output", output, "output state file")->required();

  int n_qubits = 2;
  int rank = 1;
  auto* random = app.add_subcommand("random", "write a random density matrix");
  random->fallthrough();
  random->add_option("-n,--qubits", n_qubits, "qubit count")->required();
  random->add_option("-r,--rank", rank, "rank of the mixture")->required();
  random->add_option("-o,--output", output, "output state file")->required();

  std::uint64_t samples = 1u << 14;
  auto* trajectories = app.add_subcommand("trajectories", "Monte Carlo convergence to dc_transform");
  trajectories->fallthrough();
  trajectories->add_option("input", input, "state file")->required();
  trajectories->add_option("-m,--samples", samples, "largest sample count")->capture_default_str()
      ->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }
  opts.json = format == "json";

  try {
    if (analyze->parsed()) {
      const json report = analysis_report(load_state(input, opts.tol), opts);
      emit(report, opts.json, out, render_analysis_text);
      if (!output.empty()) {
        std::ofstream f(output);
        if (!f) throw Error(ErrorCode::Io, "cannot open '" + output + "' for writing");
        f << report.dump(2) << "\n";
      }
    } else if (classify_cmd->parsed()) {
      const DensityMatrix rho = load_state(input, opts.tol);
      if (rho.n_qubits() != 2)
        throw Error(ErrorCode::WrongQubitCount,
                    "classify needs a 2-qubit state, got N = " + std::to_string(rho.n_qubits()));
      emit(classification_report(rho, opts), opts.json, out, render_classification_text);
    } else if (depolarize->parsed()) {
      const StateFile in_file = read_state_file(input);
      const DensityMatrix rho_n = dc_transform(to_density_matrix(in_file, opts.tol));
      write_state_file(output, from_density_matrix(rho_n, in_file.name,
                                                   std::string("DC-depolarized state")));
      const json report = {{"command", "depolarize"},
                           {"input", input},
                           {"output", output},
                           {"coefficients", coefficients_json(coefficients_from_diagonal(rho_n))}};
      if (opts.json)
        out << report.dump(2) << "\n";
      else
        fmt::print(out, "wrote {} (N = {}, Delta = {:.6f})\n", output, rho_n.n_qubits(),
                   report["coefficients"]["delta"].get<double>());
    } else if (random->parsed()) {
      const DensityMatrix rho = random_density_matrix(n_qubits, rank, opts.seed);
      write_state_file(output, from_density_matrix(
                                   rho, fmt::format("random-n{}-r{}-s{}", n_qubits, rank, opts.seed),
                                   std::string("random mixture of pure states")));
      const json report = {{"command", "random"}, {"output", output}, {"n_qubits", n_qubits},
                           {"rank", rank},        {"seed", opts.seed}, {"purity", rho.purity()}};
      if (opts.json)
        out << report.dump(2) << "\n";
      else
        fmt::print(out, "wrote {} (N = {}, rank = {}, seed = {}, purity = {:.6f})\n", output,
                   n_qubits, rank, opts.seed, rho.purity());
    } else if (trajectories->parsed()) {
      const DensityMatrix rho = load_state(input, opts.tol);
      const auto rows = trajectory_convergence(rho, samples, opts.seed);
      if (opts.json) {
        json table = json::array();
        for (const auto& r : rows) table.push_back({{"samples", r.samples}, {"distance", r.distance}});
        out << json{{"command", "trajectories"}, {"seed", opts.seed}, {"rows", table}}.dump(2)
            << "\n";
      } else {
        fmt::print(out, "{:>10}  {}\n", "samples", "max|estimate - dc_transform|");
        for (const auto& r : rows) fmt::print(out, "{:>10}  {:.6e}\n", r.samples, r.distance);
      }
    }
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace dcdepol::cli
