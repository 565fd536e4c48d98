// ringent: tables, density matrices and checks for nearest-neighbour
// concurrence on qubit rings.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ringent/errors.hpp"
#include "ringent/reports.hpp"

namespace {

using ringent::OutputFormat;

struct Settings {
  std::string format = "text";
  std::string out;
  std::string config;
  std::uint64_t seed = 20020101;
  int precision = 3;
  std::size_t dense_threshold = ringent::SolverOptions{}.dense_threshold;
  int max_iterations = ringent::SolverOptions{}.max_iterations;
  int krylov_cap = ringent::SolverOptions{}.krylov_cap;
  double tolerance = ringent::SolverOptions{}.tolerance;
  std::string method = "auto";
  int restarts = ringent::OptimizerOptions{}.restarts;
  int optimizer_iterations = ringent::OptimizerOptions{}.max_iterations;
};

// Flags shared by every subcommand. Each one remembers its option so the
// config file only fills values the command line left alone.
struct CommonFlags {
  CLI::Option* format = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* precision = nullptr;
  CLI::Option* dense_threshold = nullptr;
  CLI::Option* max_iterations = nullptr;
  CLI::Option* krylov_cap = nullptr;
  CLI::Option* tolerance = nullptr;
  CLI::Option* method = nullptr;
  CLI::Option* restarts = nullptr;
  CLI::Option* optimizer_iterations = nullptr;
};

CommonFlags add_common(CLI::App* cmd, Settings& s) {
  CommonFlags f;
  f.format = cmd->add_option("--format", s.format, "Output format")
                 ->check(CLI::IsMember({"text", "csv", "json"}));
  cmd->add_option("--out", s.out, "Write output to FILE instead of stdout");
  cmd->add_option("--config", s.config, "JSON file with default flag values")
      ->check(CLI::ExistingFile);
  f.seed = cmd->add_option("--seed", s.seed, "Seed for random starts and samples");
  f.precision = cmd->add_option("--precision", s.precision, "Decimals in text output")
                    ->check(CLI::Range(0, 17));
  f.dense_threshold =
      cmd->add_option("--dense-threshold", s.dense_threshold, "Largest dimension solved densely");
  f.max_iterations =
      cmd->add_option("--max-iterations", s.max_iterations, "Lanczos restarts")
          ->check(CLI::PositiveNumber);
  f.krylov_cap = cmd->add_option("--krylov-cap", s.krylov_cap, "Krylov vectors per restart")
                     ->check(CLI::Range(2, 100000));
  f.tolerance = cmd->add_option("--tolerance", s.tolerance, "Eigen-residual tolerance")
                    ->check(CLI::PositiveNumber);
  f.method = cmd->add_option("--method", s.method, "Eigensolver")
                 ->check(CLI::IsMember({"auto", "dense", "lanczos"}));
  f.restarts = cmd->add_option("--restarts", s.restarts, "Optimizer restarts")
                   ->check(CLI::PositiveNumber);
  f.optimizer_iterations =
      cmd->add_option("--optimizer-iterations", s.optimizer_iterations,
                      "Optimizer iterations per restart")
          ->check(CLI::PositiveNumber);
  return f;
}

template <typename T>
void fill(const nlohmann::json& cfg, const char* key, CLI::Option* opt, T& target) {
  if (opt->count() == 0 && cfg.contains(key)) target = cfg.at(key).get<T>();
}

void apply_config(const CommonFlags& f, Settings& s) {
  if (s.config.empty()) return;
  std::ifstream in(s.config);
  nlohmann::json cfg;
  try {
    in >> cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ringent::ValidationError("config " + s.config + ": " + e.what());
  }
  if (!cfg.is_object()) throw ringent::ValidationError("config " + s.config + ": expected an object");
  try {
    fill(cfg, "format", f.format, s.format);
    fill(cfg, "seed", f.seed, s.seed);
    fill(cfg, "precision", f.precision, s.precision);
    fill(cfg, "dense_threshold", f.dense_threshold, s.dense_threshold);
    fill(cfg, "max_iterations", f.max_iterations, s.max_iterations);
    fill(cfg, "krylov_cap", f.krylov_cap, s.krylov_cap);
    fill(cfg, "tolerance", f.tolerance, s.tolerance);
    fill(cfg, "method", f.method, s.method);
    fill(cfg, "restarts", f.restarts, s.restarts);
    fill(cfg, "optimizer_iterations", f.optimizer_iterations, s.optimizer_iterations);
  } catch (const nlohmann::json::exception& e) {
    throw ringent::ValidationError("config " + s.config + ": " + e.what());
  }
  if (s.format != "text" && s.format != "csv" && s.format != "json") {
    throw ringent::ValidationError("config " + s.config + ": bad format '" + s.format + "'");
  }
}

ringent::SolverOptions solver_options(const Settings& s) {
  ringent::SolverOptions o;
  o.dense_threshold = s.dense_threshold;
  o.max_iterations = s.max_iterations;
  o.krylov_cap = s.krylov_cap;
  o.tolerance = s.tolerance;
  if (s.method == "dense") o.method = ringent::SolverMethod::dense;
  if (s.method == "lanczos") o.method = ringent::SolverMethod::lanczos;
  return o;
}

ringent::OptimizerOptions optimizer_options(const Settings& s) {
  ringent::OptimizerOptions o;
  o.restarts = s.restarts;
  o.max_iterations = s.optimizer_iterations;
  o.seed = s.seed;
  return o;
}

void emit(const std::string& text, const Settings& s) {
  if (s.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(s.out);
  if (!out) throw ringent::ValidationError("cannot write " + s.out);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nearest-neighbour concurrence on qubit rings"};
  app.require_subcommand(1);
  Settings s;
  std::vector<CommonFlags> flags;

  int n_max = 10;
  int n_min = 2;
  int n = 0;
  std::optional<int> p;
  std::optional<double> theta;
  bool verify = false;
  bool extrapolate = false;
  std::string target;
  std::string path;
  std::vector<int> sites{1, 2};
  std::string suite;
  int samples = 200;
  int balanced_n = 6;

  auto* table_cmax = app.add_subcommand("table-cmax", "Optimal constrained concurrence by ring size");
  table_cmax->add_option("--n-max", n_max, "Largest ring")->check(CLI::Range(2, 63));
  table_cmax->add_flag("--verify", verify, "Add a numerical optimization cross-check column");
  flags.push_back(add_common(table_cmax, s));

  auto* table_afm = app.add_subcommand("table-afm", "Heisenberg ring energies and concurrence");
  table_afm->add_option("--n-max", n_max, "Largest (even) ring")->check(CLI::Range(2, 30));
  table_afm->add_flag("--extrapolate", extrapolate, "Add a 1/N^2 fit row (not a reference value)");
  flags.push_back(add_common(table_afm, s));

  auto* cmax = app.add_subcommand("cmax", "Closed-form optimum for one ring size");
  cmax->add_option("n", n, "Ring size")->required();
  cmax->add_option("--p", p, "Number of up spins (default: all)");
  flags.push_back(add_common(cmax, s));

  auto* afm = app.add_subcommand("afm", "Heisenberg ground state of one ring");
  afm->add_option("n", n, "Even ring size")->required();
  flags.push_back(add_common(afm, s));

  auto* oracle = app.add_subcommand("oracle", "Closed form vs XY diagonalization vs optimizer");
  oracle->add_option("--n-min", n_min, "Smallest ring")->check(CLI::Range(2, 63));
  oracle->add_option("--n-max", n_max, "Largest ring")->check(CLI::Range(2, 63));
  oracle->add_option("--p", p, "Restrict to one filling");
  flags.push_back(add_common(oracle, s));

  auto* n5 = app.add_subcommand("n5", "Five-site relaxation of the adjacency constraint");
  n5->add_option("--theta", theta, "Evaluate one mixing angle instead of optimizing");
  flags.push_back(add_common(n5, s));

  auto* rho = app.add_subcommand("rho", "Neighbouring-pair density matrix");
  rho->add_option("target", target, "cmax-limit, afm-limit, afm or state")
      ->required()
      ->check(CLI::IsMember({"cmax-limit", "afm-limit", "afm", "state"}));
  rho->add_option("arg", path, "Ring size for afm, file for state");
  flags.push_back(add_common(rho, s));

  auto* state_c = app.add_subcommand("state-concurrence", "Concurrence of a pair in a state file");
  state_c->add_option("file", path, "State JSON")->required();
  state_c->add_option("--sites", sites, "Two 1-based sites")->expected(2);
  flags.push_back(add_common(state_c, s));

  auto* verify_cmd = app.add_subcommand("verify", "Run a check suite; nonzero exit on failure");
  verify_cmd->add_option("suite", suite, "table1, table2, oracle, balanced or n5")
      ->required()
      ->check(CLI::IsMember({"table1", "table2", "oracle", "balanced", "n5"}));
  verify_cmd->add_option("--n", balanced_n, "balanced: ring size")->check(CLI::Range(2, 30));
  verify_cmd->add_option("--samples", samples, "balanced: sample count")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--n-max", n_max, "oracle: largest ring")->check(CLI::Range(2, 63));
  const CommonFlags& verify_flags = flags.emplace_back(add_common(verify_cmd, s));

  CLI11_PARSE(app, argc, argv);

  try {
    const std::vector<CLI::App*> cmds{table_cmax, table_afm, cmax,      afm,       oracle,
                                      n5,         rho,       state_c,   verify_cmd};
    for (std::size_t i = 0; i < cmds.size(); ++i) {
      if (cmds[i]->parsed()) apply_config(flags[i], s);
    }
    // verify reports are machine-readable unless asked otherwise.
    if (verify_cmd->parsed() && verify_flags.format->count() == 0 && s.config.empty()) s.format = "json";

    const OutputFormat format = ringent::parse_format(s.format);
    const auto solver = solver_options(s);
    const auto optimizer = optimizer_options(s);

    if (verify_cmd->parsed()) {
      ringent::VerifyOptions vo;
      vo.seed = s.seed;
      vo.n = balanced_n;
      vo.samples = samples;
      vo.n_max = n_max;
      vo.solver = solver;
      vo.optimizer = optimizer;
      const auto result = ringent::cmd_verify(suite, vo);
      if (format == OutputFormat::json) {
        emit(result.to_json().dump(2) + "\n", s);
      } else {
        emit(ringent::render(result.to_report(), format, s.precision), s);
      }
      return result.passed() ? 0 : 1;
    }

    ringent::Report report;
    if (table_cmax->parsed()) {
      report = ringent::cmd_table_cmax(n_max, verify, optimizer);
    } else if (table_afm->parsed()) {
      report = ringent::cmd_table_afm(n_max, solver, extrapolate);
    } else if (cmax->parsed()) {
      report = ringent::cmd_cmax(n, p);
    } else if (afm->parsed()) {
      report = ringent::cmd_afm(n, solver);
    } else if (oracle->parsed()) {
      report = ringent::cmd_oracle(n_min, n_max, p, solver, optimizer);
    } else if (n5->parsed()) {
      report = ringent::cmd_n5(theta);
    } else if (rho->parsed()) {
      std::optional<int> ring;
      if (target == "afm") {
        if (path.empty()) throw ringent::ValidationError("rho afm needs a ring size");
        try {
          ring = std::stoi(path);
        } catch (const std::exception&) {
          throw ringent::ValidationError("rho afm: '" + path + "' is not a ring size");
        }
      }
      if (target == "state" && path.empty()) throw ringent::ValidationError("rho state needs a file");
      report = ringent::cmd_rho(target, ring, path, solver);
    } else if (state_c->parsed()) {
      report = ringent::cmd_state_concurrence(path, sites[0], sites[1]);
    }
    emit(ringent::render(report, format, s.precision), s);
  } catch (const ringent::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::out_of_range& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
