#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ringent/eigensolver.hpp"
#include "ringent/entanglement.hpp"
#include "ringent/optimizer.hpp"

namespace ringent {

enum class OutputFormat { text, csv, json };
OutputFormat parse_format(const std::string& name);

enum class Provenance { analytic, diagonalization, optimization, reference, extrapolation, input };
const char* to_string(Provenance p);

using Cell = std::variant<double, long long, std::string>;

/// How text output shortens numbers. Raw values are never altered.
enum class Rounding { half_even, truncate };

struct ReportRow {
  std::string label;
  std::vector<std::pair<std::string, Cell>> values;
  Provenance provenance = Provenance::analytic;
  std::optional<Rounding> rounding;  // overrides the report's text rounding
};


struct Report {
  std::string name;
  Rounding rounding = Rounding::half_even;
  std::vector<ReportRow> rows;
  std::vector<std::string> notes;
  std::optional<PairDensityMatrix> matrix;
};

/// Fixed-point rendering with round-half-even on exact ties.
std::string format_fixed(double value, int precision);
/// Fixed-point rendering truncated toward zero.
std::string format_truncated(double value, int precision);

/// Text rounds to `precision`; CSV and JSON carry full double precision.
std::string render(const Report& report, OutputFormat format, int precision = 3);
nlohmann::ordered_json report_to_json(const Report& report);

// Published values the regressions compare against.
struct CmaxTableEntry {
  int n;
  std::vector<int> p_opt;
  double c_max;
};
const std::vector<CmaxTableEntry>& reference_cmax_table();

struct AfmTableEntry {
  int n;
  double neg_energy_per_site;
  double c_gs;
};
const std::vector<AfmTableEntry>& reference_afm_table();

/// Infinite-chain Heisenberg constants: -E/N = 4 ln 2 - 1 and C = 2 ln 2 - 1.
double infinite_chain_neg_energy_per_site();
double infinite_chain_concurrence();

/// Pair matrix of the optimal constrained infinite chain.
BlockPairDensityMatrix cmax_limit_rdm();
/// Pair matrix of the infinite Heisenberg chain from C = 2 ln 2 - 1 and |z| + v = w.
BlockPairDensityMatrix afm_limit_rdm();

Report cmd_table_cmax(int n_max, bool verify, const OptimizerOptions& optimizer = {});
Report cmd_table_afm(int n_max, const SolverOptions& solver = {}, bool extrapolate = false);
Report cmd_cmax(int n, std::optional<int> p);
Report cmd_afm(int n, const SolverOptions& solver = {});
Report cmd_oracle(int n_min, int n_max, std::optional<int> p, const SolverOptions& solver = {},
                  const OptimizerOptions& optimizer = {});
Report cmd_n5(std::optional<double> theta);

/// target: "cmax-limit", "afm-limit", "afm" (needs n) or "state" (needs path).
Report cmd_rho(const std::string& target, std::optional<int> n, const std::string& path,
               const SolverOptions& solver = {});
Report cmd_state_concurrence(const std::string& path, int site_a, int site_b);

struct Check {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerifyResult {
  std::string suite;
  std::vector<Check> checks;

  bool passed() const;
  nlohmann::ordered_json to_json() const;
  Report to_report() const;
};

struct VerifyOptions {
  std::uint64_t seed = 20020101;
  int n = 6;          // balanced: ring size
  int samples = 200;  // balanced: sample count
  int n_max = 10;     // oracle: largest ring
  SolverOptions solver;
  OptimizerOptions optimizer;
};

/// suite: table1, table2, oracle, balanced, n5.
VerifyResult cmd_verify(const std::string& suite, const VerifyOptions& options = {});

}  // namespace ringent
