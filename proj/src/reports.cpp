#include "ringent/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "ringent/analytic.hpp"
#include "ringent/errors.hpp"
#include "ringent/spin_models.hpp"

namespace ringent {

namespace {

std::string full_precision(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string strip_negative_zero(std::string s) {
  if (s.size() > 1 && s[0] == '-' &&
      s.find_first_not_of("0.", 1) == std::string::npos) {
    s.erase(0, 1);
  }
  return s;
}

std::string join_ints(const std::vector<int>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

std::vector<std::string> column_names(const Report& report) {
  std::vector<std::string> cols;
  for (const auto& row : report.rows) {
    for (const auto& [name, cell] : row.values) {
      if (std::find(cols.begin(), cols.end(), name) == cols.end()) cols.push_back(name);
    }
  }
  return cols;
}

const Cell* find_cell(const ReportRow& row, const std::string& name) {
  for (const auto& [key, cell] : row.values) {
    if (key == name) return &cell;
  }
  return nullptr;
}

std::string text_cell(const Cell& cell, int precision, Rounding rounding) {
  if (const double* d = std::get_if<double>(&cell)) {
    return strip_negative_zero(rounding == Rounding::truncate ? format_truncated(*d, precision)
                                                              : format_fixed(*d, precision));
  }
  if (const long long* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  return std::get<std::string>(cell);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_cell(const Cell& cell) {
  if (const double* d = std::get_if<double>(&cell)) return full_precision(*d);
  if (const long long* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  return csv_escape(std::get<std::string>(cell));
}

nlohmann::ordered_json json_cell(const Cell& cell) {
  if (const double* d = std::get_if<double>(&cell)) return *d;
  if (const long long* i = std::get_if<long long>(&cell)) return *i;
  return std::get<std::string>(cell);
}

std::string render_text(const Report& report, int precision) {
  const auto cols = column_names(report);
  std::vector<std::string> header{"label"};
  header.insert(header.end(), cols.begin(), cols.end());
  std::vector<std::vector<std::string>> table{header};
  for (const auto& row : report.rows) {
    std::vector<std::string> line{row.label};
    for (const auto& c : cols) {
      const Cell* cell = find_cell(row, c);
      line.push_back(cell ? text_cell(*cell, precision, row.rounding.value_or(report.rounding)) : "");
    }
    table.push_back(std::move(line));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }

  std::ostringstream os;
  os << "# " << report.name << '\n';
  if (!report.rows.empty()) {
    for (const auto& line : table) {
      for (std::size_t i = 0; i < line.size(); ++i) {
        if (i) os << "  ";
        os << std::string(width[i] - line[i].size(), ' ') << line[i];
      }
      os << '\n';
    }
  }
  if (report.matrix) {
    static constexpr const char* labels[4] = {"uu", "ud", "du", "dd"};
    os << "pair density matrix (basis uu, ud, du, dd):\n";
    bool complex_entries = false;
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        if (std::abs(report.matrix->entries(r, c).imag()) > 0.5 * std::pow(10.0, -precision)) {
          complex_entries = true;
        }
      }
    }
    for (int r = 0; r < 4; ++r) {
      os << "  " << labels[r];
      for (int c = 0; c < 4; ++c) {
        const auto v = report.matrix->entries(r, c);
        std::string cell = strip_negative_zero(format_fixed(v.real(), precision));
        if (complex_entries) {
          const std::string im = strip_negative_zero(format_fixed(v.imag(), precision));
          cell += (im[0] == '-' ? "" : "+") + im + "i";
        }
        os << "  " << std::string(cell.size() < 10 ? 10 - cell.size() : 0, ' ') << cell;
      }
      os << '\n';
    }
  }
  for (const auto& note : report.notes) os << "note: " << note << '\n';
  return os.str();
}

std::string render_csv(const Report& report) {
  const auto cols = column_names(report);
  std::ostringstream os;
  os << "label,provenance";
  for (const auto& c : cols) os << ',' << csv_escape(c);
  os << '\n';
  for (const auto& row : report.rows) {
    os << csv_escape(row.label) << ',' << to_string(row.provenance);
    for (const auto& c : cols) {
      os << ',';
      if (const Cell* cell = find_cell(row, c)) os << csv_cell(*cell);
    }
    os << '\n';
  }
  if (report.matrix) {
    os << "\nrow,col,re,im\n";
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        const auto v = report.matrix->entries(r, c);
        os << r << ',' << c << ',' << full_precision(v.real()) << ',' << full_precision(v.imag())
           << '\n';
      }
    }
  }
  return os.str();
}

ReportRow block_row(const std::string& label, const BlockPairDensityMatrix& b, Provenance prov) {
  ReportRow row{label, {}, prov, std::nullopt};
  row.values = {{"v", b.v},
                {"w", b.w},
                {"x", b.x},
                {"y", b.y},
                {"z_re", b.z.real()},
                {"z_im", b.z.imag()},
                {"w_minus_x", b.w - b.x},
                {"abs_z_plus_v_minus_w", std::abs(b.z) + b.v - b.w},
                {"concurrence", concurrence_general(b.to_matrix())},
                {"concurrence_block", concurrence_block(b)}};
  return row;
}

Check make_check(std::string name, double expected, double actual, double tolerance,
                 bool passed, std::string detail = {}) {
  return {std::move(name), expected, actual, tolerance, passed, std::move(detail)};
}

Check tolerance_check(std::string name, double expected, double actual, double tolerance) {
  const bool ok = std::abs(actual - expected) <= tolerance;
  return make_check(std::move(name), expected, actual, tolerance, ok);
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "text") return OutputFormat::text;
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ValidationError("unknown output format '" + name + "'");
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::analytic:
      return "analytic";
    case Provenance::diagonalization:
      return "diagonalization";
    case Provenance::optimization:
      return "optimization";
    case Provenance::reference:
      return "reference";
    case Provenance::extrapolation:
      return "extrapolation";
    case Provenance::input:
      return "input";
  }
  return "unknown";
}

std::string format_fixed(double value, int precision) {
  // printf rounds the exact binary value; exact ties go to even.
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, value);
  return buf;
}

std::string format_truncated(double value, int precision) {
  const double scale = std::pow(10.0, precision);
  // The 1e-9 guard keeps values like 1.9999999999999996 from dropping a digit.
  const double t = std::floor(std::abs(value) * scale + 1e-9) / scale;
  return format_fixed(std::copysign(t, value), precision);
}

nlohmann::ordered_json report_to_json(const Report& report) {
  nlohmann::ordered_json doc;
  doc["report"] = report.name;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json r;
    r["label"] = row.label;
    r["provenance"] = to_string(row.provenance);
    nlohmann::ordered_json vals = nlohmann::ordered_json::object();
    for (const auto& [key, cell] : row.values) vals[key] = json_cell(cell);
    r["values"] = std::move(vals);
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  if (report.matrix) {
    auto m = nlohmann::ordered_json::array();
    for (int r = 0; r < 4; ++r) {
      auto line = nlohmann::ordered_json::array();
      for (int c = 0; c < 4; ++c) {
        const auto v = report.matrix->entries(r, c);
        line.push_back({v.real(), v.imag()});
      }
      m.push_back(std::move(line));
    }
    doc["matrix"] = std::move(m);
    doc["matrix_basis"] = {"uu", "ud", "du", "dd"};
  }
  doc["notes"] = report.notes;
  return doc;
}

std::string render(const Report& report, OutputFormat format, int precision) {
  switch (format) {
    case OutputFormat::text:
      return render_text(report, precision);
    case OutputFormat::csv:
      return render_csv(report);
    case OutputFormat::json:
      return report_to_json(report).dump(2) + "\n";
  }
  return {};
}

const std::vector<CmaxTableEntry>& reference_cmax_table() {
  static const std::vector<CmaxTableEntry> table = {
      {2, {1}, 1.000},    {3, {1}, 0.667}, {4, {1}, 0.500},
      {5, {1, 2}, 0.400}, {6, {2}, 0.471}, {7, {2}, 0.462},
      {8, {2}, 0.433},    {9, {3}, 0.444}, {10, {3}, 0.449},
  };
  return table;
}

const std::vector<AfmTableEntry>& reference_afm_table() {
  static const std::vector<AfmTableEntry> table = {
      {2, 3.000, 1.000}, {4, 2.000, 0.500}, {6, 1.868, 0.434},
      {8, 1.825, 0.412}, {10, 1.806, 0.403},
  };
  return table;
}

double infinite_chain_neg_energy_per_site() { return 4.0 * std::numbers::ln2 - 1.0; }
double infinite_chain_concurrence() { return 2.0 * std::numbers::ln2 - 1.0; }

BlockPairDensityMatrix cmax_limit_rdm() {
  const AlphaOptimum opt = optimal_alpha();
  return {0.0, opt.alpha, opt.alpha, 1.0 - 2.0 * opt.alpha, opt.c_max / 2.0};
}

BlockPairDensityMatrix afm_limit_rdm() {
  // Balanced form with trace 2v + 2w = 1, C = 2(|z| - v) and |z| + v = w.
  const double c = infinite_chain_concurrence();
  const double v = (1.0 - c) / 6.0;
  const double w = 0.5 - v;
  return {v, w, w, v, -(w - v)};
}

Report cmd_table_cmax(int n_max, bool verify, const OptimizerOptions& optimizer) {
  if (n_max < 2) throw ValidationError("table-cmax needs n_max >= 2");
  Report report{"table-cmax", Rounding::half_even, {}, {}, std::nullopt};
  for (int n = 2; n <= n_max; ++n) {
    const OptimalFilling best = p_opt(n);
    ReportRow row{std::to_string(n), {}, Provenance::analytic, std::nullopt};
    row.values = {{"N", static_cast<long long>(n)},
                  {"p_opt", join_ints(best.p, " or ")},
                  {"c_max", best.c_max}};
    if (verify) {
      double c_opt = 0.0;
      for (int p : best.p) {
        if (p == 0) continue;
        c_opt = std::max(c_opt, maximize_constrained(n, p, optimizer).best_value);
      }
      row.values.emplace_back("c_optimized", c_opt);
      row.values.emplace_back("abs_diff", std::abs(c_opt - best.c_max));
    }
    report.rows.push_back(std::move(row));
  }
  if (verify) report.notes.push_back("c_optimized: multistart search over constrained states");
  return report;
}

Report cmd_table_afm(int n_max, const SolverOptions& solver, bool extrapolate) {
  if (n_max < 2 || n_max % 2 != 0) throw ValidationError("table-afm needs an even n_max >= 2");
  // The published table shortens by truncation, so text output follows suit.
  Report report{"table-afm", Rounding::truncate, {}, {}, std::nullopt};
  std::vector<double> xs;
  std::vector<double> es;
  std::vector<double> cs;
  for (int n = 2; n <= n_max; n += 2) {
    const AfmResult afm = afm_concurrence(n, solver);
    ReportRow row{std::to_string(n), {}, Provenance::diagonalization, std::nullopt};
    row.values = {{"N", static_cast<long long>(n)},
                  {"neg_e_per_site", -afm.energy_per_site},
                  {"c_gs", afm.c_gs},
                  {"c_max", p_opt(n).c_max}};
    report.rows.push_back(std::move(row));
    if (n >= 4) {
      xs.push_back(1.0 / (static_cast<double>(n) * n));
      es.push_back(-afm.energy_per_site);
      cs.push_back(afm.c_gs);
    }
  }
  ReportRow inf{"inf", {}, Provenance::reference, Rounding::half_even};
  inf.values = {{"N", std::string("inf")},
                {"neg_e_per_site", infinite_chain_neg_energy_per_site()},
                {"c_gs", infinite_chain_concurrence()},
                {"c_max", optimal_alpha().c_max}};
  report.rows.push_back(std::move(inf));
  report.notes.push_back(
      "inf row: external reference constants (Hulthen energy 4 ln 2 - 1, C = 2 ln 2 - 1) "
      "and the infinite-chain c_max optimum; not computed from finite rings");

  if (extrapolate) {
    if (xs.size() < 2) throw ValidationError("--extrapolate needs data for at least N = 4, 6");
    auto fit = [&](const std::vector<double>& ys) {
      const double k = static_cast<double>(xs.size());
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
      }
      const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
      return (sy - slope * sx) / k;
    };
    ReportRow ext{"fit", {}, Provenance::extrapolation, std::nullopt};
    ext.values = {{"N", std::string("inf (fit)")},
                  {"neg_e_per_site", fit(es)},
                  {"c_gs", fit(cs)}};
    report.rows.push_back(std::move(ext));
    report.notes.push_back(
        "fit row: least-squares line in 1/N^2 over the N >= 4 rows; an extrapolation, "
        "not a reference value");
  }
  return report;
}

Report cmd_cmax(int n, std::optional<int> p) {
  Report report{"cmax", Rounding::half_even, {}, {}, std::nullopt};
  auto add = [&](int pp) {
    const CmaxResult r = c_max(n, pp);
    ReportRow row{std::to_string(n) + "," + std::to_string(pp), {}, Provenance::analytic, std::nullopt};
    row.values = {{"N", static_cast<long long>(n)},
                  {"p", static_cast<long long>(pp)},
                  {"c_max", r.c_max},
                  {"e_min", r.e_min},
                  {"c_prime_max", r.c_prime_max},
                  {"degenerate", std::string(r.degenerate ? "yes" : "no")}};
    report.rows.push_back(std::move(row));
  };
  if (p) {
    add(*p);
  } else {
    for (int pp = 0; pp <= n / 2; ++pp) add(pp);
    const OptimalFilling best = p_opt(n);
    report.notes.push_back("p_opt = " + join_ints(best.p, " or ") +
                           ", c_max = " + full_precision(best.c_max));
  }
  if (std::any_of(report.rows.begin(), report.rows.end(), [](const ReportRow& r) {
        return std::get<std::string>(*find_cell(r, "degenerate")) == "yes";
      })) {
    report.notes.push_back("degenerate: p = 0 or N - p <= 2, closed form evaluated at its boundary");
  }
  return report;
}

Report cmd_afm(int n, const SolverOptions& solver) {
  const AfmResult afm = afm_concurrence(n, solver);
  Report report{"afm", Rounding::half_even, {}, {}, afm.rdm.to_matrix()};
  ReportRow row{std::to_string(n), {}, Provenance::diagonalization, std::nullopt};
  row.values = {{"N", static_cast<long long>(n)},
                {"dim", static_cast<long long>(afm.ground.vector.size())},
                {"method", std::string(to_string(afm.ground.method))},
                {"energy", afm.ground.energy},
                {"neg_e_per_site", -afm.energy_per_site},
                {"c_gs", afm.c_gs},
                {"c_from_energy", std::max(-0.5 * (afm.energy_per_site + 1.0), 0.0)},
                {"residual", afm.ground.residual_norm}};
  if (afm.ground.gap) row.values.emplace_back("gap", *afm.ground.gap);
  report.rows.push_back(std::move(row));
  report.rows.push_back(block_row("pair(1,2)", afm.rdm, Provenance::diagonalization));
  return report;
}

Report cmd_oracle(int n_min, int n_max, std::optional<int> p, const SolverOptions& solver,
                  const OptimizerOptions& optimizer) {
  if (n_min < 2 || n_max < n_min) throw ValidationError("oracle needs 2 <= n_min <= n_max");
  Report report{"oracle", Rounding::half_even, {}, {}, std::nullopt};
  for (int n = n_min; n <= n_max; ++n) {
    for (int pp = 1; pp <= n / 2; ++pp) {
      if (p && *p != pp) continue;
      const CmaxResult analytic = c_max(n, pp);
      const XyGroundState xy = xy_ground_state(n - pp, pp, solver);
      const double c_inflated = nearest_neighbor_concurrence(inflate(xy.state));
      const double c_opt = maximize_constrained(n, pp, optimizer).best_value;
      ReportRow row{std::to_string(n) + "," + std::to_string(pp), {}, Provenance::optimization, std::nullopt};
      row.values = {{"N", static_cast<long long>(n)},
                    {"p", static_cast<long long>(pp)},
                    {"xy_energy", xy.energy},
                    {"e_min", analytic.e_min},
                    {"energy_diff", std::abs(xy.energy - analytic.e_min)},
                    {"c_inflated", c_inflated},
                    {"c_max", analytic.c_max},
                    {"inflated_diff", std::abs(c_inflated - analytic.c_max)},
                    {"c_optimized", c_opt},
                    {"optimized_diff", std::abs(c_opt - analytic.c_max)}};
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

Report cmd_n5(std::optional<double> theta) {
  Report report{"n5", Rounding::half_even, {}, {}, std::nullopt};
  if (theta) {
    const ThetaFamilyPoint pt = n5_theta_family(*theta);
    ReportRow row{"theta", {}, Provenance::analytic, std::nullopt};
    row.values = {{"theta", *theta}, {"concurrence", pt.concurrence}};
    report.rows.push_back(std::move(row));
    report.matrix = pair_rdm(pt.state, 0, 1);
  } else {
    const ThetaOptimum opt = n5_theta_opt();
    ReportRow row{"optimum", {}, Provenance::optimization, std::nullopt};
    row.values = {{"theta", opt.theta},
                  {"concurrence", opt.concurrence},
                  {"constrained_c_max", p_opt(5).c_max},
                  {"improvement", opt.concurrence - p_opt(5).c_max}};
    report.rows.push_back(std::move(row));
    report.matrix = pair_rdm(n5_theta_family(opt.theta).state, 0, 1);
  }
  return report;
}

Report cmd_rho(const std::string& target, std::optional<int> n, const std::string& path,
               const SolverOptions& solver) {
  Report report{"rho " + target, Rounding::half_even, {}, {}, std::nullopt};
  if (target == "cmax-limit") {
    const auto b = cmax_limit_rdm();
    report.matrix = b.to_matrix();
    report.rows.push_back(block_row("cmax-limit", b, Provenance::analytic));
  } else if (target == "afm-limit") {
    const auto b = afm_limit_rdm();
    report.matrix = b.to_matrix();
    report.rows.push_back(block_row("afm-limit", b, Provenance::reference));
    report.notes.push_back("built from C = 2 ln 2 - 1 and rotational invariance |z| + v = w");
  } else if (target == "afm") {
    if (!n) throw ValidationError("rho afm needs a ring size");
    const AfmResult afm = afm_concurrence(*n, solver);
    report.name = "rho afm " + std::to_string(*n);
    report.matrix = afm.rdm.to_matrix();
    report.rows.push_back(block_row("afm " + std::to_string(*n), afm.rdm, Provenance::diagonalization));
  } else if (target == "state") {
    const RingState state = read_state_file(path);
    const PairDensityMatrix rho = pair_rdm(state, 0, 1);
    report.name = "rho " + path;
    report.matrix = rho;
    report.rows.push_back(block_row(path, block_form(rho), Provenance::input));
  } else {
    throw ValidationError("unknown rho target '" + target +
                          "' (expected cmax-limit, afm-limit, afm, state)");
  }
  return report;
}

Report cmd_state_concurrence(const std::string& path, int site_a, int site_b) {
  const RingState state = read_state_file(path);
  const PairDensityMatrix rho = pair_rdm(state, site_a - 1, site_b - 1);
  Report report{"state-concurrence", Rounding::half_even, {}, {}, rho};
  ReportRow row{path, {}, Provenance::input, std::nullopt};
  const auto k = detect_momentum(state);
  row.values = {{"N", static_cast<long long>(state.spec().n_sites)},
                {"p", static_cast<long long>(state.spec().n_up)},
                {"momentum", k ? Cell(static_cast<long long>(*k)) : Cell(std::string("none"))},
                {"sites", std::to_string(site_a) + "-" + std::to_string(site_b)},
                {"concurrence", concurrence_general(rho)}};
  report.rows.push_back(std::move(row));
  return report;
}

bool VerifyResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

nlohmann::ordered_json VerifyResult::to_json() const {
  nlohmann::ordered_json doc;
  doc["suite"] = suite;
  doc["passed"] = passed();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["passed"] = c.passed;
    j["expected"] = c.expected;
    j["actual"] = c.actual;
    j["tolerance"] = c.tolerance;
    if (!c.detail.empty()) j["detail"] = c.detail;
    arr.push_back(std::move(j));
  }
  doc["checks"] = std::move(arr);
  return doc;
}

Report VerifyResult::to_report() const {
  Report report{"verify " + suite, Rounding::half_even, {}, {}, std::nullopt};
  for (const auto& c : checks) {
    ReportRow row{c.name, {}, Provenance::reference, std::nullopt};
    row.values = {{"status", std::string(c.passed ? "PASS" : "FAIL")},
                  {"expected", full_precision(c.expected)},
                  {"actual", full_precision(c.actual)},
                  {"tolerance", full_precision(c.tolerance)}};
    if (!c.detail.empty()) row.values.emplace_back("detail", c.detail);
    report.rows.push_back(std::move(row));
  }
  report.notes.push_back(std::string("suite ") + (passed() ? "passed" : "FAILED"));
  return report;
}

VerifyResult cmd_verify(const std::string& suite, const VerifyOptions& options) {
  VerifyResult result{suite, {}};
  auto& checks = result.checks;

  if (suite == "table1") {
    for (const auto& ref : reference_cmax_table()) {
      const OptimalFilling best = p_opt(ref.n);
      const bool p_ok = best.p == ref.p_opt;
      const bool c_ok = format_fixed(best.c_max, 3) == format_fixed(ref.c_max, 3);
      checks.push_back(make_check("N=" + std::to_string(ref.n), ref.c_max, best.c_max, 5e-4,
                                  p_ok && c_ok,
                                  "p_opt " + join_ints(best.p, ",") + " (expected " +
                                      join_ints(ref.p_opt, ",") + ")"));
    }
  } else if (suite == "table2") {
    for (const auto& ref : reference_afm_table()) {
      const AfmResult afm = afm_concurrence(ref.n, options.solver);
      const double e = -afm.energy_per_site;
      // The reference digits are truncated, not rounded.
      checks.push_back(make_check("N=" + std::to_string(ref.n) + " -E/N", ref.neg_energy_per_site,
                                  e, 1e-3,
                                  format_truncated(e, 3) == format_fixed(ref.neg_energy_per_site, 3),
                                  "truncated " + format_truncated(e, 3)));
      checks.push_back(make_check("N=" + std::to_string(ref.n) + " C_gs", ref.c_gs, afm.c_gs, 1e-3,
                                  format_truncated(afm.c_gs, 3) == format_fixed(ref.c_gs, 3),
                                  "truncated " + format_truncated(afm.c_gs, 3)));
    }
  } else if (suite == "oracle") {
    for (int n = 2; n <= options.n_max; ++n) {
      for (int p = 1; p <= n / 2; ++p) {
        const std::string tag = "(" + std::to_string(n) + "," + std::to_string(p) + ") ";
        const CmaxResult analytic = c_max(n, p);
        const XyGroundState xy = xy_ground_state(n - p, p, options.solver);
        checks.push_back(tolerance_check(tag + "xy energy", analytic.e_min, xy.energy, 1e-9));
        const double c_inflated = nearest_neighbor_concurrence(inflate(xy.state));
        checks.push_back(tolerance_check(tag + "inflated concurrence", analytic.c_max, c_inflated, 1e-9));
        const double c_opt = maximize_constrained(n, p, options.optimizer).best_value;
        checks.push_back(tolerance_check(tag + "optimizer", analytic.c_max, c_opt, 1e-6));
      }
    }
  } else if (suite == "balanced") {
    const BalancedBoundReport rep =
        balanced_bound_test(options.n, options.samples, options.seed, options.solver);
    const std::string offending = rep.offending_state ? rep.offending_state->dump() : "";
    checks.push_back(make_check("N=" + std::to_string(options.n) + " C <= C_gs", rep.c_gs,
                                rep.max_concurrence, 1e-9, rep.bound_violations == 0,
                                std::to_string(rep.bound_violations) + " violations of " +
                                    std::to_string(rep.samples) + (offending.empty() ? "" : "; " + offending)));
    checks.push_back(make_check("N=" + std::to_string(options.n) + " C(psi) <= C(psi0)", 0.0,
                                rep.worst_marshall_deficit, 1e-10, rep.marshall_violations == 0,
                                std::to_string(rep.marshall_violations) + " violations"));
  } else if (suite == "n5") {
    const ThetaOptimum opt = n5_theta_opt();
    checks.push_back(tolerance_check("theta*", 0.302, opt.theta, 2e-3));
    checks.push_back(tolerance_check("C*", 0.468, opt.concurrence, 5e-4));
    const double bound = p_opt(5).c_max;
    checks.push_back(make_check("C* > constrained c_max(5)", bound, opt.concurrence, 0.0,
                                opt.concurrence > bound));
  } else {
    throw ValidationError("unknown verify suite '" + suite +
                          "' (expected table1, table2, oracle, balanced, n5)");
  }
  return result;
}

}  // namespace ringent
