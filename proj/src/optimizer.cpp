#include "ringent/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "ringent/entanglement.hpp"
#include "ringent/errors.hpp"

namespace ringent {

namespace {

// Orbit amplitudes are parameterized as x = u^2, which keeps them
// non-negative and smooths the sqrt(v y) kink at the constraint boundary.
struct Ascent {
  std::vector<double> u;
  double value = 0.0;
  int iterations = 0;
};

void normalize_squared(std::vector<double>& u,
                       const Eigen::VectorXd& period) {
  double q = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    q += period[static_cast<Eigen::Index>(i)] * u[i] * u[i] * u[i] * u[i];
  }
  const double scale = 1.0 / std::sqrt(std::sqrt(q));
  for (double& ui : u) ui *= scale;
}

std::vector<double> squares(const std::vector<double>& u) {
  std::vector<double> x(u.size());
  std::transform(u.begin(), u.end(), x.begin(), [](double a) { return a * a; });
  return x;
}

Ascent ascend(const OrbitPairObjective& obj, const Eigen::VectorXd& period,
              std::vector<double> u, const OptimizerOptions& opt) {
  const std::size_t dim = u.size();
  normalize_squared(u, period);
  Ascent out{u, obj.value(squares(u)), 0};
  if (dim == 1) return out;

  std::vector<double> grad_x(dim);
  std::vector<double> grad_u(dim);
  std::vector<double> trial(dim);
  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(opt.max_iterations) + 1);
  history.push_back(out.value);
  double step = 0.1;

  for (int it = 0; it < opt.max_iterations; ++it) {
    ++out.iterations;
    obj.value_and_gradient(squares(out.u), grad_x);
    double gnorm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      grad_u[i] = 2.0 * out.u[i] * grad_x[i];
      gnorm += grad_u[i] * grad_u[i];
    }
    if (std::sqrt(gnorm) < 1e-15) break;

    for (std::size_t i = 0; i < dim; ++i) trial[i] = out.u[i] + step * grad_u[i];
    normalize_squared(trial, period);
    const double f = obj.value(squares(trial));
    if (f > out.value) {
      out.u = trial;
      out.value = f;
      step = std::min(step * 1.5, 1e3);
    } else {
      step *= 0.5;
    }
    history.push_back(out.value);
    const auto w = static_cast<std::size_t>(opt.stall_window);
    if (history.size() > w && out.value - history[history.size() - 1 - w] < opt.stall_tolerance) {
      break;
    }
  }
  return out;
}

OptimizationRun multistart(const RingSpec& spec, const OptimizerOptions& opt) {
  auto sector = make_sector(spec);
  const OrbitPairObjective obj(sector);
  const std::size_t dim = obj.dimension();
  Eigen::VectorXd period(static_cast<Eigen::Index>(dim));
  for (std::size_t o = 0; o < dim; ++o) {
    period[static_cast<Eigen::Index>(o)] = sector->orbits().orbits[o].period;
  }

  std::vector<double> values;
  Ascent best;
  best.value = -std::numeric_limits<double>::infinity();
  int best_restart = 0;
  int total_iterations = 0;
  const int restarts = std::max(opt.restarts, 1);
  for (int r = 0; r < restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> uni(0.1, 1.0);
    std::vector<double> u(dim);
    for (double& ui : u) ui = uni(rng);
    Ascent a = ascend(obj, period, std::move(u), opt);
    total_iterations += a.iterations;
    values.push_back(std::max(a.value, 0.0));
    if (a.value > best.value) {
      best = std::move(a);
      best_restart = r;
    }
  }

  std::vector<double> x = squares(best.u);
  RingState state = obj.state(x);
  const double recomputed = nearest_neighbor_concurrence(state);
  const double amp_norm = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
  for (double& xi : x) xi /= amp_norm;
  return OptimizationRun{spec,          std::move(x), recomputed,   std::move(state),
                         total_iterations, restarts,  opt.seed,     best_restart,
                         std::move(values)};
}

}  // namespace

OrbitPairObjective::OrbitPairObjective(std::shared_ptr<const Sector> sector)
    : sector_(std::move(sector)) {
  const auto& table = sector_->orbits();
  const auto dim = static_cast<Eigen::Index>(table.orbits.size());
  hop_ = Eigen::MatrixXd::Zero(dim, dim);
  up_up_ = Eigen::VectorXd::Zero(dim);
  dn_dn_ = Eigen::VectorXd::Zero(dim);
  period_.resize(dim);
  for (Eigen::Index o = 0; o < dim; ++o) {
    period_[o] = table.orbits[static_cast<std::size_t>(o)].period;
  }
  const int n = sector_->n_sites();
  if (n < 2) throw ValidationError("pair objective needs at least two sites");
  for (const auto& s : sector_->states()) {
    const bool up0 = s.bits & 1U;
    const bool up1 = (s.bits >> 1) & 1U;
    const auto o = static_cast<Eigen::Index>(table.locate(s).orbit);
    if (up0 && up1) up_up_[o] += 1.0;
    if (!up0 && !up1) dn_dn_[o] += 1.0;
    if (up0 && !up1) {
      const Mask t = s.bits ^ Mask{3};
      if (sector_->find(t)) {
        const auto ot = static_cast<Eigen::Index>(table.locate({t, n}).orbit);
        hop_(o, ot) += 0.5;
        hop_(ot, o) += 0.5;
      }
    }
  }
}

double OrbitPairObjective::value(std::span<const double> x) const {
  const Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
  const double q = period_.dot(xv.cwiseAbs2());
  const double a = xv.dot(hop_ * xv);
  const double bv = up_up_.dot(xv.cwiseAbs2());
  const double by = dn_dn_.dot(xv.cwiseAbs2());
  return 2.0 * (a - std::sqrt(std::max(bv * by, 0.0))) / q;
}

double OrbitPairObjective::value_and_gradient(std::span<const double> x,
                                              std::span<double> grad) const {
  const auto dim = static_cast<Eigen::Index>(x.size());
  const Eigen::Map<const Eigen::VectorXd> xv(x.data(), dim);
  Eigen::Map<Eigen::VectorXd> g(grad.data(), dim);
  const Eigen::VectorXd x2 = xv.cwiseAbs2();
  const double q = period_.dot(x2);
  const Eigen::VectorXd hx = hop_ * xv;
  const double a = xv.dot(hx);
  const double bv = up_up_.dot(x2);
  const double by = dn_dn_.dot(x2);
  const double root = std::sqrt(std::max(bv * by, 0.0));

  Eigen::VectorXd d_root = Eigen::VectorXd::Zero(dim);
  if (root > 0.0) {
    d_root = (by * 2.0 * up_up_.cwiseProduct(xv) + bv * 2.0 * dn_dn_.cwiseProduct(xv)) /
             (2.0 * root);
  }
  const Eigen::VectorXd d_q = 2.0 * period_.cwiseProduct(xv);
  g = 2.0 * ((2.0 * hx - d_root) * q - (a - root) * d_q) / (q * q);
  return 2.0 * (a - root) / q;
}

RingState OrbitPairObjective::state(std::span<const double> x) const {
  OrbitState os{sector_, std::vector<Complex>(x.begin(), x.end()), 0};
  return expand(os);
}

OptimizationRun maximize_constrained(int n, int p, const OptimizerOptions& options) {
  const RingSpec spec{n, p, true};
  spec.validate();
  if (!spec.feasible()) {
    throw EmptySectorError("no constrained states with p=" + std::to_string(p) + " on N=" +
                           std::to_string(n));
  }
  return multistart(spec, options);
}

OptimizationRun maximize_sector_unconstrained(int n, int p, const OptimizerOptions& options) {
  const RingSpec spec{n, p, false};
  spec.validate();
  return multistart(spec, options);
}

nlohmann::json run_to_json(const OptimizationRun& run) {
  nlohmann::json doc;
  doc["spec"] = {{"n", run.spec.n_sites},
                 {"p", run.spec.n_up},
                 {"constraint", run.spec.forbid_adjacent_up ? "no-adjacent-up" : "none"}};
  doc["seed"] = run.seed;
  doc["restarts"] = run.restarts;
  doc["iterations"] = run.iterations;
  doc["best_restart"] = run.best_restart;
  doc["best_value"] = run.best_value;
  doc["orbit_amplitudes"] = run.orbit_amplitudes;
  doc["best_state"] = state_to_json(run.best_state);
  return doc;
}

ThetaFamilyPoint n5_theta_family(double theta) {
  auto sector = make_sector({5, 2, false});
  const auto& table = sector->orbits();
  OrbitState os{sector, std::vector<Complex>(table.orbits.size(), 0.0), 0};
  os.orbit_amplitudes[table.locate(from_bitstring("11000")).orbit] = std::sin(theta);
  os.orbit_amplitudes[table.locate(from_bitstring("10100")).orbit] = std::cos(theta);
  RingState state = expand(os);
  const double c = nearest_neighbor_concurrence(state);
  return {c, std::move(state)};
}

ThetaOptimum n5_theta_opt() {
  constexpr int kGrid = 1000;
  const double hi = std::numbers::pi / 2.0;
  auto f = [](double t) { return n5_theta_family(t).concurrence; };
  int best = 0;
  double best_c = -1.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double c = f(hi * i / kGrid);
    if (c > best_c) {
      best_c = c;
      best = i;
    }
  }
  double a = hi * std::max(best - 1, 0) / kGrid;
  double b = hi * std::min(best + 1, kGrid) / kGrid;
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c1 = b - ratio * (b - a);
  double c2 = a + ratio * (b - a);
  double f1 = f(c1);
  double f2 = f(c2);
  while (b - a > 1e-10) {
    if (f1 > f2) {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - ratio * (b - a);
      f1 = f(c1);
    } else {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + ratio * (b - a);
      f2 = f(c2);
    }
  }
  const double theta = 0.5 * (a + b);
  return {theta, f(theta)};
}

BalancedBoundReport balanced_bound_test(int n, int samples, std::uint64_t seed,
                                        const SolverOptions& solver) {
  if (n < 2 || n % 2 != 0) {
    throw ValidationError("balanced bound test needs an even ring, got N=" + std::to_string(n));
  }
  BalancedBoundReport rep;
  rep.n = n;
  rep.samples = samples;
  rep.seed = seed;
  rep.c_gs = afm_concurrence(n, solver).c_gs;
  rep.worst_marshall_deficit = -std::numeric_limits<double>::infinity();

  for (int i = 0; i < samples; ++i) {
    const std::uint64_t sample_seed = seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(i + 1);
    const RingState psi = random_balanced_state(n, i % n, sample_seed);
    const double c = nearest_neighbor_concurrence(psi);
    const double c0 = nearest_neighbor_concurrence(apply_marshall_signs(psi));
    rep.max_concurrence = std::max(rep.max_concurrence, c);
    rep.max_marshall_concurrence = std::max(rep.max_marshall_concurrence, c0);
    rep.worst_marshall_deficit = std::max(rep.worst_marshall_deficit, c - c0);
    const bool bound_bad = c > rep.c_gs + 1e-9 || c0 > rep.c_gs + 1e-9;
    const bool marshall_bad = c > c0 + 1e-10;
    if (bound_bad) ++rep.bound_violations;
    if (marshall_bad) ++rep.marshall_violations;
    if ((bound_bad || marshall_bad) && !rep.offending_state) {
      rep.offending_state = state_to_json(psi);
    }
  }
  return rep;
}

}  // namespace ringent
