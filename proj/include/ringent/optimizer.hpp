#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "ringent/eigensolver.hpp"
#include "ringent/state_space.hpp"

namespace ringent {

struct OptimizerOptions {
  int restarts = 32;
  int max_iterations = 5000;      // per restart
  double stall_tolerance = 1e-12; // stop when the objective gains less than
  int stall_window = 50;          // this much over this many iterations
  std::uint64_t seed = 20020101;
};

/// Nearest-neighbour concurrence of a k = 0 state with real non-negative
/// orbit amplitudes x, as the closed form 2(z - sqrt(v y)) of quadratic
/// forms in x. Negative values are returned unclamped.
class OrbitPairObjective {
 public:
  explicit OrbitPairObjective(std::shared_ptr<const Sector> sector);

  std::size_t dimension() const noexcept { return period_.size(); }
  const Sector& sector() const noexcept { return *sector_; }

  double value(std::span<const double> x) const;
  /// Gradient with respect to x.
  double value_and_gradient(std::span<const double> x, std::span<double> grad) const;

  RingState state(std::span<const double> x) const;

 private:
  std::shared_ptr<const Sector> sector_;
  Eigen::MatrixXd hop_;    // symmetrized: z = x^T hop x / q
  Eigen::VectorXd up_up_;  // v = sum up_up x^2 / q
  Eigen::VectorXd dn_dn_;  // y = sum dn_dn x^2 / q
  Eigen::VectorXd period_; // q = sum period x^2
};

struct OptimizationRun {
  RingSpec spec;
  std::vector<double> orbit_amplitudes;  // unit norm, k = 0
  double best_value = 0.0;
  RingState best_state;
  int iterations = 0;  // summed over restarts
  int restarts = 0;
  std::uint64_t seed = 0;
  int best_restart = 0;
  std::vector<double> restart_values;
};

/// Multistart ascent over constrained (no adjacent ups) k = 0 states.
OptimizationRun maximize_constrained(int n, int p, const OptimizerOptions& options = {});

/// Same engine over the full p-up sector.
OptimizationRun maximize_sector_unconstrained(int n, int p, const OptimizerOptions& options = {});

nlohmann::json run_to_json(const OptimizationRun& run);

struct ThetaFamilyPoint {
  double concurrence = 0.0;
  RingState state;
};

/// sin(theta) on the orbit of 11000 plus cos(theta) on the orbit of 10100.
ThetaFamilyPoint n5_theta_family(double theta);

struct ThetaOptimum {
  double theta = 0.0;
  double concurrence = 0.0;
};

/// Grid scan over [0, pi/2] refined by golden-section search.
ThetaOptimum n5_theta_opt();

struct BalancedBoundReport {
  int n = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  double c_gs = 0.0;
  double max_concurrence = 0.0;
  double max_marshall_concurrence = 0.0;
  double worst_marshall_deficit = 0.0;  // max over samples of C(psi) - C(psi0)
  int bound_violations = 0;
  int marshall_violations = 0;
  std::optional<nlohmann::json> offending_state;

  bool passed() const { return bound_violations == 0 && marshall_violations == 0; }
};

/// Random balanced states over all momentum sectors against C_gs(n).
BalancedBoundReport balanced_bound_test(int n, int samples, std::uint64_t seed,
                                        const SolverOptions& solver = {});

}  // namespace ringent
