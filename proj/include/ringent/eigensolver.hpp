#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "ringent/entanglement.hpp"
#include "ringent/spin_models.hpp"

namespace ringent {

enum class SolverMethod { automatic, dense, lanczos };

const char* to_string(SolverMethod m);

struct SolverOptions {
  std::size_t dense_threshold = 4096;  // dense path for dim <= threshold
  int max_iterations = 50;             // Lanczos restarts
  int krylov_cap = 500;                // Krylov vectors per restart
  double tolerance = 1e-10;            // residual norm ||H x - E x||
  std::uint64_t seed = 0x5eed;         // start vector
  bool detect_degeneracy = true;
  SolverMethod method = SolverMethod::automatic;
};

struct GroundStateResult {
  double energy = 0.0;
  Eigen::VectorXd vector;
  double residual_norm = 0.0;
  SolverMethod method = SolverMethod::dense;
  bool degenerate = false;
  std::optional<double> gap;  // E1 - E0 when computed
  int iterations = 0;         // matrix-vector products (Lanczos)
};

/// Lowest eigenpair. The vector's sign is fixed so that its first
/// component above 1e-8 in magnitude is positive.
GroundStateResult ground_state(const SparseHamiltonian& h, const SolverOptions& options = {});

struct AfmResult {
  int n = 0;
  double energy_per_site = 0.0;
  double c_gs = 0.0;
  BlockPairDensityMatrix rdm;
  GroundStateResult ground;
};

/// Heisenberg ring ground state and its nearest-neighbour concurrence.
/// Cross-checks the direct concurrence against max{-(E/N + 1)/2, 0}.
AfmResult afm_concurrence(int n, const SolverOptions& options = {});

/// The ground vector as a RingState on the operator's sector.
RingState to_ring_state(const SparseHamiltonian& h, const Eigen::VectorXd& v);

struct XyGroundState {
  double energy = 0.0;
  RingState state;
};

/// Ground state of the XY hopping ring with p up-spins. Hopping has
/// non-positive matrix elements, so the ground vector is non-negative;
/// components below -1e-10 are reported as a ValidationError.
XyGroundState xy_ground_state(int m_sites, int n_up, const SolverOptions& options = {});

}  // namespace ringent
