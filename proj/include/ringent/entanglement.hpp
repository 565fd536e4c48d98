#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>
#include <json.hpp>

#include "ringent/state_space.hpp"

namespace ringent {

using Matrix4c = Eigen::Matrix<std::complex<double>, 4, 4>;

/// Two-qubit density matrix in the fixed basis {uu, ud, du, dd}; the first
/// label is the first site of the pair.
struct PairDensityMatrix {
  Matrix4c entries = Matrix4c::Zero();

  /// Hermitian and unit trace within 1e-12, eigenvalues >= -1e-10.
  void validate() const;
};

/// Block form: diag(v, [[w, z], [conj z, x]], y).
struct BlockPairDensityMatrix {
  double v = 0.0;
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  std::complex<double> z = 0.0;

  void validate() const;
  PairDensityMatrix to_matrix() const;
};

/// Reduced density matrix of sites (site_a, site_b), 0-based.
PairDensityMatrix pair_rdm(const RingState& state, int site_a, int site_b);

/// Throws ShapeError naming the first off-block entry above 1e-10.
BlockPairDensityMatrix block_form(const PairDensityMatrix& rdm);

/// The four lambda values in descending order.
std::array<double, 4> wootters_lambdas(const PairDensityMatrix& rdm);

double concurrence_general(const PairDensityMatrix& rdm);
double concurrence_block(const BlockPairDensityMatrix& b);

/// 2 <phi| a+_{j+1} a_j |phi>, averaged over j.
double pseudo_concurrence(const RingState& d_state);

/// Nearest-neighbour concurrence of sites (1, 2).
double nearest_neighbor_concurrence(const RingState& state);

/// 4x4 nested array of [re, im] pairs.
nlohmann::json rdm_to_json(const PairDensityMatrix& rdm);
PairDensityMatrix rdm_from_json(const nlohmann::json& doc);

}  // namespace ringent
