#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ringent/basis.hpp"
#include "ringent/entanglement.hpp"

namespace ringent {

enum class Model { heisenberg, xy };

const char* to_string(Model m);

struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

/// Real symmetric operator restricted to one sector, stored row-compressed
/// with columns sorted inside each row.
class SparseHamiltonian {
 public:
  /// Duplicate (row, col) triplets are accumulated; exact zeros dropped.
  SparseHamiltonian(std::shared_ptr<const Sector> sector, Model model,
                    std::vector<Triplet> triplets);

  std::size_t dim() const noexcept { return row_ptr_.size() - 1; }
  Model model() const noexcept { return model_; }
  const RingSpec& spec() const noexcept { return sector_->spec(); }
  const Sector& sector() const noexcept { return *sector_; }
  const std::shared_ptr<const Sector>& sector_ptr() const noexcept { return sector_; }

  std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const std::size_t> cols() const noexcept { return cols_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t nonzeros() const noexcept { return values_.size(); }

  /// y = H x. Pure; safe to call concurrently with distinct outputs.
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

  double entry(std::size_t row, std::size_t col) const;
  bool is_symmetric(double tol = 0.0) const;
  Eigen::MatrixXd to_dense() const;

  /// "row col value" per line, 0-based indices into the sector basis.
  std::string to_coordinate_text() const;

 private:
  std::shared_ptr<const Sector> sector_;
  Model model_;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> cols_;
  std::vector<double> values_;
};

/// sum_i sigma_i . sigma_{i+1} on the Sz = 0 sector of an even ring. For N = 2
/// the sum visits the single pair twice.
SparseHamiltonian build_heisenberg(int n);

/// -sum_j (a+_j a_{j+1} + a+_{j+1} a_j) on the p-up sector of an M-site ring.
SparseHamiltonian build_xy(int m_sites, int n_up);

/// Energy per site 4(v + Re z) - 1 of a balanced (w = x) pair matrix.
double pair_energy(const BlockPairDensityMatrix& block);

/// <psi|H|psi> for a state on the operator's sector.
double expectation(const SparseHamiltonian& h, const RingState& state);

}  // namespace ringent
