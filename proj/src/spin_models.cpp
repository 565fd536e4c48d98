#include "ringent/spin_models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ringent/errors.hpp"

namespace ringent {

const char* to_string(Model m) {
  switch (m) {
    case Model::heisenberg:
      return "heisenberg";
    case Model::xy:
      return "xy";
  }
  return "unknown";
}

SparseHamiltonian::SparseHamiltonian(std::shared_ptr<const Sector> sector, Model model,
                                     std::vector<Triplet> triplets)
    : sector_(std::move(sector)), model_(model) {
  const std::size_t n = sector_->size();
  for (const auto& t : triplets) {
    if (t.row >= n || t.col >= n) throw ValidationError("triplet index outside the sector");
  }
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  row_ptr_.assign(n + 1, 0);
  cols_.reserve(triplets.size());
  values_.reserve(triplets.size());
  std::size_t i = 0;
  for (std::size_t r = 0; r < n; ++r) {
    row_ptr_[r] = cols_.size();
    while (i < triplets.size() && triplets[i].row == r) {
      const std::size_t c = triplets[i].col;
      double acc = 0.0;
      while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c) {
        acc += triplets[i].value;
        ++i;
      }
      if (acc != 0.0) {
        cols_.push_back(c);
        values_.push_back(acc);
      }
    }
  }
  row_ptr_[n] = cols_.size();
}

void SparseHamiltonian::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
  const std::size_t n = dim();
  y.resize(static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    double acc = 0.0;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      acc += values_[k] * x[static_cast<Eigen::Index>(cols_[k])];
    }
    y[static_cast<Eigen::Index>(r)] = acc;
  }
}

Eigen::VectorXd SparseHamiltonian::apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y;
  apply(x, y);
  return y;
}

double SparseHamiltonian::entry(std::size_t row, std::size_t col) const {
  const auto begin = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_.at(row));
  const auto end = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_.at(row + 1));
  auto it = std::lower_bound(begin, end, col);
  if (it == end || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(it - cols_.begin())];
}

bool SparseHamiltonian::is_symmetric(double tol) const {
  for (std::size_t r = 0; r < dim(); ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      if (std::abs(entry(cols_[k], r) - values_[k]) > tol) return false;
    }
  }
  return true;
}

Eigen::MatrixXd SparseHamiltonian::to_dense() const {
  const auto n = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t r = 0; r < dim(); ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cols_[k])) = values_[k];
    }
  }
  return m;
}

std::string SparseHamiltonian::to_coordinate_text() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t r = 0; r < dim(); ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      os << r << ' ' << cols_[k] << ' ' << values_[k] << '\n';
    }
  }
  return os.str();
}

SparseHamiltonian build_heisenberg(int n) {
  if (n < 2 || n % 2 != 0) {
    throw UnsupportedError("the Heisenberg ring is supported for even N only, got N=" +
                           std::to_string(n));
  }
  auto sector = std::make_shared<const Sector>(RingSpec{n, n / 2, false});
  std::vector<Triplet> triplets;
  triplets.reserve(sector->size() * static_cast<std::size_t>(n + 1));
  for (std::size_t r = 0; r < sector->size(); ++r) {
    const Mask s = sector->state(r).bits;
    double diag = 0.0;
    for (int i = 0; i < n; ++i) {
      const int j = (i + 1) % n;
      const bool up_i = (s >> i) & 1U;
      const bool up_j = (s >> j) & 1U;
      if (up_i == up_j) {
        diag += 1.0;
      } else {
        diag -= 1.0;
        const Mask flipped = s ^ ((Mask{1} << i) | (Mask{1} << j));
        triplets.push_back({r, sector->index_of(flipped), 2.0});
      }
    }
    triplets.push_back({r, r, diag});
  }
  return SparseHamiltonian(std::move(sector), Model::heisenberg, std::move(triplets));
}

SparseHamiltonian build_xy(int m_sites, int n_up) {
  auto sector = std::make_shared<const Sector>(RingSpec{m_sites, n_up, false});
  std::vector<Triplet> triplets;
  triplets.reserve(sector->size() * static_cast<std::size_t>(2 * m_sites));
  for (std::size_t r = 0; r < sector->size(); ++r) {
    const Mask s = sector->state(r).bits;
    for (int j = 0; j < m_sites; ++j) {
      const int k = (j + 1) % m_sites;
      if (j == k) {
        // One-site ring: the bond closes on itself and both hops reduce to
        // the number operator.
        if ((s >> j) & 1U) triplets.push_back({r, r, -2.0});
        continue;
      }
      const bool up_j = (s >> j) & 1U;
      const bool up_k = (s >> k) & 1U;
      if (up_j != up_k) {
        const Mask hopped = s ^ ((Mask{1} << j) | (Mask{1} << k));
        triplets.push_back({r, sector->index_of(hopped), -1.0});
      }
    }
  }
  return SparseHamiltonian(std::move(sector), Model::xy, std::move(triplets));
}

double pair_energy(const BlockPairDensityMatrix& block) {
  if (std::abs(block.w - block.x) > 1e-10) {
    throw ValidationError("pair energy needs a balanced pair matrix (w = x)");
  }
  return 4.0 * (block.v + block.z.real()) - 1.0;
}

double expectation(const SparseHamiltonian& h, const RingState& state) {
  if (state.spec() != h.spec()) throw ValidationError("state and operator sectors differ");
  const Eigen::VectorXd re = state.amplitudes().real();
  const Eigen::VectorXd im = state.amplitudes().imag();
  return re.dot(h.apply(re)) + im.dot(h.apply(im));
}

}  // namespace ringent
