#include <doctest.h>

#include <cmath>
#include <random>

#include "ringent/eigensolver.hpp"
#include "ringent/entanglement.hpp"
#include "ringent/errors.hpp"
#include "ringent/spin_models.hpp"
#include "ringent/state_space.hpp"
#include "support.hpp"

using namespace ringent;
using doctest::Approx;

namespace {

// sigma_i . sigma_j between full-space masks, written from the Pauli algebra.
Eigen::MatrixXd brute_heisenberg(const Sector& sector) {
  const int n = sector.n_sites();
  const auto dim = static_cast<Eigen::Index>(sector.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    const Mask s = sector.state(static_cast<std::size_t>(c)).bits;
    for (int i = 0; i < n; ++i) {
      const int j = (i + 1) % n;
      const int zi = ((s >> i) & 1U) ? 1 : -1;
      const int zj = ((s >> j) & 1U) ? 1 : -1;
      h(c, c) += zi * zj;  // sigma^z sigma^z
      if (zi != zj) {
        // sigma^x sigma^x + sigma^y sigma^y = 2 (s+ s- + s- s+)
        const Mask t = s ^ ((Mask{1} << i) | (Mask{1} << j));
        h(static_cast<Eigen::Index>(sector.index_of(t)), c) += 2.0;
      }
    }
  }
  return h;
}

}  // namespace

TEST_CASE("Heisenberg N=2 double-counts the single bond") {
  const auto h = build_heisenberg(2);
  REQUIRE(h.dim() == 2);
  const Eigen::MatrixXd d = h.to_dense();
  CHECK(d(0, 0) == -2.0);
  CHECK(d(0, 1) == 4.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d);
  CHECK(es.eigenvalues()(0) == Approx(-6.0));
  CHECK(es.eigenvalues()(1) == Approx(2.0));
}

TEST_CASE("Heisenberg matrices match the Pauli-algebra construction") {
  for (int n = 4; n <= 10; n += 2) {
    const auto h = build_heisenberg(n);
    CHECK((h.to_dense() - brute_heisenberg(h.sector())).norm() == 0.0);
    CHECK(h.is_symmetric());
    CHECK(h.model() == Model::heisenberg);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(build_heisenberg(4).to_dense());
  CHECK(es.eigenvalues()(0) == Approx(-8.0));
  CHECK_THROWS_AS(build_heisenberg(5), UnsupportedError);
  CHECK_THROWS_AS(build_heisenberg(0), UnsupportedError);
}

TEST_CASE("Heisenberg spectrum is invariant under a global spin flip") {
  const auto h = build_heisenberg(6);
  const Sector& s = h.sector();
  const Eigen::MatrixXd d = h.to_dense();
  const auto dim = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd flip = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Mask m = s.state(static_cast<std::size_t>(i)).bits ^ ((Mask{1} << 6) - 1);
    flip(static_cast<Eigen::Index>(s.index_of(m)), i) = 1.0;
  }
  const Eigen::MatrixXd flipped = flip * d * flip.transpose();
  CHECK((flipped - d).norm() < 1e-14);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> a(d);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> b(flipped);
  CHECK((a.eigenvalues() - b.eigenvalues()).norm() < 1e-12);
}

TEST_CASE("XY hopping matrix") {
  const auto h = build_xy(3, 1);
  const Eigen::MatrixXd d = h.to_dense();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) CHECK(d(i, j) == (i == j ? 0.0 : -1.0));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d);
  CHECK(es.eigenvalues()(0) == Approx(-2.0));

  for (int m = 2; m <= 9; ++m) {
    for (int p = 0; p <= m; ++p) {
      const auto x = build_xy(m, p);
      CHECK(x.is_symmetric());
      const Eigen::MatrixXd dx = x.to_dense();
      if (m > 1) CHECK(dx.diagonal().cwiseAbs().maxCoeff() == 0.0);
      // Each nonzero connects states differing by one adjacent hop.
      for (std::size_t r = 0; r < x.dim(); ++r) {
        for (std::size_t k = x.row_ptr()[r]; k < x.row_ptr()[r + 1]; ++k) {
          const Mask a = x.sector().state(r).bits;
          const Mask b = x.sector().state(x.cols()[k]).bits;
          const Mask diff = a ^ b;
          CHECK(testing::popcount(diff) == 2);
          const bool adjacent = (shift_mask(diff & a, m, 1) == (diff & b)) ||
                                (shift_mask(diff & b, m, 1) == (diff & a));
          CHECK(adjacent);
        }
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es5(build_xy(5, 2).to_dense());
  CHECK(es5.eigenvalues()(0) == Approx(-2.0 * std::sin(2 * M_PI / 5) / std::sin(M_PI / 5)));
  CHECK((build_xy(1, 1).to_dense().array() == -2.0).all());
}

TEST_CASE("SparseHamiltonian assembly") {
  auto sector = make_sector({3, 1, false});
  SparseHamiltonian h(sector, Model::xy, {{0, 1, 1.0}, {1, 0, 1.0}, {0, 1, 0.5}, {1, 0, 0.5}, {2, 2, 0.0}});
  CHECK(h.nonzeros() == 2);
  CHECK(h.entry(0, 1) == 1.5);
  CHECK(h.entry(2, 2) == 0.0);
  CHECK(h.is_symmetric());
  CHECK(h.to_coordinate_text() == "0 1 1.5\n1 0 1.5\n");
  Eigen::VectorXd x(3);
  x << 1.0, 2.0, 3.0;
  const Eigen::VectorXd y = h.apply(x);
  CHECK(y(0) == 3.0);
  CHECK(y(1) == 1.5);
  CHECK(y(2) == 0.0);
  SparseHamiltonian asym(sector, Model::xy, {{0, 1, 1.0}});
  CHECK_FALSE(asym.is_symmetric());
  CHECK_THROWS_AS(SparseHamiltonian(sector, Model::xy, {{0, 3, 1.0}}), ValidationError);
}

TEST_CASE("pair_energy") {
  CHECK(pair_energy({0.0, 0.5, 0.5, 0.0, -0.5}) == Approx(-3.0));
  CHECK(pair_energy({0.25, 0.25, 0.25, 0.25, 0.0}) == Approx(0.0));
  CHECK(pair_energy({0.102, 0.398, 0.398, 0.102, -0.295}) == Approx(-1.772));
  CHECK_THROWS_AS(pair_energy({0.1, 0.5, 0.3, 0.1, 0.0}), ValidationError);
}

TEST_CASE("energy per site equals the pair energy on balanced invariant states") {
  for (int n : {4, 6, 8, 10}) {
    const auto h = build_heisenberg(n);
    for (int k = 0; k < n; ++k) {
      const RingState s = random_balanced_state(n, k, 1000 + static_cast<std::uint64_t>(n * 31 + k));
      const double e = expectation(h, s) / n;
      for (int i = 0; i < n; ++i) {
        CHECK(std::abs(e - pair_energy(block_form(pair_rdm(s, i, (i + 1) % n)))) < 1e-10);
      }
    }
  }
  const RingState wrong = random_balanced_state(4, 0, 1);
  CHECK_THROWS_AS(expectation(build_heisenberg(6), wrong), ValidationError);
}
