#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's own partial trace or concurrence code.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "ringent/state_space.hpp"

namespace testing {

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix<Complex, 4, 4>;

inline int popcount(std::uint64_t x) { return __builtin_popcountll(x); }

inline bool cyclic_adjacent(std::uint64_t bits, int n) {
  for (int i = 0; i < n; ++i) {
    if (((bits >> i) & 1U) && ((bits >> ((i + 1) % n)) & 1U)) return true;
  }
  return false;
}

// Amplitudes over the full 2^N space, indexed by mask.
inline Eigen::VectorXcd full_vector(const ringent::RingState& s) {
  const int n = s.spec().n_sites;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(std::int64_t{1} << n);
  for (std::size_t i = 0; i < s.size(); ++i) {
    v(static_cast<std::int64_t>(s.sector().state(i).bits)) = s.amplitudes()(static_cast<Eigen::Index>(i));
  }
  return v;
}

// Pair index in the {uu, ud, du, dd} basis.
inline int pair_index(std::uint64_t mask, int a, int b) {
  return (((mask >> a) & 1U) ? 0 : 2) + (((mask >> b) & 1U) ? 0 : 1);
}

// rho_{ij} = sum over the rest of psi(i, rest) conj(psi(j, rest)), by looping
// over every pair of full-space masks that agree away from (a, b).
inline Matrix4c brute_pair_rdm(const ringent::RingState& s, int a, int b) {
  const int n = s.spec().n_sites;
  const Eigen::VectorXcd v = full_vector(s);
  const std::uint64_t pair_bits = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
  Matrix4c rho = Matrix4c::Zero();
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t m1 = 0; m1 < dim; ++m1) {
    if (v(static_cast<Eigen::Index>(m1)) == Complex(0.0)) continue;
    for (std::uint64_t m2 = 0; m2 < dim; ++m2) {
      if ((m1 & ~pair_bits) != (m2 & ~pair_bits)) continue;
      rho(pair_index(m1, a, b), pair_index(m2, a, b)) +=
          v(static_cast<Eigen::Index>(m1)) * std::conj(v(static_cast<Eigen::Index>(m2)));
    }
  }
  return rho;
}

// Textbook route: square roots of the eigenvalues of rho * rho~ from a
// general complex eigensolver. Fine for well-conditioned test inputs.
inline double textbook_concurrence(const Matrix4c& rho) {
  Matrix4c yy = Matrix4c::Zero();
  yy(0, 3) = -1.0;
  yy(3, 0) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  const Matrix4c tilde = yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Matrix4c> es(rho * tilde);
  std::vector<double> lam;
  for (int i = 0; i < 4; ++i) lam.push_back(std::sqrt(std::max(es.eigenvalues()(i).real(), 0.0)));
  std::sort(lam.rbegin(), lam.rend());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

inline Eigen::Matrix2cd random_unitary2(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Matrix2cd a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::Matrix2cd> qr(a);
  return qr.householderQ();
}

inline Matrix4c random_density_matrix(std::mt19937_64& rng, int rank = 4) {
  std::normal_distribution<double> g;
  Eigen::Matrix<Complex, 4, Eigen::Dynamic> a(4, rank);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < rank; ++j) a(i, j) = Complex(g(rng), g(rng));
  Matrix4c rho = a * a.adjoint();
  return rho / rho.trace().real();
}

}  // namespace testing
