#include "ringent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ringent/errors.hpp"

namespace ringent {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kBlockZero = 1e-10;
constexpr double kRangeSlack = 1e-9;

constexpr const char* kLabels[4] = {"uu", "ud", "du", "dd"};

// Pair basis index: 0 = uu, 1 = ud, 2 = du, 3 = dd.
int pair_index(bool first_up, bool second_up) {
  return (first_up ? 0 : 2) + (second_up ? 0 : 1);
}

}  // namespace

void PairDensityMatrix::validate() const {
  const double herm = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTol) {
    throw ValidationError("density matrix is not Hermitian (deviation " +
                          std::to_string(herm) + ")");
  }
  const std::complex<double> tr = entries.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw ValidationError("density matrix trace " + std::to_string(tr.real()) + " is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(entries, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol) {
    throw ValidationError("density matrix has eigenvalue " +
                          std::to_string(es.eigenvalues().minCoeff()));
  }
}

void BlockPairDensityMatrix::validate() const {
  for (double d : {v, w, x, y}) {
    if (d < -kPsdTol) throw ValidationError("negative diagonal entry in block form");
  }
  if (std::abs(v + w + x + y - 1.0) > kTraceTol) {
    throw ValidationError("block form trace differs from 1");
  }
  if (std::norm(z) > w * x + 1e-12) {
    throw ValidationError("|z|^2 exceeds w*x; central block is not PSD");
  }
}

PairDensityMatrix BlockPairDensityMatrix::to_matrix() const {
  PairDensityMatrix m;
  m.entries(0, 0) = v;
  m.entries(1, 1) = w;
  m.entries(2, 2) = x;
  m.entries(3, 3) = y;
  m.entries(1, 2) = z;
  m.entries(2, 1) = std::conj(z);
  return m;
}

PairDensityMatrix pair_rdm(const RingState& state, int site_a, int site_b) {
  const int n = state.spec().n_sites;
  if (site_a < 0 || site_a >= n || site_b < 0 || site_b >= n) {
    throw std::out_of_range("pair sites (" + std::to_string(site_a + 1) + ", " +
                            std::to_string(site_b + 1) + ") outside a ring of " +
                            std::to_string(n));
  }
  if (site_a == site_b) throw ValidationError("pair sites must differ");

  const Mask bit_a = Mask{1} << site_a;
  const Mask bit_b = Mask{1} << site_b;
  const Sector& sector = state.sector();

  // The reduced matrix is a sum of outer products of the 4-component
  // "slices" of the state that share the same configuration elsewhere.
  std::unordered_map<Mask, std::array<std::complex<double>, 4>> slices;
  slices.reserve(sector.size());
  for (std::size_t i = 0; i < sector.size(); ++i) {
    const Mask s = sector.state(i).bits;
    const Mask rest = s & ~(bit_a | bit_b);
    auto& slice = slices[rest];
    slice[static_cast<std::size_t>(pair_index(s & bit_a, s & bit_b))] =
        state.amplitudes()[static_cast<Eigen::Index>(i)];
  }

  PairDensityMatrix out;
  for (const auto& [rest, phi] : slices) {
    for (int r = 0; r < 4; ++r) {
      if (phi[static_cast<std::size_t>(r)] == 0.0) continue;
      for (int c = 0; c < 4; ++c) {
        out.entries(r, c) += phi[static_cast<std::size_t>(r)] * std::conj(phi[static_cast<std::size_t>(c)]);
      }
    }
  }
  return out;
}

BlockPairDensityMatrix block_form(const PairDensityMatrix& rdm) {
  static constexpr std::array<std::pair<int, int>, 5> off_block = {
      {{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}}};
  for (auto [r, c] : off_block) {
    for (auto [i, j] : {std::pair{r, c}, std::pair{c, r}}) {
      const double mag = std::abs(rdm.entries(i, j));
      if (mag >= kBlockZero) {
        throw ShapeError(std::string("density matrix is not block diagonal: entry (") +
                         kLabels[i] + ", " + kLabels[j] + ") = " + std::to_string(mag));
      }
    }
  }
  auto diag = [&](int i) {
    const double d = rdm.entries(i, i).real();
    return (d < 0.0 && d >= -kPsdTol) ? 0.0 : d;
  };
  return {diag(0), diag(1), diag(2), diag(3), rdm.entries(1, 2)};
}

std::array<double, 4> wootters_lambdas(const PairDensityMatrix& rdm) {
  // With rho = K K^dagger the lambdas are the singular values of K^T Y K,
  // Y = sigma_y (x) sigma_y. Singular values keep absolute accuracy for the
  // small lambdas, unlike square roots of eigenvalues of rho * rho~.
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(rdm.entries);
  Eigen::Vector4d mu = es.eigenvalues();
  for (int i = 0; i < 4; ++i) {
    if (mu[i] < -kPsdTol) {
      throw ValidationError("density matrix has eigenvalue " + std::to_string(mu[i]));
    }
    mu[i] = std::sqrt(std::max(mu[i], 0.0));
  }
  const Matrix4c k = es.eigenvectors() * mu.asDiagonal();

  Matrix4c y = Matrix4c::Zero();
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;

  const Matrix4c s = k.transpose() * y * k;
  Eigen::JacobiSVD<Matrix4c> svd(s);
  const Eigen::Vector4d sv = svd.singularValues();
  std::array<double, 4> out{sv[0], sv[1], sv[2], sv[3]};
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double concurrence_general(const PairDensityMatrix& rdm) {
  rdm.validate();
  const auto l = wootters_lambdas(rdm);
  const double raw = l[0] - l[1] - l[2] - l[3];
  if (raw > 1.0 + kRangeSlack) {
    throw ValidationError("concurrence " + std::to_string(raw) + " exceeds 1");
  }
  return std::clamp(raw, 0.0, 1.0);
}

double concurrence_block(const BlockPairDensityMatrix& b) {
  return 2.0 * std::max(std::abs(b.z) - std::sqrt(std::max(b.v * b.y, 0.0)), 0.0);
}

double pseudo_concurrence(const RingState& d_state) {
  for (const auto& a : d_state.amplitudes()) {
    if (std::abs(a.imag()) > 1e-12) {
      throw ValidationError("pseudo-concurrence is defined for real amplitudes");
    }
  }
  const int m = d_state.spec().n_sites;
  if (m < 2 || d_state.spec().n_up == 0) return 0.0;

  const Sector& sector = d_state.sector();
  double lo = 0.0;
  double hi = 0.0;
  double sum = 0.0;
  for (int j = 0; j < m; ++j) {
    const Mask from = Mask{1} << j;
    const Mask to = Mask{1} << ((j + 1) % m);
    double hop = 0.0;
    for (std::size_t i = 0; i < sector.size(); ++i) {
      const Mask s = sector.state(i).bits;
      if ((s & from) && !(s & to)) {
        const Mask t = (s & ~from) | to;
        hop += d_state.amplitude(t).real() * d_state.amplitudes()[static_cast<Eigen::Index>(i)].real();
      }
    }
    const double value = 2.0 * hop;
    if (j == 0) lo = hi = value;
    lo = std::min(lo, value);
    hi = std::max(hi, value);
    sum += value;
  }
  if (hi - lo > 1e-10) {
    throw ValidationError("pseudo-concurrence varies across bonds; state is not translationally invariant");
  }
  return sum / m;
}

double nearest_neighbor_concurrence(const RingState& state) {
  return concurrence_general(pair_rdm(state, 0, 1));
}

nlohmann::json rdm_to_json(const PairDensityMatrix& rdm) {
  auto rows = nlohmann::json::array();
  for (int r = 0; r < 4; ++r) {
    auto row = nlohmann::json::array();
    for (int c = 0; c < 4; ++c) {
      row.push_back({rdm.entries(r, c).real(), rdm.entries(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

PairDensityMatrix rdm_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_array() || doc.size() != 4) throw ValidationError("expected 4 rows");
    PairDensityMatrix out;
    for (int r = 0; r < 4; ++r) {
      const auto& row = doc.at(static_cast<std::size_t>(r));
      if (!row.is_array() || row.size() != 4) throw ValidationError("expected 4 columns");
      for (int c = 0; c < 4; ++c) {
        const auto& cell = row.at(static_cast<std::size_t>(c));
        out.entries(r, c) = {cell.at(0).get<double>(), cell.at(1).get<double>()};
      }
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed density matrix: ") + e.what());
  }
}

}  // namespace ringent
