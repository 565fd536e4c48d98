#include "ringent/eigensolver.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ringent/errors.hpp"

namespace ringent {

namespace {

constexpr double kDegeneracyTol = 1e-8;

void fix_sign(Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-8) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

double residual(const SparseHamiltonian& h, const Eigen::VectorXd& v, double e) {
  return (h.apply(v) - e * v).norm();
}

// Above this size the dense path skips eigenvector accumulation and recovers
// the ground vector by inverse iteration, which is several times faster.
constexpr std::size_t kFullDecompositionMax = 512;

GroundStateResult finish_dense(const SparseHamiltonian& h, const SolverOptions& options,
                               const Eigen::VectorXd& eigenvalues, Eigen::VectorXd vector) {
  GroundStateResult r;
  r.method = SolverMethod::dense;
  r.energy = eigenvalues[0];
  r.vector = std::move(vector);
  fix_sign(r.vector);
  r.residual_norm = residual(h, r.vector, r.energy);
  if (h.dim() > 1) {
    r.gap = eigenvalues[1] - eigenvalues[0];
    r.degenerate = options.detect_degeneracy && *r.gap < kDegeneracyTol;
  }
  return r;
}

GroundStateResult solve_dense_full(const SparseHamiltonian& h, const SolverOptions& options) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.to_dense());
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("dense eigensolver failed", std::nan(""));
  }
  return finish_dense(h, options, es.eigenvalues(), es.eigenvectors().col(0));
}

GroundStateResult solve_dense(const SparseHamiltonian& h, const SolverOptions& options) {
  if (h.dim() <= kFullDecompositionMax) return solve_dense_full(h, options);
  const Eigen::MatrixXd dense = h.to_dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("dense eigensolver failed", std::nan(""));
  }
  const Eigen::VectorXd& evals = es.eigenvalues();
  const double scale = std::max(1.0, evals.cwiseAbs().maxCoeff());
  const double shift = evals[0] - 1e-7 * scale;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(dense - shift * Eigen::MatrixXd::Identity(dense.rows(), dense.cols()));
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd v(dense.rows());
  for (auto& x : v) x = gauss(rng);
  v.normalize();
  for (int it = 0; it < 8; ++it) {
    v = ldlt.solve(v);
    v.normalize();
    if (residual(h, v, evals[0]) < 0.1 * options.tolerance) break;
  }
  if (ldlt.info() != Eigen::Success || residual(h, v, evals[0]) > options.tolerance) {
    return solve_dense_full(h, options);
  }
  return finish_dense(h, options, evals, std::move(v));
}

struct LanczosOutcome {
  double energy = 0.0;
  Eigen::VectorXd vector;
  double residual_norm = 0.0;
  int matvecs = 0;
};

// Restarted Lanczos with full reorthogonalization. Every Krylov vector is
// kept orthogonal to `locked` as well, which turns the same routine into a
// solver for the next eigenvalue once the ground vector is locked.
LanczosOutcome lanczos_lowest(const SparseHamiltonian& h, const SolverOptions& options,
                              const std::vector<Eigen::VectorXd>& locked,
                              std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(h.dim());
  const int cap = static_cast<int>(std::min<Eigen::Index>(options.krylov_cap, n));

  auto orthogonalize = [&](Eigen::VectorXd& w, const std::vector<Eigen::VectorXd>& basis,
                           int count) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : locked) w -= q.dot(w) * q;
      for (int i = 0; i < count; ++i) w -= basis[static_cast<std::size_t>(i)].dot(w) * basis[static_cast<std::size_t>(i)];
    }
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::VectorXd start(n);
  for (Eigen::Index i = 0; i < n; ++i) start[i] = uni(rng);

  LanczosOutcome best;
  best.residual_norm = std::numeric_limits<double>::infinity();
  std::vector<Eigen::VectorXd> basis;
  basis.reserve(static_cast<std::size_t>(cap));

  for (int restart = 0; restart < std::max(options.max_iterations, 1); ++restart) {
    basis.clear();
    orthogonalize(start, basis, 0);
    const double norm0 = start.norm();
    if (norm0 < 1e-300) throw ConvergenceError("Lanczos start vector vanished", best.residual_norm);
    basis.push_back(start / norm0);

    std::vector<double> alpha;
    std::vector<double> beta;
    Eigen::VectorXd w(n);
    Eigen::VectorXd ritz;
    double theta = 0.0;
    bool exhausted = false;

    for (int j = 0; j < cap; ++j) {
      h.apply(basis[static_cast<std::size_t>(j)], w);
      ++best.matvecs;
      const double a = basis[static_cast<std::size_t>(j)].dot(w);
      alpha.push_back(a);
      orthogonalize(w, basis, j + 1);
      const double b = w.norm();

      const int m = j + 1;
      const bool check = (m % 5 == 0) || m == cap || b < 1e-12;
      if (check) {
        Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
        Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(beta.data(), m - 1);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
        tri.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
        theta = tri.eigenvalues()[0];
        ritz = tri.eigenvectors().col(0);
        const double estimate = b * std::abs(ritz[m - 1]);
        if (estimate < 0.1 * options.tolerance || b < 1e-12) {
          exhausted = b < 1e-12;
          break;
        }
      }
      if (j + 1 == cap) break;
      beta.push_back(b);
      basis.push_back(w / b);
    }

    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < ritz.size(); ++i) x += ritz[i] * basis[static_cast<std::size_t>(i)];
    for (const auto& q : locked) x -= q.dot(x) * q;
    x.normalize();
    const double e_x = x.dot(h.apply(x));
    ++best.matvecs;
    Eigen::VectorXd r = h.apply(x) - e_x * x;
    for (const auto& q : locked) r -= q.dot(r) * q;
    const double res = r.norm();

    if (res < best.residual_norm) best = {e_x, x, res, best.matvecs};
    if (res < options.tolerance) return best;
    if (exhausted && res < 1e3 * options.tolerance) return best;
    start = x;
    (void)theta;
  }
  throw ConvergenceError("Lanczos did not reach residual " + std::to_string(options.tolerance) +
                             " (best " + std::to_string(best.residual_norm) + ")",
                         best.residual_norm);
}

GroundStateResult solve_lanczos(const SparseHamiltonian& h, const SolverOptions& options) {
  GroundStateResult r;
  r.method = SolverMethod::lanczos;
  LanczosOutcome g = lanczos_lowest(h, options, {}, options.seed);
  r.energy = g.energy;
  r.vector = std::move(g.vector);
  fix_sign(r.vector);
  r.residual_norm = residual(h, r.vector, r.energy);
  r.iterations = g.matvecs;
  if (options.detect_degeneracy && h.dim() > 1) {
    LanczosOutcome next = lanczos_lowest(h, options, {r.vector}, options.seed + 1);
    r.iterations += next.matvecs;
    r.gap = next.energy - r.energy;
    r.degenerate = *r.gap < kDegeneracyTol;
  }
  return r;
}

}  // namespace

const char* to_string(SolverMethod m) {
  switch (m) {
    case SolverMethod::automatic:
      return "auto";
    case SolverMethod::dense:
      return "dense";
    case SolverMethod::lanczos:
      return "lanczos";
  }
  return "unknown";
}

GroundStateResult ground_state(const SparseHamiltonian& h, const SolverOptions& options) {
  if (h.dim() == 0) throw EmptySectorError("cannot solve an empty sector");
  SolverMethod method = options.method;
  if (method == SolverMethod::automatic) {
    method = h.dim() <= options.dense_threshold ? SolverMethod::dense : SolverMethod::lanczos;
  }
  if (method == SolverMethod::dense || h.dim() == 1) return solve_dense(h, options);
  return solve_lanczos(h, options);
}

RingState to_ring_state(const SparseHamiltonian& h, const Eigen::VectorXd& v) {
  return RingState(h.sector_ptr(), v.cast<std::complex<double>>());
}

XyGroundState xy_ground_state(int m_sites, int n_up, const SolverOptions& options) {
  const SparseHamiltonian h = build_xy(m_sites, n_up);
  SolverOptions opts = options;
  opts.detect_degeneracy = false;
  GroundStateResult g = ground_state(h, opts);
  if (g.vector.minCoeff() < -1e-10) {
    throw ValidationError("XY ground vector has negative components");
  }
  Eigen::VectorXd v = g.vector.cwiseAbs();
  return {g.energy, to_ring_state(h, v)};
}

AfmResult afm_concurrence(int n, const SolverOptions& options) {
  if (n < 2 || n % 2 != 0) {
    throw UnsupportedError("antiferromagnetic concurrence needs an even ring, got N=" +
                           std::to_string(n));
  }
  const SparseHamiltonian h = build_heisenberg(n);
  AfmResult out;
  out.n = n;
  out.ground = ground_state(h, options);
  if (out.ground.degenerate) {
    throw ValidationError("Heisenberg ground state of N=" + std::to_string(n) +
                          " is degenerate; pair matrix would be ambiguous");
  }
  out.energy_per_site = out.ground.energy / n;
  const PairDensityMatrix rho = pair_rdm(to_ring_state(h, out.ground.vector), 0, 1);
  out.rdm = block_form(rho);
  out.c_gs = concurrence_general(rho);
  const double from_energy = std::max(-0.5 * (out.energy_per_site + 1.0), 0.0);
  if (std::abs(from_energy - out.c_gs) > 1e-9) {
    throw Error("ground-state concurrence " + std::to_string(out.c_gs) +
                " disagrees with the energy relation value " + std::to_string(from_energy));
  }
  return out;
}

}  // namespace ringent
