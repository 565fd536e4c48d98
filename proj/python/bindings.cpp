#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ringent/analytic.hpp"
#include "ringent/eigensolver.hpp"
#include "ringent/entanglement.hpp"
#include "ringent/errors.hpp"
#include "ringent/optimizer.hpp"
#include "ringent/reports.hpp"
#include "ringent/state_space.hpp"

namespace py = pybind11;
using namespace ringent;

namespace {

SolverOptions solver_options(std::size_t dense_threshold, const std::string& method, double tolerance) {
  SolverOptions o;
  o.dense_threshold = dense_threshold;
  o.tolerance = tolerance;
  if (method == "dense") {
    o.method = SolverMethod::dense;
  } else if (method == "lanczos") {
    o.method = SolverMethod::lanczos;
  } else if (method != "auto") {
    throw ValidationError("method must be auto, dense or lanczos");
  }
  return o;
}

OptimizerOptions optimizer_options(int restarts, std::uint64_t seed) {
  OptimizerOptions o;
  o.restarts = restarts;
  o.seed = seed;
  return o;
}

PairDensityMatrix as_rdm(const Matrix4c& m) {
  PairDensityMatrix r;
  r.entries = m;
  return r;
}

py::dict run_dict(const OptimizationRun& run) {
  py::dict d;
  d["n"] = run.spec.n_sites;
  d["p"] = run.spec.n_up;
  d["best_value"] = run.best_value;
  d["orbit_amplitudes"] = run.orbit_amplitudes;
  d["restart_values"] = run.restart_values;
  d["iterations"] = run.iterations;
  d["seed"] = run.seed;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Nearest-neighbour concurrence on qubit rings";

  auto base = py::register_exception<Error>(m, "RingentError", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<InfeasibleError>(m, "InfeasibleError", base.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
  py::register_exception<UnsupportedError>(m, "UnsupportedError", base.ptr());
  py::register_exception<EmptySectorError>(m, "EmptySectorError", base.ptr());
  py::register_exception<ShapeError>(m, "ShapeError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());

  m.def("e_min", [](int n, int p) {
    const AnalyticValue v = e_min(n, p);
    return py::make_tuple(v.value, v.degenerate);
  }, py::arg("n"), py::arg("p"), "Closed-form XY minimum energy and its degenerate flag.");

  m.def("c_max", [](int n, int p) {
    const CmaxResult r = c_max(n, p);
    py::dict d;
    d["n"] = r.n;
    d["p"] = r.p;
    d["c_max"] = r.c_max;
    d["e_min"] = r.e_min;
    d["c_prime_max"] = r.c_prime_max;
    d["degenerate"] = r.degenerate;
    return d;
  }, py::arg("n"), py::arg("p"));

  m.def("p_opt", [](int n) {
    const OptimalFilling f = p_opt(n);
    return py::make_tuple(f.p, f.c_max);
  }, py::arg("n"), "All maximizing fillings and the maximum.");

  m.def("fermion_levels", &fermion_levels, py::arg("m_sites"), py::arg("n_up"));
  m.def("c_max_limit", &c_max_limit, py::arg("alpha"));
  m.def("optimal_alpha", [] {
    const AlphaOptimum a = optimal_alpha();
    return py::make_tuple(a.alpha, a.c_max);
  });

  m.def("concurrence", [](const Matrix4c& rho) { return concurrence_general(as_rdm(rho)); },
        py::arg("rho"), "Concurrence of a 4x4 density matrix in the (uu, ud, du, dd) basis.");
  m.def("wootters_lambdas", [](const Matrix4c& rho) { return wootters_lambdas(as_rdm(rho)); },
        py::arg("rho"));
  m.def("concurrence_block", [](double v, double w, double x, double y, std::complex<double> z) {
    return concurrence_block({v, w, x, y, z});
  }, py::arg("v"), py::arg("w"), py::arg("x"), py::arg("y"), py::arg("z"));

  m.def("afm_concurrence", [](int n, std::size_t dense_threshold, const std::string& method, double tolerance) {
    const AfmResult r = afm_concurrence(n, solver_options(dense_threshold, method, tolerance));
    py::dict d;
    d["n"] = r.n;
    d["energy"] = r.ground.energy;
    d["energy_per_site"] = r.energy_per_site;
    d["c_gs"] = r.c_gs;
    d["rdm"] = Matrix4c(r.rdm.to_matrix().entries);
    d["vector"] = r.ground.vector;
    d["residual_norm"] = r.ground.residual_norm;
    d["method"] = std::string(to_string(r.ground.method));
    d["gap"] = r.ground.gap ? py::cast(*r.ground.gap) : py::none();
    return d;
  }, py::arg("n"), py::arg("dense_threshold") = SolverOptions{}.dense_threshold,
     py::arg("method") = "auto", py::arg("tolerance") = SolverOptions{}.tolerance);

  m.def("xy_ground_energy", [](int m_sites, int n_up) { return xy_ground_state(m_sites, n_up).energy; },
        py::arg("m_sites"), py::arg("n_up"));

  m.def("maximize_constrained", [](int n, int p, int restarts, std::uint64_t seed) {
    return run_dict(maximize_constrained(n, p, optimizer_options(restarts, seed)));
  }, py::arg("n"), py::arg("p"), py::arg("restarts") = 32, py::arg("seed") = OptimizerOptions{}.seed);

  m.def("maximize_sector_unconstrained", [](int n, int p, int restarts, std::uint64_t seed) {
    return run_dict(maximize_sector_unconstrained(n, p, optimizer_options(restarts, seed)));
  }, py::arg("n"), py::arg("p"), py::arg("restarts") = 32, py::arg("seed") = OptimizerOptions{}.seed);

  m.def("n5_theta_family", [](double theta) { return n5_theta_family(theta).concurrence; }, py::arg("theta"));
  m.def("n5_theta_opt", [] {
    const ThetaOptimum t = n5_theta_opt();
    return py::make_tuple(t.theta, t.concurrence);
  });

  m.def("pair_rdm_from_file", [](const std::string& path, int site_a, int site_b) {
    return Matrix4c(pair_rdm(read_state_file(path), site_a - 1, site_b - 1).entries);
  }, py::arg("path"), py::arg("site_a") = 1, py::arg("site_b") = 2, "Pair matrix of a state file; sites are 1-based.");

  m.def("random_balanced_state", [](int n, int k, std::uint64_t seed) {
    return state_to_json(random_balanced_state(n, k, seed)).dump();
  }, py::arg("n"), py::arg("momentum"), py::arg("seed"), "A random balanced state as state-file JSON text.");

  m.def("_verify_json", [](const std::string& suite, std::uint64_t seed, int n, int samples, int n_max) {
    VerifyOptions o;
    o.seed = seed;
    o.n = n;
    o.samples = samples;
    o.n_max = n_max;
    return cmd_verify(suite, o).to_json().dump();
  }, py::arg("suite"), py::arg("seed"), py::arg("n"), py::arg("samples"), py::arg("n_max"));

  m.def("_report_json", [](const std::string& name, int n, bool flag) {
    Report r;
    if (name == "table-cmax") {
      r = cmd_table_cmax(n, flag);
    } else if (name == "table-afm") {
      r = cmd_table_afm(n, {}, flag);
    } else {
      throw ValidationError("unknown report '" + name + "'");
    }
    return report_to_json(r).dump();
  });
}
