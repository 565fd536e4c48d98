#pragma once

#include <vector>

namespace ringent {

/// Single-fermion levels of the XY ring of M sites in the p-particle sector.
/// Odd p: -2cos(2m*pi/M); even p: -2cos((2m+1)*pi/M); m = 1..M. Unsorted.
std::vector<double> fermion_levels(int m_sites, int n_up);

/// A closed-form value together with a flag for boundary cases
/// (p = 0 or N - p <= 2) where the formula is evaluated at its edge.
struct AnalyticValue {
  double value = 0.0;
  bool degenerate = false;
};

/// Minimum XY energy -2 sin(p*pi/(N-p)) / sin(pi/(N-p)).
AnalyticValue e_min(int n, int p);

struct CmaxResult {
  int n = 0;
  int p = 0;
  double c_max = 0.0;
  double e_min = 0.0;
  double c_prime_max = 0.0;
  bool degenerate = false;
};

/// Maximum nearest-neighbour concurrence with p isolated up-spins on N sites.
CmaxResult c_max(int n, int p);

struct OptimalFilling {
  std::vector<int> p;  // every maximizer, ascending
  double c_max = 0.0;
};

/// Ties are exact equality within 1e-12.
OptimalFilling p_opt(int n);

/// Infinite-chain limit at up-spin density alpha in (0, 1/2].
double c_max_limit(double alpha);
/// Analytic derivative of c_max_limit.
double c_max_limit_derivative(double alpha);

struct AlphaOptimum {
  double alpha = 0.0;
  double c_max = 0.0;
};

/// Root of the derivative on (0, 1/2) by bisection.
AlphaOptimum optimal_alpha();

}  // namespace ringent
