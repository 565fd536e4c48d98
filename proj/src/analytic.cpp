#include "ringent/analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ringent/errors.hpp"

namespace ringent {

namespace {

constexpr double kPi = std::numbers::pi;

void check_filling(int n, int p) {
  if (n < 2) throw ValidationError("ring needs at least two sites, got N=" + std::to_string(n));
  if (p < 0) throw ValidationError("negative up-spin count");
  if (p > n / 2) {
    throw InfeasibleError("p=" + std::to_string(p) + " isolated up-spins do not fit on N=" +
                          std::to_string(n));
  }
}

// sin(p*theta) / sin(theta), continuous through sin(theta) = 0.
double sine_ratio(int p, int m) {
  const double theta = kPi / m;
  if (m >= 2) return std::sin(p * theta) / std::sin(theta);
  double acc = 0.0;
  for (int k = 0; k < p; ++k) acc += std::cos((p - 1 - 2 * k) * theta);
  return acc;
}

}  // namespace

std::vector<double> fermion_levels(int m_sites, int n_up) {
  if (m_sites < 1) throw ValidationError("fermion ring needs at least one site");
  std::vector<double> levels;
  levels.reserve(static_cast<std::size_t>(m_sites));
  const bool odd = (n_up % 2) != 0;
  for (int m = 1; m <= m_sites; ++m) {
    const double k = odd ? 2.0 * m : 2.0 * m + 1.0;
    levels.push_back(-2.0 * std::cos(k * kPi / m_sites));
  }
  return levels;
}

AnalyticValue e_min(int n, int p) {
  check_filling(n, p);
  if (p == 0) return {0.0, true};
  const int m = n - p;
  return {-2.0 * sine_ratio(p, m), m <= 2};
}

CmaxResult c_max(int n, int p) {
  const AnalyticValue e = e_min(n, p);
  CmaxResult r{n, p, 0.0, e.value, 0.0, e.degenerate};
  if (p == 0) return r;
  const int m = n - p;
  r.c_prime_max = -e.value / m;
  r.c_max = static_cast<double>(m) / n * r.c_prime_max;
  return r;
}

OptimalFilling p_opt(int n) {
  if (n < 2) throw ValidationError("ring needs at least two sites");
  OptimalFilling best{{0}, 0.0};
  for (int p = 1; p <= n / 2; ++p) {
    const double c = c_max(n, p).c_max;
    if (c > best.c_max + 1e-12) {
      best = {{p}, c};
    } else if (std::abs(c - best.c_max) <= 1e-12) {
      best.p.push_back(p);
      best.c_max = std::max(best.c_max, c);
    }
  }
  return best;
}

double c_max_limit(double alpha) {
  if (!(alpha > 0.0 && alpha <= 0.5)) {
    throw ValidationError("up-spin density must lie in (0, 1/2]");
  }
  return 2.0 / kPi * (1.0 - alpha) * std::sin(alpha * kPi / (1.0 - alpha));
}

double c_max_limit_derivative(double alpha) {
  const double u = alpha * kPi / (1.0 - alpha);
  return 2.0 / kPi * (-std::sin(u) + kPi * std::cos(u) / (1.0 - alpha));
}

AlphaOptimum optimal_alpha() {
  // The derivative is positive at 0 and negative at 1/2 with a single root.
  double lo = 0.0;
  double hi = 0.5;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (c_max_limit_derivative(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double alpha = 0.5 * (lo + hi);
  return {alpha, c_max_limit(alpha)};
}

}  // namespace ringent
