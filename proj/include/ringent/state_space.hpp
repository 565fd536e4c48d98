#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "ringent/basis.hpp"

namespace ringent {

using Complex = std::complex<double>;

/// Unit-norm amplitude vector over a sector basis.
///
/// The sector is shared between copies. Amplitudes are renormalized on
/// construction; a norm below 1e-8 is rejected as degenerate.
class RingState {
 public:
  RingState(std::shared_ptr<const Sector> sector, Eigen::VectorXcd amplitudes);

  const RingSpec& spec() const noexcept { return sector_->spec(); }
  const Sector& sector() const noexcept { return *sector_; }
  const std::shared_ptr<const Sector>& sector_ptr() const noexcept { return sector_; }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }

  Complex amplitude(Mask bits) const;

 private:
  std::shared_ptr<const Sector> sector_;
  Eigen::VectorXcd amplitudes_;
};

std::shared_ptr<const Sector> make_sector(const RingSpec& spec);

/// One amplitude per orbit plus a momentum index k: the member reached by t
/// unit shifts from the representative carries phase exp(2*pi*i*k*t/N).
struct OrbitState {
  std::shared_ptr<const Sector> sector;
  std::vector<Complex> orbit_amplitudes;
  int momentum_index = 0;
};

/// True when an orbit of the given period can carry momentum k.
bool momentum_compatible(int n_sites, int period, int momentum_index);

RingState expand(const OrbitState& orbit_state);

/// Inverse of expand. Throws ValidationError if the state is not
/// translationally invariant with the given momentum (tolerance 1e-10).
OrbitState read_orbits(const RingState& state, int momentum_index);

/// Momentum k such that psi(shift(s, 1)) = exp(2*pi*i*k/N) psi(s) for every
/// basis state s, if the state is invariant.
std::optional<int> detect_momentum(const RingState& state, double tol = 1e-10);

/// Cyclic translation of the whole state by k sites.
RingState translate(const RingState& state, int k);

/// Maps a constrained, real, non-negative, k=0 invariant N-ring state onto the
/// unconstrained (N-p)-ring by deleting the down-spin after every up-spin.
RingState deflate(const RingState& b_state);

/// Inverse of deflate: inserts a down-spin after every up-spin.
RingState inflate(const RingState& d_state);

/// Replaces each amplitude b by |b| * (-1)^(i1+...+ip), sites 1-based.
RingState apply_marshall_signs(const RingState& state);

/// Random translationally invariant state of an even ring with zero total Sz.
RingState random_balanced_state(int n, int momentum_index, std::uint64_t seed);

/// JSON state file: {"n","p","constraint","momentum","amplitudes":[{"bits","re","im"}]}.
nlohmann::json state_to_json(const RingState& state);
RingState state_from_json(const nlohmann::json& doc);
RingState read_state_file(const std::string& path);
void write_state_file(const RingState& state, const std::string& path);

}  // namespace ringent
