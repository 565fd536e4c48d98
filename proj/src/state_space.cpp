#include "ringent/state_space.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <unordered_set>

#include "ringent/errors.hpp"

namespace ringent {

namespace {

constexpr double kDegenerateNorm = 1e-8;
constexpr double kInvarianceTol = 1e-10;
constexpr double kRealTol = 1e-12;

Complex unit_phase(int momentum_index, int steps, int n_sites) {
  const double angle = 2.0 * std::numbers::pi * momentum_index * steps / n_sites;
  return std::polar(1.0, angle);
}

void require_real_nonnegative(const RingState& state, const char* what) {
  for (const auto& a : state.amplitudes()) {
    if (std::abs(a.imag()) > kRealTol || a.real() < -kRealTol) {
      throw ValidationError(std::string(what) +
                            " requires real non-negative amplitudes");
    }
  }
}

// Rotation of an orbit member that puts an up-spin on site 1.
BasisState rotate_to_leading_up(const Orbit& orbit) {
  for (const auto& m : orbit.members) {
    if (m.bits & 1U) return m;
  }
  return orbit.representative;  // p == 0
}

RingState build_from_orbit_map(const RingState& source, const RingSpec& target_spec,
                               Mask (*map_config)(const BasisState&, int)) {
  const OrbitState src = read_orbits(source, 0);
  auto target = make_sector(target_spec);
  const OrbitTable& src_table = source.sector().orbits();

  OrbitState out{target, std::vector<Complex>(target->orbits().orbits.size(), 0.0), 0};
  std::vector<bool> assigned(out.orbit_amplitudes.size(), false);
  for (std::size_t o = 0; o < src_table.orbits.size(); ++o) {
    const BasisState lead = rotate_to_leading_up(src_table.orbits[o]);
    const Mask mapped = map_config(lead, target_spec.n_sites);
    const OrbitPosition& pos = target->orbits().locate({mapped, target_spec.n_sites});
    if (assigned[pos.orbit]) {
      throw Error("orbit map is not injective; this indicates an internal bug");
    }
    assigned[pos.orbit] = true;
    out.orbit_amplitudes[pos.orbit] = src.orbit_amplitudes[o];
  }
  return expand(out);
}

Mask remove_after_up(const BasisState& big, int small_sites) {
  Mask small = 0;
  int pos = 0;
  for (int k = 0; k < big.n_sites; ++k) {
    if ((big.bits >> k) & 1U) {
      small |= Mask{1} << pos;
      ++k;  // the following site is a down-spin by the constraint
    }
    ++pos;
  }
  if (pos != small_sites) throw Error("deflation produced a ring of the wrong size");
  return small;
}

Mask insert_after_up(const BasisState& small, int big_sites) {
  Mask big = 0;
  int pos = 0;
  for (int k = 0; k < small.n_sites; ++k) {
    if ((small.bits >> k) & 1U) {
      big |= Mask{1} << pos;
      pos += 2;
    } else {
      pos += 1;
    }
  }
  if (pos != big_sites) throw Error("inflation produced a ring of the wrong size");
  return big;
}

}  // namespace

RingState::RingState(std::shared_ptr<const Sector> sector, Eigen::VectorXcd amplitudes)
    : sector_(std::move(sector)), amplitudes_(std::move(amplitudes)) {
  if (!sector_) throw ValidationError("state needs a sector");
  if (static_cast<std::size_t>(amplitudes_.size()) != sector_->size()) {
    throw ValidationError("amplitude vector has " + std::to_string(amplitudes_.size()) +
                          " entries for a sector of " + std::to_string(sector_->size()));
  }
  const double norm = amplitudes_.norm();
  if (!(norm >= kDegenerateNorm)) {
    throw ValidationError("state norm " + std::to_string(norm) + " is degenerate");
  }
  if (std::abs(norm - 1.0) > 1e-12) amplitudes_ /= norm;
}

Complex RingState::amplitude(Mask bits) const {
  if (auto i = sector_->find(bits)) return amplitudes_[static_cast<Eigen::Index>(*i)];
  return 0.0;
}

std::shared_ptr<const Sector> make_sector(const RingSpec& spec) {
  return std::make_shared<const Sector>(spec);
}

bool momentum_compatible(int n_sites, int period, int momentum_index) {
  const long long prod = static_cast<long long>(momentum_index) * period;
  return ((prod % n_sites) + n_sites) % n_sites == 0;
}

RingState expand(const OrbitState& orbit_state) {
  if (!orbit_state.sector) throw ValidationError("orbit state needs a sector");
  const Sector& sector = *orbit_state.sector;
  const auto& orbits = sector.orbits().orbits;
  if (orbit_state.orbit_amplitudes.size() != orbits.size()) {
    throw ValidationError("expected " + std::to_string(orbits.size()) +
                          " orbit amplitudes, got " +
                          std::to_string(orbit_state.orbit_amplitudes.size()));
  }
  const int n = sector.n_sites();
  const int k = orbit_state.momentum_index;
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sector.size()));
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    const Complex a = orbit_state.orbit_amplitudes[o];
    if (a == 0.0) continue;
    if (!momentum_compatible(n, orbits[o].period, k)) {
      throw ValidationError("orbit " + to_bitstring(orbits[o].representative) +
                            " of period " + std::to_string(orbits[o].period) +
                            " cannot carry momentum " + std::to_string(k));
    }
    for (int t = 0; t < orbits[o].period; ++t) {
      const auto i = sector.index_of(orbits[o].members[static_cast<std::size_t>(t)].bits);
      amps[static_cast<Eigen::Index>(i)] = a * unit_phase(k, t, n);
    }
  }
  return RingState(orbit_state.sector, std::move(amps));
}

OrbitState read_orbits(const RingState& state, int momentum_index) {
  const Sector& sector = state.sector();
  const auto& orbits = sector.orbits().orbits;
  const int n = sector.n_sites();
  OrbitState out{state.sector_ptr(), std::vector<Complex>(orbits.size()), momentum_index};
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    const Complex a = state.amplitude(orbits[o].representative.bits);
    if (!momentum_compatible(n, orbits[o].period, momentum_index) &&
        std::abs(a) > kInvarianceTol) {
      throw ValidationError("state is not translationally invariant at momentum " +
                            std::to_string(momentum_index));
    }
    for (int t = 1; t < orbits[o].period; ++t) {
      const Complex b = state.amplitude(orbits[o].members[static_cast<std::size_t>(t)].bits);
      if (std::abs(b - a * unit_phase(momentum_index, t, n)) > kInvarianceTol) {
        throw ValidationError("state is not translationally invariant at momentum " +
                              std::to_string(momentum_index) + " (orbit " +
                              to_bitstring(orbits[o].representative) + ")");
      }
    }
    out.orbit_amplitudes[o] = a;
  }
  return out;
}

std::optional<int> detect_momentum(const RingState& state, double tol) {
  const Sector& sector = state.sector();
  const int n = sector.n_sites();
  Complex overlap = 0.0;
  for (std::size_t i = 0; i < sector.size(); ++i) {
    const BasisState& s = sector.state(i);
    overlap += std::conj(state.amplitudes()[static_cast<Eigen::Index>(i)]) *
               state.amplitude(shift(s, 1).bits);
  }
  if (std::abs(std::abs(overlap) - 1.0) > std::sqrt(tol)) return std::nullopt;
  int k = static_cast<int>(std::lround(std::arg(overlap) * n / (2.0 * std::numbers::pi)));
  k = ((k % n) + n) % n;
  const Complex phase = unit_phase(k, 1, n);
  for (std::size_t i = 0; i < sector.size(); ++i) {
    const Complex a = state.amplitudes()[static_cast<Eigen::Index>(i)];
    const Complex b = state.amplitude(shift(sector.state(i), 1).bits);
    if (std::abs(b - phase * a) > tol) return std::nullopt;
  }
  return k;
}

RingState translate(const RingState& state, int k) {
  const Sector& sector = state.sector();
  Eigen::VectorXcd out(static_cast<Eigen::Index>(sector.size()));
  for (std::size_t i = 0; i < sector.size(); ++i) {
    const auto j = sector.index_of(shift(sector.state(i), k).bits);
    out[static_cast<Eigen::Index>(j)] = state.amplitudes()[static_cast<Eigen::Index>(i)];
  }
  return RingState(state.sector_ptr(), std::move(out));
}

RingState deflate(const RingState& b_state) {
  const RingSpec& spec = b_state.spec();
  const int n = spec.n_sites;
  const int p = spec.n_up;
  if (n - p < 2) {
    throw ValidationError("deflating a " + std::to_string(n) + "-site ring with " +
                          std::to_string(p) + " up-spins leaves no nearest-neighbour pair");
  }
  require_real_nonnegative(b_state, "deflate");

  RingState constrained = b_state;
  if (!spec.forbid_adjacent_up) {
    auto sector = make_sector({n, p, true});
    Eigen::VectorXcd amps(static_cast<Eigen::Index>(sector->size()));
    double dropped = 0.0;
    for (std::size_t i = 0; i < b_state.size(); ++i) {
      const BasisState& s = b_state.sector().state(i);
      const Complex a = b_state.amplitudes()[static_cast<Eigen::Index>(i)];
      if (has_adjacent_up(s)) {
        dropped = std::max(dropped, std::abs(a));
      } else {
        amps[static_cast<Eigen::Index>(sector->index_of(s.bits))] = a;
      }
    }
    if (dropped > kRealTol) {
      throw ValidationError("deflate requires a state without adjacent up-spins");
    }
    constrained = RingState(sector, std::move(amps));
  }
  return build_from_orbit_map(constrained, {n - p, p, false}, &remove_after_up);
}

RingState inflate(const RingState& d_state) {
  const RingSpec& spec = d_state.spec();
  require_real_nonnegative(d_state, "inflate");
  return build_from_orbit_map(d_state, {spec.n_sites + spec.n_up, spec.n_up, true},
                              &insert_after_up);
}

RingState apply_marshall_signs(const RingState& state) {
  const Sector& sector = state.sector();
  Eigen::VectorXcd out(static_cast<Eigen::Index>(sector.size()));
  for (std::size_t i = 0; i < sector.size(); ++i) {
    const BasisState& s = sector.state(i);
    int site_sum = 0;
    for (int k = 0; k < s.n_sites; ++k) {
      if ((s.bits >> k) & 1U) site_sum += k + 1;
    }
    const double sign = (site_sum % 2 == 0) ? 1.0 : -1.0;
    out[static_cast<Eigen::Index>(i)] = sign * std::abs(state.amplitudes()[static_cast<Eigen::Index>(i)]);
  }
  return RingState(state.sector_ptr(), std::move(out));
}

RingState random_balanced_state(int n, int momentum_index, std::uint64_t seed) {
  if (n < 2 || n % 2 != 0) {
    throw ValidationError("balanced states need an even ring, got N=" + std::to_string(n));
  }
  auto sector = make_sector({n, n / 2, false});
  const int k = ((momentum_index % n) + n) % n;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  OrbitState os{sector, {}, k};
  for (const auto& orbit : sector->orbits().orbits) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    os.orbit_amplitudes.emplace_back(
        momentum_compatible(n, orbit.period, k) ? Complex(re, im) : Complex(0.0));
  }
  return expand(os);
}

nlohmann::json state_to_json(const RingState& state) {
  const RingSpec& spec = state.spec();
  nlohmann::json doc;
  doc["n"] = spec.n_sites;
  doc["p"] = spec.n_up;
  doc["constraint"] = spec.forbid_adjacent_up ? "no-adjacent-up" : "none";
  if (auto k = detect_momentum(state)) {
    doc["momentum"] = *k;
  } else {
    doc["momentum"] = nullptr;
  }
  auto amps = nlohmann::json::array();
  for (std::size_t i = 0; i < state.size(); ++i) {
    const Complex a = state.amplitudes()[static_cast<Eigen::Index>(i)];
    amps.push_back({{"bits", to_bitstring(state.sector().state(i))},
                    {"re", a.real()},
                    {"im", a.imag()}});
  }
  doc["amplitudes"] = std::move(amps);
  return doc;
}

RingState state_from_json(const nlohmann::json& doc) {
  try {
    RingSpec spec;
    spec.n_sites = doc.at("n").get<int>();
    spec.n_up = doc.at("p").get<int>();
    const std::string constraint = doc.value("constraint", std::string("none"));
    if (constraint == "no-adjacent-up") {
      spec.forbid_adjacent_up = true;
    } else if (constraint != "none") {
      throw ValidationError("unknown constraint '" + constraint + "'");
    }
    auto sector = make_sector(spec);

    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sector->size()));
    std::unordered_set<Mask> seen;
    for (const auto& entry : doc.at("amplitudes")) {
      const BasisState s = from_bitstring(entry.at("bits").get<std::string>());
      if (s.n_sites != spec.n_sites) {
        throw ValidationError("bitstring " + to_bitstring(s) + " does not have " +
                              std::to_string(spec.n_sites) + " sites");
      }
      if (s.popcount() != spec.n_up) {
        throw ValidationError("bitstring " + to_bitstring(s) + " does not have " +
                              std::to_string(spec.n_up) + " up-spins");
      }
      if (spec.forbid_adjacent_up && has_adjacent_up(s)) {
        throw ValidationError("bitstring " + to_bitstring(s) +
                              " violates the no-adjacent-up constraint");
      }
      if (!seen.insert(s.bits).second) {
        throw ValidationError("duplicate amplitude for " + to_bitstring(s));
      }
      const double re = entry.value("re", 0.0);
      const double im = entry.value("im", 0.0);
      amps[static_cast<Eigen::Index>(sector->index_of(s.bits))] = Complex(re, im);
    }
    const double norm = amps.norm();
    if (std::abs(norm - 1.0) > 1e-6) {
      throw ValidationError("state file norm " + std::to_string(norm) + " differs from 1");
    }
    RingState state(sector, std::move(amps));

    if (doc.contains("momentum") && !doc.at("momentum").is_null()) {
      const int k = doc.at("momentum").get<int>();
      read_orbits(state, ((k % spec.n_sites) + spec.n_sites) % spec.n_sites);
    }
    return state;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed state file: ") + e.what());
  }
}

RingState read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open state file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("state file '" + path + "' is not valid JSON: " + e.what());
  }
  return state_from_json(doc);
}

void write_state_file(const RingState& state, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write state file '" + path + "'");
  out << state_to_json(state).dump(2) << '\n';
}

}  // namespace ringent
