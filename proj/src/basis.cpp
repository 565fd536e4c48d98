#include "ringent/basis.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "ringent/errors.hpp"

namespace ringent {

namespace {

constexpr std::uint64_t kMaxSectorSize = std::uint64_t{1} << 27;

Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

// Site-1-leftmost string read as a binary number.
Mask lex_key(Mask bits, int n) {
  Mask key = 0;
  for (int k = 0; k < n; ++k) {
    key = (key << 1) | ((bits >> k) & 1U);
  }
  return key;
}

std::uint64_t binomial_checked(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t acc = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t g = std::gcd(acc, static_cast<std::uint64_t>(i));
    const std::uint64_t factor = static_cast<std::uint64_t>(n - k + i) / (i / g);
    if (__builtin_mul_overflow(acc / g, factor, &acc)) {
      throw CapacityError("binomial coefficient overflows 64 bits");
    }
  }
  return acc;
}

}  // namespace

void RingSpec::validate() const {
  if (n_sites < 1) throw ValidationError("ring needs at least one site");
  if (n_sites > kMaxSites) {
    throw CapacityError("ring of " + std::to_string(n_sites) +
                        " sites exceeds the " + std::to_string(kMaxSites) +
                        "-site mask width");
  }
  if (n_up < 0 || n_up > n_sites) {
    throw ValidationError("up-spin count " + std::to_string(n_up) +
                          " outside [0, " + std::to_string(n_sites) + "]");
  }
}

bool RingSpec::feasible() const {
  if (!forbid_adjacent_up) return true;
  return n_up <= n_sites / 2;
}

int BasisState::popcount() const { return std::popcount(bits); }

bool lex_less(const BasisState& a, const BasisState& b) {
  return lex_key(a.bits, a.n_sites) < lex_key(b.bits, b.n_sites);
}

Mask shift_mask(Mask bits, int n_sites, int k) {
  k %= n_sites;
  if (k < 0) k += n_sites;
  if (k == 0) return bits;
  const Mask m = full_mask(n_sites);
  return ((bits << k) | (bits >> (n_sites - k))) & m;
}

BasisState shift(const BasisState& state, int k) {
  return {shift_mask(state.bits, state.n_sites, k), state.n_sites};
}

bool has_adjacent_up(const BasisState& state) {
  return (state.bits & shift_mask(state.bits, state.n_sites, 1)) != 0;
}

std::string to_bitstring(const BasisState& state) {
  std::string out(static_cast<std::size_t>(state.n_sites), '0');
  for (int k = 0; k < state.n_sites; ++k) {
    if ((state.bits >> k) & 1U) out[static_cast<std::size_t>(k)] = '1';
  }
  return out;
}

BasisState from_bitstring(std::string_view bits) {
  if (bits.empty()) throw ValidationError("empty bitstring");
  if (bits.size() > static_cast<std::size_t>(kMaxSites)) {
    throw CapacityError("bitstring longer than the mask width");
  }
  BasisState s{0, static_cast<int>(bits.size())};
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] == '1') {
      s.bits |= Mask{1} << k;
    } else if (bits[k] != '0') {
      throw ValidationError("bitstring '" + std::string(bits) +
                            "' contains characters other than 0/1");
    }
  }
  return s;
}

std::uint64_t sector_size(const RingSpec& spec) {
  spec.validate();
  const int n = spec.n_sites;
  const int p = spec.n_up;
  if (!spec.forbid_adjacent_up) return binomial_checked(n, p);
  if (!spec.feasible()) return 0;
  if (p == 0) return 1;
  // Cyclic no-adjacent-ones strings: C(N-p, p) + C(N-p-1, p-1) = N/(N-p) * C(N-p, p).
  return binomial_checked(n - p, p) + binomial_checked(n - p - 1, p - 1);
}

std::vector<BasisState> enumerate_sector(const RingSpec& spec) {
  spec.validate();
  if (!spec.feasible()) {
    throw InfeasibleError("no configuration of " + std::to_string(spec.n_up) +
                          " non-adjacent up-spins fits on a " +
                          std::to_string(spec.n_sites) + "-site ring");
  }
  const std::uint64_t expected = sector_size(spec);
  if (expected > kMaxSectorSize) {
    throw CapacityError("sector of " + std::to_string(expected) +
                        " states exceeds the storage cap");
  }

  const int n = spec.n_sites;
  const int p = spec.n_up;
  std::vector<std::pair<Mask, Mask>> keyed;  // (lex key, bits)
  keyed.reserve(static_cast<std::size_t>(expected));

  auto admit = [&](Mask bits) {
    BasisState s{bits, n};
    if (spec.forbid_adjacent_up && has_adjacent_up(s)) return;
    keyed.emplace_back(lex_key(bits, n), bits);
  };

  if (p == 0) {
    admit(0);
  } else {
    const Mask limit = full_mask(n);
    Mask v = (Mask{1} << p) - 1;
    while (true) {
      admit(v);
      // Gosper's hack: next larger mask with the same popcount.
      const Mask c = v & (~v + 1);
      const Mask r = v + c;
      if (r == 0 || r > limit) break;
      const Mask next = (((r ^ v) >> 2) / c) | r;
      if (next > limit) break;
      v = next;
    }
  }

  std::sort(keyed.begin(), keyed.end());
  std::vector<BasisState> out;
  out.reserve(keyed.size());
  for (const auto& [key, bits] : keyed) out.push_back({bits, n});
  return out;
}

std::string dump_basis(std::span<const BasisState> basis) {
  std::ostringstream os;
  for (const auto& s : basis) os << to_bitstring(s) << '\n';
  return os.str();
}

const OrbitPosition& OrbitTable::locate(const BasisState& s) const {
  auto it = index.find(s.bits);
  if (it == index.end()) {
    throw ValidationError("state " + to_bitstring(s) + " is not in the orbit table");
  }
  return it->second;
}

OrbitTable build_orbits(std::span<const BasisState> basis) {
  OrbitTable table;
  std::unordered_map<Mask, bool> present;
  present.reserve(basis.size());
  for (const auto& s : basis) present.emplace(s.bits, true);

  std::vector<BasisState> sorted(basis.begin(), basis.end());
  std::sort(sorted.begin(), sorted.end(), lex_less);

  table.index.reserve(basis.size());
  for (const auto& s : sorted) {
    if (table.index.contains(s.bits)) continue;
    // First unseen state in lex order is the smallest member of its orbit.
    Orbit orbit{s, 0, {}};
    BasisState cur = s;
    do {
      if (!present.contains(cur.bits)) {
        throw ValidationError("basis is not closed under cyclic shifts: " +
                              to_bitstring(cur) + " missing");
      }
      table.index.emplace(cur.bits, OrbitPosition{table.orbits.size(), orbit.period});
      orbit.members.push_back(cur);
      ++orbit.period;
      cur = shift(cur, 1);
    } while (cur.bits != s.bits);
    table.orbits.push_back(std::move(orbit));
  }
  return table;
}

Sector::Sector(RingSpec spec) : spec_(spec), states_(enumerate_sector(spec)) {
  lookup_.reserve(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) lookup_.emplace(states_[i].bits, i);
  orbits_ = build_orbits(states_);
}

std::optional<std::size_t> Sector::find(Mask bits) const {
  auto it = lookup_.find(bits);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t Sector::index_of(Mask bits) const {
  if (auto i = find(bits)) return *i;
  throw ValidationError("state " + to_bitstring({bits, spec_.n_sites}) +
                        " is not in the sector");
}

}  // namespace ringent
