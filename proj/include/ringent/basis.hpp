#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ringent {

using Mask = std::uint64_t;

/// Largest ring representable in a 64-bit mask.
inline constexpr int kMaxSites = 63;

/// Ring of N sites with p up-spins; optionally forbids cyclically adjacent ups.
struct RingSpec {
  int n_sites = 0;
  int n_up = 0;
  bool forbid_adjacent_up = false;

  /// Throws CapacityError / ValidationError for malformed specs.
  void validate() const;
  /// False when forbid_adjacent_up leaves no admissible configuration.
  bool feasible() const;

  friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

/// Computational basis element. Bit k set means site k+1 carries an up-spin.
struct BasisState {
  Mask bits = 0;
  int n_sites = 0;

  int popcount() const;
  friend bool operator==(const BasisState&, const BasisState&) = default;
};

/// Lexicographic order of the site-1-leftmost bitstring.
bool lex_less(const BasisState& a, const BasisState& b);

/// Cyclic rotation carrying site i to site i+k (mod N).
BasisState shift(const BasisState& state, int k);
Mask shift_mask(Mask bits, int n_sites, int k);

bool has_adjacent_up(const BasisState& state);

/// "0101" style rendering, site 1 leftmost.
std::string to_bitstring(const BasisState& state);
BasisState from_bitstring(std::string_view bits);

/// Number of admissible configurations, without enumerating them.
std::uint64_t sector_size(const RingSpec& spec);

/// All basis states of the sector in lexicographic order.
std::vector<BasisState> enumerate_sector(const RingSpec& spec);

/// Newline-separated bitstrings, one per state.
std::string dump_basis(std::span<const BasisState> basis);

struct Orbit {
  BasisState representative;  // lexicographically smallest member
  int period = 0;
  std::vector<BasisState> members;  // members[t] == shift(representative, t)
};

struct OrbitPosition {
  std::size_t orbit = 0;
  int offset = 0;  // state == shift(representative, offset)
};

struct OrbitTable {
  std::vector<Orbit> orbits;
  std::unordered_map<Mask, OrbitPosition> index;

  const OrbitPosition& locate(const BasisState& s) const;
};

/// Partitions a shift-closed basis into translational orbits.
OrbitTable build_orbits(std::span<const BasisState> basis);

/// Enumerated sector with O(1) state lookup and its orbit table.
class Sector {
 public:
  explicit Sector(RingSpec spec);

  const RingSpec& spec() const noexcept { return spec_; }
  int n_sites() const noexcept { return spec_.n_sites; }
  std::size_t size() const noexcept { return states_.size(); }
  std::span<const BasisState> states() const noexcept { return states_; }
  const BasisState& state(std::size_t i) const { return states_.at(i); }

  std::optional<std::size_t> find(Mask bits) const;
  std::size_t index_of(Mask bits) const;

  const OrbitTable& orbits() const noexcept { return orbits_; }

 private:
  RingSpec spec_;
  std::vector<BasisState> states_;
  std::unordered_map<Mask, std::size_t> lookup_;
  OrbitTable orbits_;
};

}  // namespace ringent
