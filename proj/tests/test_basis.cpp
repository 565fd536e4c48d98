#include <doctest.h>

#include <algorithm>
#include <set>

#include "ringent/basis.hpp"
#include "ringent/errors.hpp"
#include "support.hpp"

using namespace ringent;

namespace {

BasisState bs(const char* s) { return from_bitstring(s); }

std::vector<std::string> strings(const std::vector<BasisState>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(to_bitstring(s));
  return out;
}

}  // namespace

TEST_CASE("bitstring convention: bit k is site k+1, site 1 leftmost") {
  const BasisState s = bs("1000");
  CHECK(s.bits == 1U);
  CHECK(s.n_sites == 4);
  CHECK(to_bitstring(BasisState{0b0110, 4}) == "0110");
  CHECK(to_bitstring(BasisState{0b1000, 4}) == "0001");
  CHECK_THROWS_AS(from_bitstring("01x1"), ValidationError);
  CHECK_THROWS_AS(from_bitstring(""), ValidationError);
}

TEST_CASE("enumerate_sector sizes and order") {
  const auto full = enumerate_sector({4, 2, false});
  CHECK(strings(full) == std::vector<std::string>{"0011", "0101", "0110", "1001", "1010", "1100"});

  const auto alt = enumerate_sector({4, 2, true});
  CHECK(strings(alt) == std::vector<std::string>{"0101", "1010"});

  CHECK(enumerate_sector({7, 2, true}).size() == 14);
  CHECK(enumerate_sector({1, 0, false}).size() == 1);
  CHECK(enumerate_sector({5, 5, false}).size() == 1);
}

TEST_CASE("enumerate_sector matches a brute-force scan of all masks") {
  for (int n = 1; n <= 12; ++n) {
    for (int p = 0; p <= n; ++p) {
      for (bool forbid : {false, true}) {
        const RingSpec spec{n, p, forbid};
        std::vector<std::string> brute;
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
          if (testing::popcount(m) != p) continue;
          if (forbid && testing::cyclic_adjacent(m, n)) continue;
          brute.push_back(to_bitstring(BasisState{m, n}));
        }
        std::sort(brute.begin(), brute.end());
        if (!spec.feasible()) {
          CHECK(brute.empty());
          CHECK_THROWS_AS(enumerate_sector(spec), InfeasibleError);
          CHECK(sector_size(spec) == 0);
          continue;
        }
        CAPTURE(n);
        CAPTURE(p);
        CAPTURE(forbid);
        const auto got = enumerate_sector(spec);
        CHECK(strings(got) == brute);
        CHECK(sector_size(spec) == brute.size());
      }
    }
  }
}

TEST_CASE("sector_size closed forms") {
  CHECK(sector_size({4, 2, false}) == 6);
  CHECK(sector_size({20, 10, false}) == 184756);
  CHECK(sector_size({62, 31, false}) == 465428353255261088ULL);
  // N/(N-p) C(N-p, p)
  CHECK(sector_size({7, 2, true}) == 7 * 10 / 5);
  CHECK(sector_size({12, 4, true}) == 12 * 70 / 8);
}

TEST_CASE("spec validation and capacity") {
  CHECK_THROWS_AS(RingSpec({0, 0, false}).validate(), ValidationError);
  CHECK_THROWS_AS(RingSpec({4, 5, false}).validate(), ValidationError);
  CHECK_THROWS_AS(RingSpec({4, -1, false}).validate(), ValidationError);
  CHECK_THROWS_AS(RingSpec({64, 2, false}).validate(), CapacityError);
  CHECK_NOTHROW(RingSpec({63, 2, false}).validate());
  CHECK_THROWS_AS(enumerate_sector({40, 20, false}), CapacityError);
  CHECK_FALSE(RingSpec({4, 3, true}).feasible());
  CHECK(RingSpec({4, 3, false}).feasible());
}

TEST_CASE("shift") {
  // Mask literals, bit 0 rightmost: rotation carries bit j to bit j+k.
  CHECK(shift_mask(0b0011, 4, 1) == 0b0110);
  CHECK(shift(BasisState{0b1010, 4}, 1) == BasisState{0b0101, 4});
  // The same moves in site-1-leftmost strings.
  CHECK(to_bitstring(shift(bs("0011"), 1)) == "1001");
  CHECK(to_bitstring(shift(bs("1100"), 1)) == "0110");
  CHECK(to_bitstring(shift(bs("1010"), 1)) == "0101");
  CHECK(to_bitstring(shift(bs("1000"), -1)) == "0001");
  for (const auto& s : enumerate_sector({7, 3, false})) {
    CHECK(shift(s, 7) == s);
    CHECK(shift(s, 0) == s);
    for (int k = 0; k < 7; ++k) {
      CHECK(shift(shift(s, k), 7 - k) == s);
      CHECK(shift(s, k).popcount() == 3);
      CHECK(has_adjacent_up(shift(s, k)) == has_adjacent_up(s));
    }
  }
  CHECK(shift_mask(1ULL << 62, 63, 1) == 1ULL);
}

TEST_CASE("has_adjacent_up") {
  CHECK(has_adjacent_up(bs("0110")));
  CHECK_FALSE(has_adjacent_up(bs("0101")));
  CHECK(has_adjacent_up(bs("1001")));
  CHECK(has_adjacent_up(bs("11")));
  CHECK(has_adjacent_up(bs("1")));  // a one-site ring is its own neighbour
  for (std::uint64_t m = 0; m < 512; ++m) {
    CHECK(has_adjacent_up(BasisState{m, 9}) == testing::cyclic_adjacent(m, 9));
  }
}

TEST_CASE("build_orbits") {
  const auto basis = enumerate_sector({4, 2, false});
  const OrbitTable t = build_orbits(basis);
  REQUIRE(t.orbits.size() == 2);
  CHECK(to_bitstring(t.orbits[0].representative) == "0011");
  CHECK(t.orbits[0].period == 4);
  CHECK(to_bitstring(t.orbits[1].representative) == "0101");
  CHECK(t.orbits[1].period == 2);

  const auto two = build_orbits(enumerate_sector({2, 1, false}));
  REQUIRE(two.orbits.size() == 1);
  CHECK(two.orbits[0].period == 2);

  const auto seven = build_orbits(enumerate_sector({7, 2, true}));
  REQUIRE(seven.orbits.size() == 2);
  CHECK(seven.orbits[0].period == 7);
  CHECK(seven.orbits[1].period == 7);

  CHECK_THROWS_AS(build_orbits(std::vector<BasisState>{bs("0011")}), ValidationError);
}

TEST_CASE("orbit invariants over many sectors") {
  for (int n = 1; n <= 12; ++n) {
    for (int p = 0; p <= n; ++p) {
      for (bool forbid : {false, true}) {
        const RingSpec spec{n, p, forbid};
        if (!spec.feasible()) continue;
        const auto basis = enumerate_sector(spec);
        const auto t = build_orbits(basis);
        std::size_t total = 0;
        std::set<Mask> seen;
        for (std::size_t o = 0; o < t.orbits.size(); ++o) {
          const auto& orb = t.orbits[o];
          CHECK(n % orb.period == 0);
          total += static_cast<std::size_t>(orb.period);
          CHECK(static_cast<int>(orb.members.size()) == orb.period);
          for (int k = 0; k < orb.period; ++k) {
            CHECK(orb.members[static_cast<std::size_t>(k)] == shift(orb.representative, k));
            CHECK_FALSE(lex_less(orb.members[static_cast<std::size_t>(k)], orb.representative));
            CHECK(seen.insert(orb.members[static_cast<std::size_t>(k)].bits).second);
            const auto& pos = t.locate(orb.members[static_cast<std::size_t>(k)]);
            CHECK(pos.orbit == o);
            CHECK(pos.offset == k);
          }
          CHECK(shift(orb.representative, orb.period) == orb.representative);
        }
        CHECK(total == basis.size());
      }
    }
  }
}

TEST_CASE("constrained sector is a subset of the unconstrained one") {
  for (int n = 2; n <= 12; ++n) {
    for (int p = 0; p <= n / 2; ++p) {
      const auto full = enumerate_sector({n, p, false});
      std::set<Mask> all;
      for (const auto& s : full) all.insert(s.bits);
      for (const auto& s : enumerate_sector({n, p, true})) CHECK(all.count(s.bits) == 1);
    }
  }
}

TEST_CASE("Sector lookup") {
  const Sector sector({6, 3, false});
  CHECK(sector.size() == 20);
  for (std::size_t i = 0; i < sector.size(); ++i) {
    CHECK(sector.index_of(sector.state(i).bits) == i);
  }
  CHECK_FALSE(sector.find(0b111111).has_value());
  CHECK_THROWS_AS(sector.index_of(0b1), ValidationError);
  CHECK(dump_basis(Sector({4, 2, true}).states()) == "0101\n1010\n");
}
