#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "ringent/eigensolver.hpp"
#include "ringent/entanglement.hpp"
#include "ringent/errors.hpp"
#include "ringent/spin_models.hpp"
#include "ringent/state_space.hpp"
#include "support.hpp"

using namespace ringent;
using doctest::Approx;

namespace {

RingState basis_vector(const RingSpec& spec, const char* bits) {
  auto sector = make_sector(spec);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sector->size()));
  v[static_cast<Eigen::Index>(sector->index_of(from_bitstring(bits).bits))] = 1.0;
  return RingState(sector, v);
}

// Random k = 0 state with real non-negative orbit amplitudes.
RingState random_invariant(const RingSpec& spec, std::mt19937_64& rng) {
  auto sector = make_sector(spec);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  OrbitState os{sector, {}, 0};
  for (std::size_t i = 0; i < sector->orbits().orbits.size(); ++i) os.orbit_amplitudes.emplace_back(u(rng));
  return expand(os);
}

// Removes the down-spin after every up-spin, reading from site 1.
std::string squeeze(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += s[i];
    if (s[i] == '1') ++i;
  }
  return out;
}

}  // namespace

TEST_CASE("RingState normalizes and rejects degenerate input") {
  auto sector = make_sector({2, 1, false});
  Eigen::VectorXcd v(2);
  v << 3.0, 4.0;
  const RingState s(sector, v);
  CHECK(s.amplitudes().norm() == Approx(1.0));
  // Lexicographic order puts "01" (mask 0b10) first.
  CHECK(std::abs(s.amplitude(0b10) - Complex(0.6)) < 1e-15);
  CHECK_THROWS_AS(RingState(sector, Eigen::VectorXcd::Zero(2)), ValidationError);
  CHECK_THROWS_AS(RingState(sector, Eigen::VectorXcd::Ones(3)), ValidationError);
  CHECK(s.amplitude(0b11) == Complex(0.0));
}

TEST_CASE("expand examples") {
  auto s4 = make_sector({4, 2, false});
  // orbits: 0011 (period 4), 0101 (period 2)
  const RingState alt = expand({s4, {0.0, 1.0}, 0});
  CHECK(std::abs(alt.amplitude(from_bitstring("0101").bits) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(alt.amplitude(from_bitstring("1010").bits) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(alt.amplitude(from_bitstring("0011").bits)) == 0.0);

  auto s2 = make_sector({2, 1, false});
  const RingState sym = expand({s2, {1.0}, 0});
  CHECK(sym.amplitude(0b01).real() == Approx(std::sqrt(0.5)));
  CHECK(sym.amplitude(0b10).real() == Approx(std::sqrt(0.5)));
  const RingState anti = expand({s2, {1.0}, 1});
  CHECK(std::abs(anti.amplitude(0b01) + anti.amplitude(0b10)) < 1e-15);
  CHECK(std::abs(anti.amplitude(0b01)) == Approx(std::sqrt(0.5)));
  // The antisymmetric combination is the singlet.
  CHECK(nearest_neighbor_concurrence(anti) == Approx(1.0));
}

TEST_CASE("expand rejects incompatible momentum") {
  auto s4 = make_sector({4, 2, false});
  CHECK_FALSE(momentum_compatible(4, 2, 1));
  CHECK(momentum_compatible(4, 2, 2));
  CHECK_THROWS_AS(expand({s4, {1.0, 1.0}, 1}), ValidationError);
  CHECK_NOTHROW(expand({s4, {1.0, 0.0}, 1}));
  CHECK_THROWS_AS(expand({s4, {1.0}, 0}), ValidationError);
}

TEST_CASE("read_orbits inverts expand; translation and momentum") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int n : {4, 5, 6, 8}) {
    auto sector = make_sector({n, 2, false});
    for (int k = 0; k < n; ++k) {
      OrbitState os{sector, {}, k};
      for (const auto& o : sector->orbits().orbits) {
        os.orbit_amplitudes.push_back(momentum_compatible(n, o.period, k) ? Complex(g(rng), g(rng))
                                                                         : Complex(0.0));
      }
      const RingState s = expand(os);
      CHECK(detect_momentum(s) == k);
      const OrbitState back = read_orbits(s, k);
      CHECK(expand(back).amplitudes().isApprox(s.amplitudes(), 1e-12));
      // psi(shift(s, 1)) = e^{2 pi i k / N} psi(s), so the translated state picks up the conjugate.
      const Complex phase = std::polar(1.0, -2.0 * M_PI * k / n);
      CHECK((translate(s, 1).amplitudes() - phase * s.amplitudes()).norm() < 1e-12);
      if (n > 4) CHECK_THROWS_AS(read_orbits(s, (k + 1) % n), ValidationError);
    }
  }
  const RingState lone = basis_vector({4, 2, false}, "0011");
  CHECK_FALSE(detect_momentum(lone).has_value());
  CHECK(to_bitstring(lone.sector().state(lone.sector().index_of(from_bitstring("0011").bits))) == "0011");
  CHECK(std::abs(translate(lone, 1).amplitude(from_bitstring("1001").bits)) == Approx(1.0));
}

TEST_CASE("deflate examples") {
  auto s41 = make_sector({4, 1, true});
  const RingState b = expand({s41, {1.0}, 0});
  const RingState d = deflate(b);
  CHECK(d.spec() == RingSpec{3, 1, false});
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(d.amplitudes()[static_cast<Eigen::Index>(i)].real() == Approx(1.0 / std::sqrt(3.0)));
  }
  // The explicit scale factor: d = sqrt(4/3) * b on representatives with site 1 up.
  CHECK(std::sqrt(4.0 / 3.0) * 0.5 == Approx(1.0 / std::sqrt(3.0)));

  const RingState n2 = expand({make_sector({2, 1, true}), {1.0}, 0});
  CHECK_THROWS_AS(deflate(n2), ValidationError);

  const RingState adj = expand({make_sector({4, 2, false}), {1.0, 0.0}, 0});
  CHECK_THROWS_AS(deflate(adj), ValidationError);

  const RingState complex_state = expand({s41, {Complex(0.0, 1.0)}, 0});
  CHECK_THROWS_AS(deflate(complex_state), ValidationError);

  // Non-invariant input.
  CHECK_THROWS_AS(deflate(basis_vector({5, 2, true}, "10100")), ValidationError);
}

TEST_CASE("deflate matches the explicit removal map and scale factor") {
  std::mt19937_64 rng(11);
  for (int n = 3; n <= 10; ++n) {
    for (int p = 1; p <= n / 2; ++p) {
      if (n - p < 2) continue;
      const RingState b = random_invariant({n, p, true}, rng);
      const RingState d = deflate(b);
      const double factor = std::sqrt(static_cast<double>(n) / (n - p));
      for (std::size_t i = 0; i < b.size(); ++i) {
        const std::string bits = to_bitstring(b.sector().state(i));
        if (bits[0] != '1') continue;
        const Complex expect = factor * b.amplitudes()[static_cast<Eigen::Index>(i)];
        CHECK(std::abs(d.amplitude(from_bitstring(squeeze(bits)).bits) - expect) < 1e-12);
      }
    }
  }
}

TEST_CASE("inflate and deflate are inverse") {
  std::mt19937_64 rng(3);
  for (int m = 2; m <= 8; ++m) {
    for (int p = 0; p <= m; ++p) {
      const RingState d = random_invariant({m, p, false}, rng);
      const RingState b = inflate(d);
      CHECK(b.spec() == RingSpec{m + p, p, true});
      for (std::size_t i = 0; i < b.size(); ++i) CHECK_FALSE(has_adjacent_up(b.sector().state(i)));
      CHECK(b.amplitudes().norm() == Approx(1.0));
      CHECK(detect_momentum(b) == 0);
      CHECK((deflate(b).amplitudes() - d.amplitudes()).norm() < 1e-12);
      CHECK((inflate(deflate(b)).amplitudes() - b.amplitudes()).norm() < 1e-12);
    }
  }
  // Uniform state on (3,1) inflates to the uniform constrained state on (4,1).
  const RingState u = inflate(expand({make_sector({3, 1, false}), {1.0}, 0}));
  CHECK(u.spec() == RingSpec{4, 1, true});
  for (std::size_t i = 0; i < 4; ++i) CHECK(u.amplitudes()[static_cast<Eigen::Index>(i)].real() == Approx(0.5));
  CHECK_THROWS_AS(inflate(basis_vector({5, 2, false}, "11000")), ValidationError);
}

TEST_CASE("an unconstrained-sector input with zero adjacent weight deflates") {
  std::mt19937_64 rng(5);
  const RingState b = random_invariant({7, 2, true}, rng);
  auto full = make_sector({7, 2, false});
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(full->size()));
  for (std::size_t i = 0; i < b.size(); ++i) {
    v[static_cast<Eigen::Index>(full->index_of(b.sector().state(i).bits))] = b.amplitudes()[static_cast<Eigen::Index>(i)];
  }
  CHECK((deflate(RingState(full, v)).amplitudes() - deflate(b).amplitudes()).norm() < 1e-12);
}

TEST_CASE("Marshall signs") {
  const RingState a = apply_marshall_signs(basis_vector({4, 2, false}, "0101"));
  CHECK(a.amplitude(from_bitstring("0101").bits).real() == Approx(1.0));
  const RingState b = apply_marshall_signs(basis_vector({4, 2, false}, "1010"));
  CHECK(b.amplitude(from_bitstring("1010").bits).real() == Approx(1.0));
  const RingState c = apply_marshall_signs(basis_vector({4, 2, false}, "0110"));
  CHECK(c.amplitude(from_bitstring("0110").bits).real() == Approx(-1.0));

  const auto h = build_heisenberg(4);
  const Eigen::MatrixXd dense = h.to_dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
  const Eigen::VectorXd g = es.eigenvectors().col(0);
  const RingState gs = to_ring_state(h, g);
  const RingState marshalled = apply_marshall_signs(gs);
  const double overlap = std::abs(marshalled.amplitudes().dot(gs.amplitudes()));
  CHECK(overlap == Approx(1.0).epsilon(1e-12));

  const RingState r = random_balanced_state(6, 2, 99);
  const RingState once = apply_marshall_signs(r);
  CHECK((apply_marshall_signs(once).amplitudes() - once.amplitudes()).norm() < 1e-15);
}

TEST_CASE("random balanced states") {
  for (int k = 0; k < 6; ++k) {
    const RingState s = random_balanced_state(6, k, 1234 + static_cast<std::uint64_t>(k));
    CHECK(s.spec() == RingSpec{6, 3, false});
    CHECK(detect_momentum(s) == k);
    CHECK(s.amplitudes().norm() == Approx(1.0));
  }
  CHECK(random_balanced_state(8, 3, 42).amplitudes() == random_balanced_state(8, 3, 42).amplitudes());
  CHECK_FALSE(random_balanced_state(8, 3, 42).amplitudes().isApprox(random_balanced_state(8, 3, 43).amplitudes()));
  CHECK_THROWS_AS(random_balanced_state(5, 0, 1), ValidationError);
}

TEST_CASE("state JSON round trip and validation") {
  const RingState s = random_balanced_state(6, 1, 8);
  const nlohmann::json doc = state_to_json(s);
  CHECK(doc.at("n") == 6);
  CHECK(doc.at("p") == 3);
  CHECK(doc.at("momentum") == 1);
  const RingState back = state_from_json(doc);
  CHECK((back.amplitudes() - s.amplitudes()).norm() < 1e-15);

  const auto path = (std::filesystem::temp_directory_path() / "ringent_state_test.json").string();
  write_state_file(s, path);
  CHECK((read_state_file(path).amplitudes() - s.amplitudes()).norm() < 1e-15);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_state_file("/nonexistent/nowhere.json"), Error);

  auto bad = doc;
  bad["amplitudes"][0]["bits"] = "111000x";
  CHECK_THROWS_AS(state_from_json(bad), ValidationError);
  bad = doc;
  bad["amplitudes"][0]["bits"] = "111100";
  CHECK_THROWS_AS(state_from_json(bad), ValidationError);
  bad = doc;
  bad["amplitudes"][1]["bits"] = doc["amplitudes"][0]["bits"];
  CHECK_THROWS_AS(state_from_json(bad), ValidationError);
  bad = doc;
  bad["momentum"] = 2;
  CHECK_THROWS_AS(state_from_json(bad), ValidationError);
  bad = doc;
  bad.erase("amplitudes");
  CHECK_THROWS_AS(state_from_json(bad), ValidationError);

  const nlohmann::json unnormalized = {
      {"n", 2}, {"p", 1}, {"amplitudes", {{{"bits", "10"}, {"re", 1.0}}, {{"bits", "01"}, {"re", 1.0}}}}};
  CHECK_THROWS_AS(state_from_json(unnormalized), ValidationError);

  const nlohmann::json constrained = {{"n", 4},
                                      {"p", 2},
                                      {"constraint", "no-adjacent-up"},
                                      {"amplitudes", {{{"bits", "1100"}, {"re", 1.0}}}}};
  CHECK_THROWS_AS(state_from_json(constrained), ValidationError);
}
