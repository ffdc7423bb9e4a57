#include "crossidf/enumerate.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "crossidf/polyalg.hpp"

namespace {

using namespace crossidf;

std::vector<std::uint64_t> words_of(const std::vector<Design>& ds) {
  std::vector<std::uint64_t> w;
  for (const auto& d : ds) w.push_back(d.word());
  return w;
}

const std::vector<Design>& solutions24() {
  static const std::vector<Design> sols =
      enumerate_designs(build_constraints(FactorSpec::default_instance(), 24), 2);
  return sols;
}

}  // namespace

TEST_CASE("build_constraints lists every free triple") {
  const auto cs = build_constraints(FactorSpec::default_instance(), 24);
  CHECK(cs.runs == 24);
  CHECK(cs.require_uniform.size() == 20);  // C(6,3)
  CHECK(cs.forbid_uniform.empty());
  std::set<std::vector<int>> seen;
  for (const auto& c : cs.require_uniform) {
    CHECK_FALSE(c.star);
    CHECK(c.T.size() == 3);
    CHECK(std::is_sorted(c.T.begin(), c.T.end()));
    seen.insert(c.T);
  }
  CHECK(seen.size() == 20);
}

TEST_CASE("build_constraints validates the run count") {
  const auto spec = FactorSpec::default_instance();
  CHECK_THROWS_AS(build_constraints(spec, 12), std::invalid_argument);
  CHECK_THROWS_AS(build_constraints(spec, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_constraints(spec, -8), std::invalid_argument);
  CHECK_THROWS_AS(build_constraints(spec, 72), std::invalid_argument);
  CHECK_NOTHROW(build_constraints(spec, 64));
}

TEST_CASE("coefficient facts of the 24-run constraints") {
  const auto f = coefficient_constraints(24);
  CHECK(f.theta_empty == Rat(3, 8));
  CHECK(f.zero_weights == std::vector<int>{1, 2, 3, 5, 6});
  CHECK(f.free_weight == 4);
  CHECK(f.pinned_count == 42);
  CHECK(f.derived_count == 7);
  CHECK(f.free_count == 15);
  // Bookkeeping closes: 2^6 coefficients in total.
  CHECK(f.pinned_count + f.derived_count + f.free_count == 64);
  CHECK_THROWS_AS(coefficient_constraints(16), std::invalid_argument);
  CHECK_THROWS_AS(coefficient_constraints(32), std::invalid_argument);
}

TEST_CASE("24-run enumeration finds 192 fractions") {
  const auto& sols = solutions24();
  REQUIRE(sols.size() == 192);
  auto words = words_of(sols);
  CHECK(std::is_sorted(words.begin(), words.end()));
  CHECK(std::set<std::uint64_t>(words.begin(), words.end()).size() == 192);
  for (const auto& d : sols) CHECK(d.run_count() == 24);
}

TEST_CASE("solution coefficients live on weights 0 and 4") {
  const auto& sols = solutions24();
  for (const auto& d : {sols.front(), sols[100], sols.back()}) {
    const auto p = coeffs_from_response01(d.u, 6);
    CHECK(p.coeff(0) == Rat(3, 8));
    CHECK(p.coeffs.size() == 16);
    for (const auto& [mono, v] : p.coeffs) {
      const int w = weight(mono);
      CHECK((w == 0 || w == 4));
      if (w == 4) CHECK((v == Rat(1, 8) || v == Rat(-1, 8)));
    }
  }
}

TEST_CASE("enumeration result is worker-count invariant") {
  const auto cs = build_constraints(FactorSpec::default_instance(), 24);
  const auto base = words_of(enumerate_designs(cs, 1));
  CHECK(words_of(enumerate_designs(cs, 3)) == base);
  CHECK(words_of(enumerate_designs(cs, 8)) == base);
}

TEST_CASE("degenerate run counts") {
  const auto spec = FactorSpec::default_instance();
  // All free triples uniform with one point per control cell is infeasible.
  CHECK(enumerate_designs(build_constraints(spec, 8), 1).empty());
  // The full factorial is the unique 64-run fraction.
  const auto full = enumerate_designs(build_constraints(spec, 64), 1);
  REQUIRE(full.size() == 1);
  CHECK(full[0].word() == ~std::uint64_t{0});
}

TEST_CASE("enumeration handles a noise-free spec") {
  FactorSpec plain;
  plain.control_count = 3;
  plain.noise_count = 0;
  plain.generator_count = 3;
  const auto sols = enumerate_designs(build_constraints(plain, 8), 1);
  REQUIRE(sols.size() == 1);
  CHECK(sols[0].word() == 0xffull);
}

TEST_CASE("extra star constraints narrow and forbid filters keep") {
  auto cs = build_constraints(FactorSpec::default_instance(), 24);
  cs.require_uniform.push_back({{1, 6, 7}, true});
  CHECK(enumerate_designs(cs, 2).empty());

  auto with_forbid = build_constraints(FactorSpec::default_instance(), 24);
  with_forbid.forbid_uniform.push_back({{1, 6, 7}, true});
  // Every solution already breaks that marginal, so nothing is dropped.
  CHECK(enumerate_designs(with_forbid, 2).size() == 192);
}

TEST_CASE("symmetry group: order, identity, action consistency") {
  const auto& g = symmetry_group();
  REQUIRE(g.size() == 2304);
  CHECK(g[0].eps == std::array<int, 6>{1, 1, 1, 1, 1, 1});
  CHECK(g[0].sigma == std::array<int, 3>{0, 1, 2});
  CHECK(g[0].tau == std::array<int, 3>{0, 1, 2});

  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
  const auto spec = FactorSpec::default_instance();
  for (int rep = 0; rep < 20; ++rep) {
    const std::uint64_t w = (std::uint64_t{rng()} << 32) | rng();
    const auto& e = g[pick(rng)];
    CHECK(apply_group(e, Design::from_word(spec, w)).word() == apply_group_word(e, w));
    CHECK(apply_group_word(g[0], w) == w);
  }
}

TEST_CASE("group images preserve run count and the constraint set") {
  const auto& sols = solutions24();
  const std::set<std::uint64_t> sol_set(words_of(sols).begin(), words_of(sols).end());
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, symmetry_group().size() - 1);
  for (int rep = 0; rep < 40; ++rep) {
    const auto& e = symmetry_group()[pick(rng)];
    const auto& d = sols[rep % sols.size()];
    const std::uint64_t img = apply_group_word(e, d.word());
    CHECK(sol_set.count(img) == 1);
  }
}

TEST_CASE("all 192 solutions form a single orbit") {
  const auto& sols = solutions24();
  const auto part = classify_orbits(sols);
  REQUIRE(part.orbits.size() == 1);
  CHECK(part.orbits[0].size() == 192);
  CHECK(part.stabilizer_orders == std::vector<int>{12});
  CHECK(part.canonical == std::vector<std::uint64_t>{0x1698a443c2251968ull});
  for (const auto& d : {sols.front(), sols[50]})
    CHECK(canonical_word(d) == 0x1698a443c2251968ull);

  const auto orbit = orbit_of(sols[0]);
  CHECK(orbit.size() == 192);
  CHECK(orbit == words_of(sols));
}

TEST_CASE("classify_orbits on the full factorial") {
  const Design full =
      Design::from_word(FactorSpec::default_instance(), ~std::uint64_t{0});
  const auto part = classify_orbits({full});
  REQUIRE(part.orbits.size() == 1);
  CHECK(part.orbits[0] == std::vector<int>{0});
  CHECK(part.canonical[0] == ~std::uint64_t{0});
  CHECK(part.stabilizer_orders[0] == 2304);
  CHECK(orbit_of(full) == std::vector<std::uint64_t>{~std::uint64_t{0}});
}

TEST_CASE("the central sign flip fixes every solution") {
  GroupElement flip;
  flip.eps = {-1, -1, -1, -1, -1, -1};
  flip.sigma = {0, 1, 2};
  flip.tau = {0, 1, 2};
  for (const auto& d : solutions24())
    CHECK(apply_group_word(flip, d.word()) == d.word());
}

TEST_CASE("anchored representatives") {
  const auto& sols = solutions24();
  const auto anchors = default_anchors();
  const auto reps = canonical_reps(sols, anchors);
  REQUIRE(reps.size() == 12);
  for (const auto& r : reps) {
    CHECK(r.u[0] == 1);  // (-1,...,-1)
    CHECK(r.u[1] == 1);  // (-1,...,-1,+1)
  }
  // Input order is preserved.
  auto rep_words = words_of(reps);
  CHECK(std::is_sorted(rep_words.begin(), rep_words.end()));

  CHECK(canonical_reps({}, anchors).empty());
  CHECK_THROWS_AS(canonical_reps(sols, {{-1, -1}}), std::invalid_argument);
  // Anchoring on every point of one solution singles out that solution.
  CHECK(canonical_reps(sols, sols[0].points(false)).size() == 1);
}

TEST_CASE("relation-forced halves: each (1,6,7) slice splits 6 into even parts") {
  // With uniform (1,7) pair marginals, the two x6 cells of a slice hold 6
  // points between them, in even parts only.
  const std::set<std::pair<long, long>> allowed = {{6, 0}, {4, 2}, {2, 4}, {0, 6}};
  for (const auto& d : solutions24()) {
    const auto m = marginal(d, {1, 6, 7}, true);
    for (int i1 = 0; i1 < 2; ++i1)
      for (int j = 0; j < 2; ++j) {
        const long lo = m.counts[4 * i1 + j];
        const long hi = m.counts[4 * i1 + 2 + j];
        CHECK(allowed.count({lo, hi}) == 1);
      }
  }
}

TEST_CASE("group action rejects other free-factor shapes") {
  FactorSpec plain;
  plain.control_count = 3;
  plain.noise_count = 0;
  plain.generator_count = 3;
  const Design d = Design::from_word(plain, 0xff);
  CHECK_THROWS_AS(canonical_word(d), std::invalid_argument);
  CHECK_THROWS_AS(orbit_of(d), std::invalid_argument);
}
