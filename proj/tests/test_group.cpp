#include "doctest.h"

#include <algorithm>

#include "geoforge/group.hpp"
#include "geoforge/orbit.hpp"
#include "geoforge/rng.hpp"
#include "oracles.hpp"

using namespace geoforge;

namespace {

PermGroup sym(uint32_t m) {
  std::vector<Perm> gens{Perm::from_cycles("(1,2)", m)};
  std::string cyc = "(1";
  for (uint32_t i = 2; i <= m; ++i) cyc += "," + std::to_string(i);
  cyc += ")";
  gens.push_back(Perm::from_cycles(cyc, m));
  return PermGroup(m, gens);
}

PermGroup cyclic4() {
  return PermGroup(4, {Perm::from_cycles("(1,2,3,4)", 4)});
}

}  // namespace

TEST_CASE("chain order matches exhaustive enumeration on small groups") {
  auto check = [](const PermGroup& g) {
    auto elems = oracles::enumerate_group(g.degree(), g.generators());
    CHECK(g.order() == elems.size());
    for (const Perm& gen : g.generators()) CHECK(g.contains(gen));
  };
  check(sym(3));
  check(sym(5));
  check(cyclic4());
  check(PermGroup(6, {Perm::from_cycles("(1,2,3)", 6), Perm::from_cycles("(4,5,6)", 6)}));
  // S5 order
  CHECK(sym(5).order() == 120);
  CHECK(sym(7).order() == 5040);
}

TEST_CASE("membership: random words in and random non-members out") {
  PermGroup g = sym(5);
  CounterRng rng(12345);
  const auto& gens = g.generators();
  for (int i = 0; i < 100; ++i) {
    Perm w(5);
    size_t len = 1 + rng.below(12);
    for (size_t k = 0; k < len; ++k) w = compose(w, gens[rng.below(gens.size())]);
    CHECK(g.contains(w));
  }
  // random permutations whose element order does not divide |G| are
  // non-members by Lagrange
  PermGroup c4(5, {Perm::from_cycles("(1,2,3,4)", 5)});
  CHECK(c4.order() == 4);
  int found = 0;
  for (int i = 0; i < 2000 && found < 100; ++i) {
    std::vector<Point> img(5);
    for (int k = 0; k < 5; ++k) img[k] = k;
    for (int k = 4; k > 0; --k) std::swap(img[k], img[rng.below(k + 1)]);
    Perm p{img};
    if (c4.order() % p.element_order() != 0) {
      ++found;
      CHECK(!c4.contains(p));
    }
  }
  CHECK(found == 100);
}

TEST_CASE("stabilizer orders and index law") {
  PermGroup s5 = sym(5);
  PermGroup st = s5.stabilizer({0});
  CHECK(st.order() == 24);
  for (const Perm& g : st.generators()) CHECK(g[0] == 0);

  // index law over every point for a few groups
  for (const PermGroup& g : {sym(4), sym(5), cyclic4()}) {
    for (Point p = 0; p < g.degree(); ++p) {
      PointOrbit orb(g.degree(), g.generators(), p);
      CHECK(g.order() == g.stabilizer({p}).order() * orb.size());
    }
  }

  // two-point stabilizer of S5 has order 6
  CHECK(s5.stabilizer({0, 1}).order() == 6);
}

TEST_CASE("orbit partition property and witnesses") {
  PermGroup s5 = sym(5);
  PointOrbit o1(5, s5.generators(), 1);
  CHECK(o1.size() == 5);  // transitivity
  PermGroup st = s5.stabilizer({0});
  PointOrbit o2(5, st.generators(), 1);
  CHECK(o2.size() == 4);  // {2,3,4,5} in 1-based labels
  CHECK(!o2.contains(0));

  // same orbit -> identical point sets
  for (Point s : o2.points()) {
    PointOrbit o3(5, st.generators(), s);
    CHECK(o3.points().size() == o2.points().size());
    auto a = o3.points(), b = o2.points();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
  }

  // witness property: seed^w = member
  for (Point m : o1.points()) {
    Perm w = o1.witness(m);
    CHECK(w[o1.seed()] == m);
    CHECK(o1.witness_apply(m, o1.seed()) == m);
    CHECK(o1.witness_inv_apply(m, m) == o1.seed());
  }
}

TEST_CASE("deterministic replay") {
  auto gens = sym(6).generators();
  StabilizerChain c1(6, gens), c2(6, gens);
  CHECK(c1.base() == c2.base());
  CHECK(c1.num_levels() == c2.num_levels());
  CHECK(c1.strong_size() == c2.strong_size());
  for (size_t l = 0; l < c1.num_levels(); ++l)
    CHECK(c1.orbit_points(l) == c2.orbit_points(l));
}

TEST_CASE("transitivity and primitivity") {
  CHECK(sym(5).is_transitive());
  CHECK(sym(5).is_primitive());
  PermGroup c4 = cyclic4();
  CHECK(c4.is_transitive());
  CHECK(!c4.is_primitive());
  auto block = c4.find_block();
  REQUIRE(block.has_value());
  // blocks of <(1,2,3,4)> containing 1 are {1,3} (0-based {0,2})
  CHECK(block->size() == 2);
  CHECK((*block)[0] == 0);
  CHECK((*block)[1] == 2);
  CHECK(oracles::is_block(c4.generators(), *block, 4));

  PermGroup intrans(4, {Perm::from_cycles("(1,2)", 4)});
  CHECK(!intrans.is_transitive());
  CHECK_THROWS_AS(intrans.is_primitive(), std::invalid_argument);
}

TEST_CASE("generates_whole") {
  PermGroup s5 = sym(5);
  auto a = s5.stabilizer({0}).generators();
  auto b = s5.stabilizer({1}).generators();
  CHECK(generates_whole(s5, a, b));

  PermGroup c4 = cyclic4();
  auto t = PermGroup::trivial(4).generators();
  CHECK(!generates_whole(c4, t, t));

  // generators outside the group are rejected
  CHECK_THROWS_AS(generates_whole(c4, {Perm::from_cycles("(1,2)", 4)}, {}),
                  std::invalid_argument);
}

TEST_CASE("base prefix chains") {
  auto gens = sym(5).generators();
  ChainOptions opt;
  opt.base_prefix = {2, 0};
  StabilizerChain ch(5, gens, opt);
  REQUIRE(ch.num_levels() >= 2);
  CHECK(ch.base()[0] == 2);
  CHECK(ch.base()[1] == 0);
  CHECK(ch.order() == 120);
  CHECK(ch.order_from(1) == 24);
  CHECK(ch.order_from(2) == 6);
}

TEST_CASE("schreier-vector mode produces the same chain orders") {
  auto gens = sym(6).generators();
  ChainOptions tiny;
  tiny.explicit_entry_budget = 1;  // force Schreier-vector mode
  StabilizerChain compact(6, gens, tiny);
  StabilizerChain full(6, gens);
  CHECK(compact.order() == full.order());
  CHECK(compact.base() == full.base());
  for (const Perm& g : gens) CHECK(compact.contains(g));

  std::vector<Perm> a6{Perm::from_cycles("(1,2,3)", 6), Perm::from_cycles("(2,3,4,5,6)", 6)};
  StabilizerChain alt(6, a6, tiny);
  CHECK(alt.order() == 360);
  CHECK(!alt.contains(Perm::from_cycles("(1,2)", 6)));
}

TEST_CASE("trivial group") {
  PermGroup t = PermGroup::trivial(5);
  CHECK(t.order() == 1);
  CHECK(t.contains(Perm(5)));
  CHECK(!t.contains(Perm::from_cycles("(1,2)", 5)));
}

TEST_CASE("reduce_generators keeps the group") {
  PermGroup s5 = sym(5);
  std::vector<Perm> bloated = s5.generators();
  bloated.push_back(compose(bloated[0], bloated[1]));
  bloated.push_back(Perm(5));
  bloated.push_back(bloated[0]);
  auto reduced = reduce_generators(5, bloated);
  CHECK(reduced.size() <= 3);
  StabilizerChain ch(5, reduced);
  CHECK(ch.order() == 120);
}
