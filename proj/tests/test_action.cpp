#include "doctest.h"

#include <set>

#include "geoforge/action.hpp"
#include "geoforge/orbit.hpp"
#include "oracles.hpp"

using namespace geoforge;

TEST_CASE("natural groups") {
  CHECK(natural_group("sym", 5).group.order() == 120);
  CHECK(natural_group("alt", 5).group.order() == 60);
  CHECK(natural_group("alt", 8).group.order() == 20160);
  CHECK(natural_group("alt", 4).group.order() == 12);
  CHECK_THROWS_AS(natural_group("alt", 2), std::invalid_argument);
  CHECK_THROWS_AS(natural_group("dihedral", 5), std::invalid_argument);
  CHECK(natural_group("sym", 5).label(0) == "1");
}

TEST_CASE("affine group AGL(1,p)") {
  ActionSpace a = affine_group(5);
  CHECK(a.group.order() == 20);
  CHECK(a.group.is_transitive());
  CHECK(a.group.is_primitive());
  CHECK_THROWS_AS(affine_group(6), std::invalid_argument);
}

TEST_CASE("tuple codec round trip") {
  TupleCodec c{3, 4};
  for (Point p = 0; p < 81; ++p) CHECK(c.encode(c.decode(p)) == p);
  CHECK(c.encode({0, 0, 0, 0}) == 0);
  CHECK(c.decode(80) == std::vector<uint32_t>{2, 2, 2, 2});
}

TEST_CASE("perm rank/unrank, plain and alternating") {
  for (uint32_t m : {4u, 5u}) {
    auto all = oracles::all_perms(m, false);
    for (uint64_t r = 0; r < all.size(); ++r) {
      CHECK(perm_lex_unrank(m, perm_lex_rank(all[r], false), false) == all[r]);
    }
    auto even = oracles::all_perms(m, true);
    std::set<uint64_t> ranks;
    for (const Perm& p : even) {
      uint64_t r = perm_lex_rank(p, true);
      CHECK(perm_lex_unrank(m, r, true) == p);
      ranks.insert(r);
    }
    CHECK(ranks.size() == even.size());
    CHECK(*ranks.begin() == 0);
    CHECK(*ranks.rbegin() == even.size() - 1);
  }
  CHECK(perm_lex_rank(Perm(6), true) == 0);  // identity is point 0
}

TEST_CASE("wreath product action formula") {
  ActionSpace s3 = natural_group("sym", 3);
  ActionSpace w = wreath_product_action(s3, 2);
  TupleCodec c = std::get<TupleCodec>(w.codec);
  // (2,3) under ((1,2), id) with trivial coordinate part gives (1,3)
  const Perm& h1 = w.group.generators()[0];  // (1,2) of the component in coordinate 1
  Point p = c.encode({1, 2});                // 0-based digits of (2,3)
  CHECK(c.decode(h1[p]) == std::vector<uint32_t>{0, 2});
  // coordinate swap maps (2,3) to (3,2)
  const Perm& sw = w.group.generators().back();
  CHECK(c.decode(sw[p]) == std::vector<uint32_t>{2, 1});

  CHECK(w.group.order() == 72);  // |S3|^2 * 2
  CHECK(w.group.is_transitive());
}

TEST_CASE("wreath degree, order, primitivity") {
  ActionSpace s3 = natural_group("sym", 3);
  ActionSpace w4 = wreath_product_action(s3, 4);
  CHECK(w4.degree() == 81);
  CHECK(w4.group.order() == 31104);  // 6^4 * 24

  ActionSpace w2 = wreath_product_action(s3, 2);
  CHECK(w2.group.is_primitive());  // exhaustively small

  CHECK_THROWS_AS(wreath_product_action(natural_group("sym", 10), 6), ResourceError);
}

TEST_CASE("hs action structure at m=5") {
  HsAction hs = hs_action(5);
  CHECK(hs.space.degree() == 60);
  CHECK(hs.space.group.order() == 3600);
  GroupElemCodec c = std::get<GroupElemCodec>(hs.space.codec);

  // the identity point is fixed by every diagonal element (g, g)
  ActionSpace t = natural_group("alt", 5);
  Point id_pt = c.encode(Perm(5));
  CHECK(id_pt == 0);
  for (const Perm& g : t.group.generators()) {
    // build the diagonal action t -> g^-1 t g as a composition of the
    // corresponding left and right generators
    Perm gi = g.inverse();
    std::vector<Point> diag(60);
    for (Point p = 0; p < 60; ++p)
      diag[p] = c.encode(compose(compose(gi, c.decode(p)), g));
    Perm d{diag};
    CHECK(d[id_pt] == id_pt);
    CHECK(hs.space.group.contains(d));
  }

  // sigma inverts: (1,2,3) -> (1,3,2), and fixes the involution (1,2)(3,4)
  Point p123 = c.encode(Perm::from_cycles("(1,2,3)", 5));
  Point p132 = c.encode(Perm::from_cycles("(1,3,2)", 5));
  Point inv2 = c.encode(Perm::from_cycles("(1,2)(3,4)", 5));
  CHECK(hs.sigma[p123] == p132);
  CHECK(hs.sigma[inv2] == inv2);

  // stabilizer of the identity point is the diagonal, order |T|
  CHECK(hs.space.group.stabilizer({id_pt}).order() == 60);

  // orbit of x1 under the stabilizer of x0 is the conjugacy class of
  // (1,2)(3,4), of size 15 (brute-forced)
  PermGroup st = hs.space.group.stabilizer({id_pt});
  PointOrbit orb(60, st.generators(), inv2);
  CHECK(oracles::alt_class_size(5, Perm::from_cycles("(1,2)(3,4)", 5)) == 15);
  CHECK(orb.size() == 15);

  // two-point stabilizer has the order of the centralizer of (1,2)(3,4)
  CHECK(oracles::alt_centralizer(5, Perm::from_cycles("(1,2)(3,4)", 5)).size() == 4);
  CHECK(hs.space.group.stabilizer({id_pt, inv2}).order() == 4);

  // joint generation: <G_x0, G_x1> is the whole group
  auto a = st.generators();
  auto b = hs.space.group.stabilizer({inv2}).generators();
  CHECK(generates_whole(hs.space.group, a, b));
}

TEST_CASE("seed sequences") {
  CHECK(as_seed_points(5, 3) == std::vector<Point>{0, 1, 2});
  CHECK_THROWS_AS(as_seed_points(5, 4), std::invalid_argument);

  TupleCodec c{3, 8};
  Point s2 = pa_seed_point(c, 2);
  CHECK(c.decode(s2) == std::vector<uint32_t>{0, 0, 0, 0, 1, 1, 1, 1});
  CHECK_THROWS_AS(pa_seed_point(c, 4), std::invalid_argument);

  CHECK(hs_seed_perm(8, 2) == Perm::from_cycles("(1,2)(3,4)(5,6)(7,8)", 8));
  CHECK(hs_seed_perm(5, 0).is_identity());
  CHECK_THROWS_AS(hs_seed_perm(5, 2), std::invalid_argument);
}

TEST_CASE("nongamma_count") {
  std::vector<uint32_t> x{0, 1, 0, 0, 1};  // (alpha, beta, alpha, alpha, beta)
  CHECK(nongamma_count(x, 0, 1, 4) == 1);
  CHECK(nongamma_count(x, 7, 2, 4) == 3);  // absent value counts everything
  TupleCodec c{3, 8};
  auto seed = c.decode(pa_seed_point(c, 2));
  CHECK(nongamma_count(seed, 1, 5, 8) == 0);
  CHECK_THROWS_AS(nongamma_count(x, 0, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(nongamma_count(x, 0, 1, 9), std::invalid_argument);
}
