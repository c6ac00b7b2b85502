#include "doctest.h"

#include "geoforge/geometry.hpp"

using namespace geoforge;

namespace {

// the rank-2 "all distinct pairs" pregeometry on two copies of {1..m}
Pregeometry distinct_pairs(uint32_t m) {
  Pregeometry g({1, 2}, {m, m});
  for (uint32_t i = 0; i < m; ++i)
    for (uint32_t j = 0; j < m; ++j)
      if (i != j) g.add_edge({0, i}, {1, j});
  g.finalize_edges();
  return g;
}

Pregeometry complete_bipartite(uint32_t a, uint32_t b) {
  Pregeometry g({1, 2}, {a, b});
  for (uint32_t i = 0; i < a; ++i)
    for (uint32_t j = 0; j < b; ++j) g.add_edge({0, i}, {1, j});
  g.finalize_edges();
  return g;
}

}  // namespace

TEST_CASE("rank1 pregeometries") {
  Pregeometry g = Pregeometry::rank1(5);
  CHECK(g.rank() == 1);
  CHECK(g.edge_count() == 0);
  CHECK(enumerate_chambers(g).size() == 5);
  CHECK(is_geometry_exhaustive(g));
  CHECK(enumerate_chambers(Pregeometry::rank1(1)).size() == 1);
}

TEST_CASE("flags, chambers, geometry and thickness on the distinct-pairs model") {
  // three copies of 5 points, incidence = distinct underlying points
  Pregeometry g({1, 2, 3}, {5, 5, 5});
  for (uint32_t t1 = 0; t1 < 3; ++t1)
    for (uint32_t t2 = t1 + 1; t2 < 3; ++t2)
      for (uint32_t i = 0; i < 5; ++i)
        for (uint32_t j = 0; j < 5; ++j)
          if (i != j) g.add_edge({t1, i}, {t2, j});
  g.finalize_edges();

  CHECK(enumerate_chambers(g).size() == 60);  // 5*4*3 ordered triples
  CHECK(chambers_containing(g, {}) == 60);
  CHECK(is_geometry_exhaustive(g));
  CHECK(is_thick_exhaustive(g));
  CHECK(is_connected(g));
  for (uint32_t t1 = 0; t1 < 3; ++t1)
    for (uint32_t t2 = t1 + 1; t2 < 3; ++t2) CHECK(pair_connected(g, t1, t2));

  // a co-rank-1 flag {x1, x2} lies in |Omega \ {x1,x2}| = 3 chambers
  CHECK(chambers_containing(g, {{0, 0}, {1, 1}}) == 3);

  // residue of a type-3 element: two sides of 4 elements each
  Pregeometry res = residue(g, {{2, 2}});
  CHECK(res.rank() == 2);
  CHECK(res.size(0) == 4);
  CHECK(res.size(1) == 4);
  CHECK(!is_complete_bipartite(res));

  // residue of a chamber is empty
  CHECK_THROWS_AS(residue(g, Flag{{0, 0}, {1, 1}, {2, 2}}), std::invalid_argument);

  // truncations
  Pregeometry tr = truncation(g, {1, 2});
  CHECK(tr.rank() == 2);
  CHECK(tr.edge_count() == 20);
  CHECK(pair_connected(tr, 0, 1));
  CHECK_THROWS_AS(truncation(g, {}), std::invalid_argument);
  CHECK_THROWS_AS(truncation(g, {9}), std::invalid_argument);

  // residues of a geometry are geometries
  CHECK(is_geometry_exhaustive(res));
}

TEST_CASE("disconnected handcrafted pregeometry") {
  Pregeometry g({1, 2}, {2, 2});
  g.add_edge({0, 0}, {1, 0});
  g.add_edge({0, 1}, {1, 1});
  g.finalize_edges();
  CHECK(!is_connected(g));
  CHECK(!pair_connected(g, 0, 1));
  CHECK_THROWS_AS(rank2_params(g), std::invalid_argument);
}

TEST_CASE("model geometries and their parameters") {
  // inclusion model on 2- and 4-subsets of a 6-set
  Pregeometry u24 = model_geometry(ModelKind::Inclusion, 2, 4, 6, 1);
  CHECK(u24.size(0) == 15);
  CHECK(u24.size(1) == 15);
  for (uint32_t i = 0; i < 15; ++i) CHECK(u24.neighbors({0, i}, 1).size() == 6);
  DiagramParams p = rank2_params(u24);
  CHECK(p == DiagramParams{15, 15, 5, 5, 3, 3, 2});

  // colored disjointness model
  Pregeometry ubar = model_geometry(ModelKind::Disjoint, 2, 2, 6, 2);
  CHECK(ubar.size(0) == 60);
  CHECK(ubar.size(1) == 60);
  for (uint32_t i = 0; i < 60; ++i) CHECK(ubar.neighbors({0, i}, 1).size() == 24);
  DiagramParams q = rank2_params(ubar);
  CHECK(q == DiagramParams{60, 60, 23, 23, 3, 3, 2});

  // complete bipartite reference values
  Pregeometry k66 = complete_bipartite(6, 6);
  CHECK(is_complete_bipartite(k66));
  DiagramParams r = rank2_params(k66);
  CHECK(r.d1 == 2);
  CHECK(r.d2 == 2);
  CHECK(r.g == 2);

  // a palette of size one adds nothing
  Pregeometry u24c = model_geometry(ModelKind::Inclusion, 2, 4, 6, 1);
  CHECK(u24c.edges() == u24.edges());

  CHECK_THROWS_AS(model_geometry(ModelKind::Disjoint, 4, 4, 6, 1), std::invalid_argument);
  CHECK_THROWS_AS(model_geometry(ModelKind::Inclusion, 3, 3, 6, 1), std::invalid_argument);
}

TEST_CASE("bipartite isomorphism") {
  Pregeometry u24 = model_geometry(ModelKind::Inclusion, 2, 4, 6, 1);
  // relabeled copy: same graph with permuted element order
  Pregeometry shuffled({1, 2}, {15, 15});
  for (uint32_t i = 0; i < 15; ++i)
    for (uint32_t j : u24.neighbors({0, i}, 1))
      shuffled.add_edge({0, (i * 7 + 3) % 15}, {1, (j * 4 + 11) % 15});
  shuffled.finalize_edges();
  CHECK(bipartite_isomorphic(u24, shuffled));

  // the disjointness model on uncolored 2-sets of a 6-set is the same graph
  // as the inclusion model, via complementation of the 4-sets
  Pregeometry ubar1 = model_geometry(ModelKind::Disjoint, 2, 2, 6, 1);
  CHECK(bipartite_isomorphic(u24, ubar1));

  // a 6-regular circulant-ish bipartite graph with the same sizes is not
  Pregeometry other({1, 2}, {15, 15});
  for (uint32_t i = 0; i < 15; ++i)
    for (uint32_t d = 0; d < 6; ++d) other.add_edge({0, i}, {1, (i + d) % 15});
  other.finalize_edges();
  CHECK(!bipartite_isomorphic(u24, other));

  CHECK(!bipartite_isomorphic(u24, complete_bipartite(15, 15)));
}

TEST_CASE("quotients") {
  Pregeometry g = distinct_pairs(5);

  // singleton partition reproduces the pregeometry
  std::vector<std::vector<std::vector<uint32_t>>> singletons(2);
  for (uint32_t t = 0; t < 2; ++t)
    for (uint32_t i = 0; i < 5; ++i) singletons[t].push_back({i});
  Pregeometry q1 = quotient(g, singletons);
  CHECK(q1.edges() == g.edges());

  // one part per type: single incident pair
  std::vector<std::vector<std::vector<uint32_t>>> universal(2);
  universal[0].push_back({0, 1, 2, 3, 4});
  universal[1].push_back({0, 1, 2, 3, 4});
  Pregeometry q2 = quotient(g, universal);
  CHECK(q2.size(0) == 1);
  CHECK(q2.size(1) == 1);
  CHECK(q2.edge_count() == 1);

  // mixed: collapse type 1 fully, keep type 2
  std::vector<std::vector<std::vector<uint32_t>>> mixed(2);
  mixed[0].push_back({0, 1, 2, 3, 4});
  for (uint32_t i = 0; i < 5; ++i) mixed[1].push_back({i});
  Pregeometry q3 = quotient(g, mixed);
  CHECK(q3.size(0) == 1);
  CHECK(q3.size(1) == 5);
  CHECK(q3.edge_count() == 5);

  // coverage and overlap validation
  std::vector<std::vector<std::vector<uint32_t>>> bad(2);
  bad[0].push_back({0, 1});
  bad[1].push_back({0, 1, 2, 3, 4});
  CHECK_THROWS_AS(quotient(g, bad), std::invalid_argument);
}

TEST_CASE("attach validates the group and the chamber") {
  Pregeometry g = distinct_pairs(3);
  // diagonal action of the 3-cycle on both copies: 0->1->2 on each side
  std::vector<Point> img{1, 2, 0, 4, 5, 3};
  PermGroup rot(6, {Perm(img)});
  g.attach(rot, {{0, 0}, {1, 1}});
  CHECK(g.has_group());
  CHECK(g.base_chamber().size() == 2);

  // non-incidence-preserving: swap two points on one side only
  Pregeometry h = distinct_pairs(3);
  std::vector<Point> bad{1, 0, 2, 3, 4, 5};
  CHECK_THROWS_AS(h.attach(PermGroup(6, {Perm(bad)}), {{0, 0}, {1, 1}}),
                  std::invalid_argument);

  // type-crossing generator
  Pregeometry h2 = distinct_pairs(3);
  std::vector<Point> cross{3, 4, 5, 0, 1, 2};
  CHECK_THROWS_AS(h2.attach(PermGroup(6, {Perm(cross)}), {{0, 0}, {1, 1}}),
                  std::invalid_argument);

  // base chamber must be a chamber
  Pregeometry h3 = distinct_pairs(3);
  CHECK_THROWS_AS(h3.attach(PermGroup(6, {Perm(img)}), {{0, 0}, {1, 0}}),
                  std::invalid_argument);
}

TEST_CASE("flag budget is enforced") {
  Pregeometry g = distinct_pairs(5);
  CHECK_THROWS_AS(chambers_containing(g, {}, 3), ResourceError);
}
