#pragma once

#include <string>
#include <variant>
#include <vector>

#include "geoforge/group.hpp"
#include "geoforge/perm.hpp"

namespace geoforge {

/// Point index <-> natural point 1..m (stored 0-based).
struct NaturalCodec {
  uint32_t m;
};

/// Point index <-> n-tuple over a delta-element set, coordinate 1 most
/// significant: point = sum digit_k * delta^(n-k).
struct TupleCodec {
  uint32_t delta;
  uint32_t n;
  Point encode(const std::vector<uint32_t>& digits) const;
  std::vector<uint32_t> decode(Point p) const;
};

/// Point index <-> element of Sym(m) or Alt(m) by lexicographic rank of the
/// image table (alternating groups rank within the even permutations only).
/// The identity is always point 0.
struct GroupElemCodec {
  uint32_t m;
  bool alternating;
  Point encode(const Perm& t) const;
  Perm decode(Point p) const;
  uint64_t count() const;
};

using Codec = std::variant<NaturalCodec, TupleCodec, GroupElemCodec>;

/// A faithful transitive action with a point codec and a rebuildable
/// descriptor tag (see json_io).
struct ActionSpace {
  PermGroup group;
  Codec codec;
  std::string tag;

  uint32_t degree() const { return group.degree(); }
  std::string label(Point p) const;  // 1-based display form
};

uint64_t degree_cap();  // GEOFORGE_DEGREE_CAP, default 100000

/// Lexicographic rank/unrank of permutations, optionally within the even ones.
uint64_t perm_lex_rank(const Perm& p, bool even_only);
Perm perm_lex_unrank(uint32_t m, uint64_t r, bool even_only);

/// Standard two-generator symmetric or alternating group on m points.
ActionSpace natural_group(const std::string& kind, uint32_t m);  // "sym" | "alt"

/// One-dimensional affine group AGL(1,p) on p points, p prime.
ActionSpace affine_group(uint32_t p);

/// Component H acting on delta, extended to H Wr Sym(n) on delta^n in product
/// action. Generators: H's generators in coordinate 1 plus an n-cycle and a
/// transposition permuting coordinates.
ActionSpace wreath_product_action(const ActionSpace& component, uint32_t n);

/// T x T acting on T = Alt(m) by t -> t1^-1 t t2, plus the inversion map of
/// the point set (which normalizes the action).
struct HsAction {
  ActionSpace space;
  Perm sigma;  // t -> t^-1
};
HsAction hs_action(uint32_t m);

/// Seed sequences for the rank-raising constructions.
std::vector<Point> as_seed_points(uint32_t m, uint32_t b);            // x_i = i,   1 <= i <= b <= m-2
Point pa_seed_point(const TupleCodec& c, uint32_t idx);               // 2*idx alphas then betas, idx <= n/2-1
Perm hs_seed_perm(uint32_t m, uint32_t idx);                          // product of 2*idx transpositions, idx <= m/4
Point hs_seed_point(uint32_t m, uint32_t idx);

/// Number of entries of x in 1-based coordinate range [i,j] not equal to
/// gamma.
uint32_t nongamma_count(const std::vector<uint32_t>& x, uint32_t gamma, uint32_t i,
                        uint32_t j);

}  // namespace geoforge
