#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "geoforge/group.hpp"
#include "geoforge/perm.hpp"

namespace geoforge {

/// Orbit of a single point with a Schreier-vector witness tree.
/// Deterministic: BFS queue order, generators applied in stored order.
class PointOrbit {
public:
  PointOrbit(uint32_t degree, std::vector<Perm> gens, Point seed);

  Point seed() const { return seed_; }
  size_t size() const { return points_.size(); }
  const std::vector<Point>& points() const { return points_; }
  bool contains(Point p) const { return pos_[p] >= 0; }

  /// Witness g with seed^g = member, materialized.
  Perm witness(Point member) const;
  /// Image of x under the witness of `member`.
  Point witness_apply(Point member, Point x) const;
  /// Image of x under the inverse witness.
  Point witness_inv_apply(Point member, Point x) const;

private:
  uint32_t degree_;
  Point seed_;
  std::vector<Perm> gens_;
  std::vector<Perm> gens_inv_;
  std::vector<Point> points_;
  std::vector<int32_t> pos_;
  std::vector<uint32_t> parent_;  // orbit position of parent
  std::vector<int32_t> via_;      // generator index, -1 for root
};

/// Orbit of an ordered tuple (componentwise action) or of an unordered set
/// (images canonicalized by sorting). Members are listed in BFS order and a
/// witness permutation is reconstructible for each member.
class TupleOrbit {
public:
  TupleOrbit(uint32_t degree, std::vector<Perm> gens, std::vector<Point> seed,
             bool ordered, uint64_t budget = 0);

  size_t size() const { return members_.size(); }
  const std::vector<std::vector<Point>>& members() const { return members_; }
  bool contains(const std::vector<Point>& t) const;
  Perm witness(size_t member_index) const;
  int64_t index_of(const std::vector<Point>& t) const;

private:
  struct VecHash {
    size_t operator()(const std::vector<Point>& v) const {
      size_t h = 1469598103934665603ull;
      for (Point p : v) { h ^= p; h *= 1099511628211ull; }
      return h;
    }
  };
  std::vector<Point> canon(std::vector<Point> t) const;

  uint32_t degree_;
  std::vector<Perm> gens_;
  bool ordered_;
  std::vector<std::vector<Point>> members_;
  std::unordered_map<std::vector<Point>, uint32_t, VecHash> index_;
  std::vector<uint32_t> parent_;
  std::vector<int32_t> via_;
};

/// Materialized orbit of the ordered pair (a, b); the pair (x,y) is stored as
/// the edge x -> y. Throws ResourceError past `budget` pairs (0 = unlimited).
std::vector<std::pair<Point, Point>> pair_orbit(uint32_t degree,
                                                const std::vector<Perm>& gens,
                                                Point a, Point b,
                                                uint64_t budget = 0);

}  // namespace geoforge
