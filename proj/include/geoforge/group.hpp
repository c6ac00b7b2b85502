#pragma once

#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "geoforge/perm.hpp"

namespace geoforge {

/// Thrown when a computation would exceed a configured resource cap.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ChainOptions {
  /// Points forced to prefix the base, in order.
  std::vector<Point> base_prefix{};
  /// A level stores explicit transversal permutations while
  /// orbit_size * degree stays at or below this entry count; beyond it the
  /// level falls back to Schreier-vector witnesses.
  uint64_t explicit_entry_budget = 96'000'000;
};

/// Deterministic Schreier-Sims stabilizer chain. Base points are the given
/// prefix followed by smallest-moved points; orbits are built in BFS queue
/// order with generators applied in stored order, so two builds from the
/// same input produce identical chains.
class StabilizerChain {
public:
  StabilizerChain(uint32_t degree, const std::vector<Perm>& generators,
                  ChainOptions opt = {});

  uint32_t degree() const { return degree_; }
  size_t num_levels() const { return levels_.size(); }
  const std::vector<Point>& base() const { return base_; }

  uint64_t order() const { return order_from(0); }
  uint64_t order_from(size_t level) const;
  uint32_t orbit_size(size_t level) const;
  bool orbit_contains(size_t level, Point p) const;
  const std::vector<Point>& orbit_points(size_t level) const;

  /// Strong generators fixing base[0..level-1] pointwise (level 0: all).
  std::vector<Perm> level_generators(size_t level) const;
  size_t strong_size() const { return strong_.size(); }

  /// Transversal element mapping base[level] to p (p must lie in the orbit).
  Perm transversal(size_t level, Point p) const;

  bool contains(const Perm& g) const;
  /// Sift g through the chain; returns the residue and the level reached.
  std::pair<Perm, size_t> sift(Perm g) const;

private:
  struct Level {
    Point base = 0;
    std::vector<uint32_t> gen_ids;       // indices into strong_
    std::vector<Point> orb;              // discovery order
    std::vector<int32_t> pos;            // degree-sized, -1 = absent
    std::vector<uint32_t> parent_pos;    // tree parent, per orbit position
    std::vector<int32_t> via_local;      // local generator index, -1 = root
    std::vector<uint32_t> depth;
    bool explicit_mode = true;
    std::vector<std::vector<Point>> tr;  // explicit transversal image tables
    std::deque<std::pair<uint32_t, uint32_t>> pending;  // (orbit pos, local gen)
    // one-entry materialisation cache for Schreier-vector mode
    mutable size_t cache_pos = static_cast<size_t>(-1);
    mutable std::vector<Point> cache_u;
  };

  void add_level(Point base_point);
  void add_point(size_t li, Point p, uint32_t parent, int32_t via);
  void append_gen_to_level(size_t li, uint32_t gen_id);
  void process_pair(size_t li);
  std::pair<Perm, size_t> strip(Perm g, size_t from) const;

  // witness helpers (valid in both transversal modes)
  void collect_path(size_t li, size_t opos, std::vector<uint32_t>& local_gens) const;
  const std::vector<Point>& materialize_u(size_t li, size_t opos) const;
  Point u_inv_apply(size_t li, size_t opos, Point x) const;

  uint32_t degree_;
  std::vector<Point> base_;
  std::vector<Perm> strong_;
  std::vector<Perm> strong_inv_;
  std::vector<Level> levels_;
  uint64_t explicit_budget_;
};

/// A permutation group given by generators, with a lazily built cached chain.
/// Immutable after construction; the chain build is guarded for concurrent use.
class PermGroup {
public:
  PermGroup(uint32_t degree, std::vector<Perm> generators);
  static PermGroup trivial(uint32_t degree);

  PermGroup(const PermGroup& o);
  PermGroup& operator=(const PermGroup& o);
  PermGroup(PermGroup&& o) noexcept;
  PermGroup& operator=(PermGroup&& o) noexcept;

  uint32_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }

  const StabilizerChain& chain() const;
  uint64_t order() const { return chain().order(); }
  bool contains(const Perm& g) const { return chain().contains(g); }

  bool is_transitive() const;
  /// Smallest-block test over all point pairs; requires transitivity.
  bool is_primitive() const;
  /// A nontrivial block containing point 0, if one exists.
  std::optional<std::vector<Point>> find_block() const;

  /// Pointwise stabilizer of pts, via the chain of this group and of the
  /// successive stabilizers (conjugating transversal witnesses so each point
  /// in turn heads the base).
  PermGroup stabilizer(std::span<const Point> pts) const;
  PermGroup stabilizer(std::initializer_list<Point> pts) const {
    return stabilizer(std::span<const Point>(pts.begin(), pts.end()));
  }

private:
  uint32_t degree_;
  std::vector<Perm> gens_;
  mutable std::mutex chain_mutex_;
  mutable std::shared_ptr<const StabilizerChain> chain_;
};

/// order(<a united with b>) == order(G); all generators must lie in G.
bool generates_whole(const PermGroup& g, const std::vector<Perm>& subgens_a,
                     const std::vector<Perm>& subgens_b);

/// Drop generators that do not grow the generated group; keeps input order.
std::vector<Perm> reduce_generators(uint32_t degree, const std::vector<Perm>& gens);

}  // namespace geoforge
