#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace geoforge {

using Point = uint32_t;

/// A permutation of {0,...,degree-1} stored as an image table.
/// Composition is left-to-right throughout: compose(p,q) maps x to q[p[x]].
class Perm {
public:
  Perm() = default;
  explicit Perm(uint32_t degree);             // identity
  explicit Perm(std::vector<Point> images);

  static Perm identity(uint32_t degree) { return Perm(degree); }

  /// Parse disjoint-cycle notation on 1-based points, e.g. "(1,2)(3,4)".
  /// "()" denotes the identity. Points must not exceed `degree`.
  static Perm from_cycles(const std::string& text, uint32_t degree);

  uint32_t degree() const { return static_cast<uint32_t>(img_.size()); }
  Point operator[](Point p) const { return img_[p]; }
  const std::vector<Point>& images() const { return img_; }

  bool is_identity() const;
  Perm inverse() const;

  /// Smallest point p with p^g != p; degree() if none.
  Point smallest_moved() const;

  bool even() const;                 // sign of the permutation
  uint64_t element_order() const;    // lcm of cycle lengths

  /// Canonical 1-based disjoint-cycle string; identity prints as "()".
  std::string cycle_string() const;

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator!=(const Perm& o) const { return img_ != o.img_; }

private:
  std::vector<Point> img_;
};

/// x -> q[p[x]]  (apply p first, then q).
Perm compose(const Perm& p, const Perm& q);

/// w^-1 * g * w  (in left-to-right convention: apply w^-1, then g, then w).
Perm conjugate(const Perm& g, const Perm& w);

}  // namespace geoforge
