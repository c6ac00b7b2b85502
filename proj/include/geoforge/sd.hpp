#pragma once

#include <optional>
#include <vector>

#include "geoforge/perm.hpp"

namespace geoforge {

/// Coset of the straight diagonal subgroup of T^n, T = Alt(m), held in
/// canonical form (first entry trivial). Two tuples represent the same coset
/// exactly when their canonical forms agree.
class SdCoset {
public:
  /// Canonicalize a raw n-tuple by left-multiplying with the diagonal of the
  /// inverse first entry.
  static SdCoset from_tuple(const std::vector<Perm>& raw);

  const std::vector<Perm>& entries() const { return entries_; }
  size_t length() const { return entries_.size(); }
  bool operator==(const SdCoset& o) const { return entries_ == o.entries_; }
  bool operator!=(const SdCoset& o) const { return entries_ != o.entries_; }

private:
  std::vector<Perm> entries_;
};

/// Number of entries different from the identity of T.
uint32_t sd_support(const std::vector<Perm>& tuple);

/// Scan all |T| diagonal translates of the coset; return the unique
/// representative of support strictly below n/2 if one exists.
std::optional<std::vector<Perm>> sd_small_support_rep(const SdCoset& coset, uint32_t m);

/// The seed coset [alpha,...,alpha,1,...,1] with 2*idx alphas, where alpha is
/// the involution (1,2)(3,4) of T.
std::vector<Perm> sd_seed_tuple(uint32_t m, uint32_t n, uint32_t idx);
Perm sd_alpha(uint32_t m);

/// Distinguished representative of the image of the seed coset x_a under the
/// conjugated group element h_s^-1 * diag(t) * sigma * h_s:
///   (1,..,1, alpha^t,..,alpha^t, 1,..,1)^sigma, then the first 2s entries
///   multiplied on the right by alpha.
/// sigma permutes coordinates of the tuple (entry i receives entry
/// i^(sigma^-1)). The result is verified to lie in the image coset.
std::vector<Perm> sd_rep(uint32_t m, uint32_t n, uint32_t s, uint32_t a,
                         const Perm& t, const Perm& sigma);

/// The image coset itself, computed independently by acting on the seed.
SdCoset sd_image_coset(uint32_t m, uint32_t n, uint32_t s, uint32_t a, const Perm& t,
                       const Perm& sigma);

}  // namespace geoforge
