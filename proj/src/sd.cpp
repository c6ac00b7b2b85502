#include "geoforge/sd.hpp"

#include "geoforge/action.hpp"

namespace geoforge {

SdCoset SdCoset::from_tuple(const std::vector<Perm>& raw) {
  if (raw.size() < 2) throw std::invalid_argument("diagonal coset needs n >= 2");
  SdCoset c;
  Perm d = raw[0].inverse();
  c.entries_.reserve(raw.size());
  for (const Perm& e : raw) {
    if (e.degree() != raw[0].degree())
      throw std::invalid_argument("coset entries of unequal degree");
    c.entries_.push_back(compose(d, e));
  }
  return c;
}

uint32_t sd_support(const std::vector<Perm>& tuple) {
  uint32_t s = 0;
  for (const Perm& e : tuple)
    if (!e.is_identity()) ++s;
  return s;
}

std::optional<std::vector<Perm>> sd_small_support_rep(const SdCoset& coset, uint32_t m) {
  const uint32_t n = static_cast<uint32_t>(coset.length());
  GroupElemCodec codec{m, true};
  std::optional<std::vector<Perm>> found;
  for (uint64_t r = 0; r < codec.count(); ++r) {
    Perm t = codec.decode(static_cast<Point>(r));
    std::vector<Perm> cand;
    cand.reserve(n);
    for (const Perm& e : coset.entries()) cand.push_back(compose(t, e));
    if (2 * sd_support(cand) < n) {
      if (found) throw std::logic_error("two small-support representatives in one coset");
      found = std::move(cand);
    }
  }
  return found;
}

Perm sd_alpha(uint32_t m) {
  if (m < 5) throw std::invalid_argument("T = Alt(m) requires m >= 5");
  return Perm::from_cycles("(1,2)(3,4)", m);
}

std::vector<Perm> sd_seed_tuple(uint32_t m, uint32_t n, uint32_t idx) {
  if (n < 5) throw std::invalid_argument("diagonal construction requires n >= 5");
  if (idx < 1 || idx > (n - 1) / 4)
    throw std::invalid_argument("seed index must satisfy 1 <= c <= (n-1)/4");
  std::vector<Perm> t(n, Perm(m));
  Perm a = sd_alpha(m);
  for (uint32_t k = 0; k < 2 * idx; ++k) t[k] = a;
  return t;
}

std::vector<Perm> sd_rep(uint32_t m, uint32_t n, uint32_t s, uint32_t a, const Perm& t,
                         const Perm& sigma) {
  if (!(s < a && a <= (n - 1) / 4))
    throw std::invalid_argument("need s < a <= (n-1)/4");
  if (sigma.degree() != n) throw std::invalid_argument("sigma must permute n coordinates");
  Perm alpha = sd_alpha(m);
  Perm alpha_t = conjugate(alpha, t);
  std::vector<Perm> v(n, Perm(m));
  for (uint32_t k = 2 * s; k < 2 * a; ++k) v[k] = alpha_t;
  // permute coordinates: entry i receives entry i^(sigma^-1)
  Perm sigma_inv = sigma.inverse();
  std::vector<Perm> w(n, Perm(m));
  for (uint32_t i = 0; i < n; ++i) w[i] = v[sigma_inv[i]];
  // right-multiply the first 2s entries by alpha
  for (uint32_t k = 0; k < 2 * s; ++k) w[k] = compose(w[k], alpha);

  if (SdCoset::from_tuple(w) != sd_image_coset(m, n, s, a, t, sigma))
    throw std::logic_error("representative fell outside the image coset");
  return w;
}

SdCoset sd_image_coset(uint32_t m, uint32_t n, uint32_t s, uint32_t a, const Perm& t,
                       const Perm& sigma) {
  Perm alpha = sd_alpha(m);
  // seed tuple of x_a, then the action of h_s^-1 * diag(t) * sigma * h_s:
  // right-multiply by h_s^-1, then by diag(t), permute coordinates by sigma,
  // then right-multiply by h_s.
  std::vector<Perm> cur = sd_seed_tuple(m, n, a);
  Perm alpha_inv = alpha.inverse();
  for (uint32_t k = 0; k < 2 * s; ++k) cur[k] = compose(cur[k], alpha_inv);
  for (uint32_t k = 0; k < n; ++k) cur[k] = compose(cur[k], t);
  Perm sigma_inv = sigma.inverse();
  std::vector<Perm> moved(n, Perm(m));
  for (uint32_t i = 0; i < n; ++i) moved[i] = cur[sigma_inv[i]];
  for (uint32_t k = 0; k < 2 * s; ++k) moved[k] = compose(moved[k], alpha);
  return SdCoset::from_tuple(moved);
}

}  // namespace geoforge
