#include "geoforge/action.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace geoforge {

uint64_t degree_cap() {
  if (const char* s = std::getenv("GEOFORGE_DEGREE_CAP")) {
    uint64_t v = std::strtoull(s, nullptr, 10);
    if (v > 0) return v;
  }
  return 100000;
}

Point TupleCodec::encode(const std::vector<uint32_t>& digits) const {
  if (digits.size() != n) throw std::invalid_argument("tuple length mismatch");
  uint64_t p = 0;
  for (uint32_t d : digits) {
    if (d >= delta) throw std::invalid_argument("tuple digit out of range");
    p = p * delta + d;
  }
  return static_cast<Point>(p);
}

std::vector<uint32_t> TupleCodec::decode(Point p) const {
  std::vector<uint32_t> digits(n);
  uint64_t v = p;
  for (uint32_t k = n; k-- > 0;) {
    digits[k] = static_cast<uint32_t>(v % delta);
    v /= delta;
  }
  return digits;
}

namespace {

uint64_t factorial(uint32_t k) {
  uint64_t f = 1;
  for (uint32_t i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

uint64_t perm_lex_rank(const Perm& p, bool even_only) {
  uint32_t m = p.degree();
  if (even_only && !p.even())
    throw std::invalid_argument("odd permutation has no rank among the even ones");
  std::vector<bool> used(m, false);
  uint64_t rank = 0;
  for (uint32_t i = 0; i < m; ++i) {
    uint32_t c = 0;
    for (Point q = 0; q < p[i]; ++q)
      if (!used[q]) ++c;
    uint32_t remaining = m - 1 - i;
    if (!even_only) {
      rank += c * factorial(remaining);
    } else if (remaining >= 2) {
      rank += c * (factorial(remaining) / 2);
    }
    // with at most two elements left the completion is forced by parity
    used[p[i]] = true;
  }
  return rank;
}

Perm perm_lex_unrank(uint32_t m, uint64_t r, bool even_only) {
  std::vector<Point> avail(m);
  for (uint32_t i = 0; i < m; ++i) avail[i] = i;
  std::vector<Point> img;
  img.reserve(m);
  for (uint32_t i = 0; i < m; ++i) {
    uint32_t remaining = m - 1 - i;
    if (even_only && remaining == 1) {
      // order the final two points so the whole permutation is even
      img.push_back(avail[0]);
      img.push_back(avail[1]);
      Perm cand{img};
      if (!cand.even()) std::swap(img[m - 2], img[m - 1]);
      return Perm(std::move(img));
    }
    uint64_t w = even_only ? (remaining >= 2 ? factorial(remaining) / 2 : 1)
                           : factorial(remaining);
    uint64_t idx = r / w;
    r %= w;
    if (idx >= avail.size()) throw std::invalid_argument("rank out of range");
    img.push_back(avail[idx]);
    avail.erase(avail.begin() + static_cast<long>(idx));
  }
  return Perm(std::move(img));
}

Point GroupElemCodec::encode(const Perm& t) const {
  if (t.degree() != m) throw std::invalid_argument("element degree mismatch");
  return static_cast<Point>(perm_lex_rank(t, alternating));
}

Perm GroupElemCodec::decode(Point p) const { return perm_lex_unrank(m, p, alternating); }

uint64_t GroupElemCodec::count() const {
  return alternating ? factorial(m) / 2 : factorial(m);
}

std::string ActionSpace::label(Point p) const {
  if (std::holds_alternative<NaturalCodec>(codec)) {
    return std::to_string(p + 1);
  }
  if (const auto* tc = std::get_if<TupleCodec>(&codec)) {
    auto digits = tc->decode(p);
    std::ostringstream out;
    out << '(';
    for (size_t k = 0; k < digits.size(); ++k) {
      if (k) out << ',';
      out << digits[k] + 1;
    }
    out << ')';
    return out.str();
  }
  return std::get<GroupElemCodec>(codec).decode(p).cycle_string();
}

ActionSpace natural_group(const std::string& kind, uint32_t m) {
  std::vector<Perm> gens;
  if (kind == "sym") {
    if (m < 2) throw std::invalid_argument("sym requires m >= 2");
    gens.push_back(Perm::from_cycles("(1,2)", m));
    if (m > 2) {
      std::string cyc = "(1";
      for (uint32_t i = 2; i <= m; ++i) cyc += "," + std::to_string(i);
      gens.push_back(Perm::from_cycles(cyc + ")", m));
    }
  } else if (kind == "alt") {
    if (m < 3) throw std::invalid_argument("alt requires m >= 3");
    gens.push_back(Perm::from_cycles("(1,2,3)", m));
    if (m > 3) {
      std::string cyc;
      if (m % 2 == 1) {
        cyc = "(1";
        for (uint32_t i = 2; i <= m; ++i) cyc += "," + std::to_string(i);
      } else {
        cyc = "(2";
        for (uint32_t i = 3; i <= m; ++i) cyc += "," + std::to_string(i);
      }
      gens.push_back(Perm::from_cycles(cyc + ")", m));
    }
  } else {
    throw std::invalid_argument("unknown natural group kind: " + kind);
  }
  return ActionSpace{PermGroup(m, std::move(gens)), NaturalCodec{m},
                     kind + ":" + std::to_string(m)};
}

ActionSpace affine_group(uint32_t p) {
  if (p < 3) throw std::invalid_argument("affine group requires p >= 3");
  for (uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("affine group requires a prime p");
  // x -> x + 1
  std::vector<Point> shift(p);
  for (uint32_t x = 0; x < p; ++x) shift[x] = (x + 1) % p;
  // x -> g*x for a primitive root g
  uint32_t g = 2;
  for (;; ++g) {
    uint64_t v = 1;
    uint32_t ord = 0;
    do {
      v = v * g % p;
      ++ord;
    } while (v != 1);
    if (ord == p - 1) break;
  }
  std::vector<Point> mult(p);
  for (uint32_t x = 0; x < p; ++x) mult[x] = static_cast<Point>(uint64_t(g) * x % p);
  return ActionSpace{PermGroup(p, {Perm(std::move(shift)), Perm(std::move(mult))}),
                     NaturalCodec{p}, "agl1:" + std::to_string(p)};
}

ActionSpace wreath_product_action(const ActionSpace& component, uint32_t n) {
  if (n < 2) throw std::invalid_argument("wreath product requires n >= 2");
  if (!component.group.is_transitive())
    throw std::invalid_argument("wreath component must be transitive");
  uint32_t delta = component.degree();
  uint64_t deg = 1;
  for (uint32_t k = 0; k < n; ++k) {
    deg *= delta;
    if (deg > degree_cap())
      throw ResourceError("wreath product degree exceeds the configured cap");
  }
  TupleCodec codec{delta, n};
  uint32_t N = static_cast<uint32_t>(deg);

  std::vector<Perm> gens;
  // component generators acting in coordinate 1
  for (const Perm& h : component.group.generators()) {
    std::vector<Point> img(N);
    uint64_t block = deg / delta;  // weight of coordinate 1
    for (uint32_t p = 0; p < N; ++p) {
      uint32_t d1 = static_cast<uint32_t>(p / block);
      img[p] = static_cast<Point>(uint64_t(h[d1]) * block + p % block);
    }
    gens.push_back(Perm(std::move(img)));
  }
  // coordinate permutations: n-cycle and a transposition
  auto coord_perm = [&](const std::vector<uint32_t>& sigma_inv) {
    std::vector<Point> img(N);
    std::vector<uint32_t> digits, moved(n);
    for (uint32_t p = 0; p < N; ++p) {
      digits = codec.decode(p);
      for (uint32_t i = 0; i < n; ++i) moved[i] = digits[sigma_inv[i]];
      img[p] = codec.encode(moved);
    }
    return Perm(std::move(img));
  };
  std::vector<uint32_t> cyc_inv(n), swap_inv(n);
  for (uint32_t i = 0; i < n; ++i) cyc_inv[i] = (i + n - 1) % n;  // inverse of (0 1 ... n-1)
  for (uint32_t i = 0; i < n; ++i) swap_inv[i] = i;
  std::swap(swap_inv[0], swap_inv[1]);
  gens.push_back(coord_perm(cyc_inv));
  if (n > 2) gens.push_back(coord_perm(swap_inv));

  return ActionSpace{PermGroup(N, std::move(gens)), codec,
                     "wreath(" + component.tag + ")^" + std::to_string(n)};
}

HsAction hs_action(uint32_t m) {
  if (m < 5) throw std::invalid_argument("hs action requires m >= 5");
  GroupElemCodec codec{m, true};
  uint64_t size = codec.count();
  if (size > degree_cap())
    throw ResourceError("hs action degree exceeds the configured cap");
  uint32_t N = static_cast<uint32_t>(size);

  ActionSpace t_gens = natural_group("alt", m);
  std::vector<Perm> gens;
  for (const Perm& g : t_gens.group.generators()) {
    Perm gi = g.inverse();
    std::vector<Point> left(N), right(N);
    for (uint32_t p = 0; p < N; ++p) {
      Perm u = codec.decode(p);
      left[p] = codec.encode(compose(gi, u));   // t -> g^-1 t
      right[p] = codec.encode(compose(u, g));   // t -> t g
    }
    gens.push_back(Perm(std::move(left)));
    gens.push_back(Perm(std::move(right)));
  }
  std::vector<Point> inv(N);
  for (uint32_t p = 0; p < N; ++p) inv[p] = codec.encode(codec.decode(p).inverse());

  return HsAction{ActionSpace{PermGroup(N, std::move(gens)), codec,
                              "hs:" + std::to_string(m)},
                  Perm(std::move(inv))};
}

std::vector<Point> as_seed_points(uint32_t m, uint32_t b) {
  if (b < 1 || b > m - 2)
    throw std::invalid_argument("rank must satisfy 1 <= b <= m-2");
  std::vector<Point> seeds(b);
  for (uint32_t i = 0; i < b; ++i) seeds[i] = i;
  return seeds;
}

Point pa_seed_point(const TupleCodec& c, uint32_t idx) {
  if (c.delta < 2) throw std::invalid_argument("component set needs two elements");
  if (idx < 1 || idx > c.n / 2 - 1)
    throw std::invalid_argument("seed index must satisfy 1 <= c <= n/2-1");
  std::vector<uint32_t> digits(c.n, 1);  // beta = second smallest label
  for (uint32_t k = 0; k < 2 * idx; ++k) digits[k] = 0;  // alpha = smallest label
  return c.encode(digits);
}

Perm hs_seed_perm(uint32_t m, uint32_t idx) {
  if (idx > m / 4)
    throw std::invalid_argument("seed index must satisfy 0 <= i <= m/4");
  std::vector<Point> img(m);
  for (uint32_t i = 0; i < m; ++i) img[i] = i;
  for (uint32_t k = 0; k < 2 * idx; ++k) std::swap(img[2 * k], img[2 * k + 1]);
  return Perm(std::move(img));
}

Point hs_seed_point(uint32_t m, uint32_t idx) {
  return GroupElemCodec{m, true}.encode(hs_seed_perm(m, idx));
}

uint32_t nongamma_count(const std::vector<uint32_t>& x, uint32_t gamma, uint32_t i,
                        uint32_t j) {
  if (i < 1 || i > j || j > x.size())
    throw std::invalid_argument("invalid coordinate range");
  uint32_t c = 0;
  for (uint32_t k = i - 1; k < j; ++k)
    if (x[k] != gamma) ++c;
  return c;
}

}  // namespace geoforge
