#include "geoforge/orbit.hpp"

#include <algorithm>
#include <deque>

namespace geoforge {

PointOrbit::PointOrbit(uint32_t degree, std::vector<Perm> gens, Point seed)
    : degree_(degree), seed_(seed), gens_(std::move(gens)) {
  if (seed >= degree) throw std::invalid_argument("orbit seed out of range");
  for (const Perm& g : gens_) {
    if (g.degree() != degree_) throw std::invalid_argument("orbit generator degree mismatch");
    gens_inv_.push_back(g.inverse());
  }
  pos_.assign(degree_, -1);
  points_.push_back(seed);
  pos_[seed] = 0;
  parent_.push_back(0);
  via_.push_back(-1);
  for (size_t i = 0; i < points_.size(); ++i) {
    Point p = points_[i];
    for (size_t gi = 0; gi < gens_.size(); ++gi) {
      Point q = gens_[gi][p];
      if (pos_[q] < 0) {
        pos_[q] = static_cast<int32_t>(points_.size());
        points_.push_back(q);
        parent_.push_back(static_cast<uint32_t>(i));
        via_.push_back(static_cast<int32_t>(gi));
      }
    }
  }
}

Perm PointOrbit::witness(Point member) const {
  if (!contains(member)) throw std::invalid_argument("point not in orbit");
  std::vector<int32_t> path;
  size_t cur = static_cast<size_t>(pos_[member]);
  while (via_[cur] >= 0) { path.push_back(via_[cur]); cur = parent_[cur]; }
  std::vector<Point> img(degree_);
  for (Point x = 0; x < degree_; ++x) img[x] = x;
  for (size_t k = path.size(); k-- > 0;) {
    const Perm& g = gens_[path[k]];
    for (Point x = 0; x < degree_; ++x) img[x] = g[img[x]];
  }
  return Perm(std::move(img));
}

Point PointOrbit::witness_apply(Point member, Point x) const {
  if (!contains(member)) throw std::invalid_argument("point not in orbit");
  std::vector<int32_t> path;
  size_t cur = static_cast<size_t>(pos_[member]);
  while (via_[cur] >= 0) { path.push_back(via_[cur]); cur = parent_[cur]; }
  for (size_t k = path.size(); k-- > 0;) x = gens_[path[k]][x];
  return x;
}

Point PointOrbit::witness_inv_apply(Point member, Point x) const {
  if (!contains(member)) throw std::invalid_argument("point not in orbit");
  size_t cur = static_cast<size_t>(pos_[member]);
  while (via_[cur] >= 0) {
    x = gens_inv_[via_[cur]][x];
    cur = parent_[cur];
  }
  return x;
}

std::vector<Point> TupleOrbit::canon(std::vector<Point> t) const {
  if (!ordered_) std::sort(t.begin(), t.end());
  return t;
}

TupleOrbit::TupleOrbit(uint32_t degree, std::vector<Perm> gens, std::vector<Point> seed,
                       bool ordered, uint64_t budget)
    : degree_(degree), gens_(std::move(gens)), ordered_(ordered) {
  for (Point p : seed)
    if (p >= degree_) throw std::invalid_argument("orbit seed out of range");
  std::vector<Point> s = canon(std::move(seed));
  members_.push_back(s);
  index_.emplace(std::move(s), 0u);
  parent_.push_back(0);
  via_.push_back(-1);
  std::vector<Point> img;
  for (size_t i = 0; i < members_.size(); ++i) {
    for (size_t gi = 0; gi < gens_.size(); ++gi) {
      const Perm& g = gens_[gi];
      img = members_[i];
      for (Point& p : img) p = g[p];
      img = canon(std::move(img));
      if (index_.find(img) == index_.end()) {
        if (budget && members_.size() >= budget)
          throw ResourceError("tuple orbit exceeds configured budget");
        uint32_t ni = static_cast<uint32_t>(members_.size());
        members_.push_back(img);
        index_.emplace(std::move(img), ni);
        parent_.push_back(static_cast<uint32_t>(i));
        via_.push_back(static_cast<int32_t>(gi));
      }
    }
  }
}

bool TupleOrbit::contains(const std::vector<Point>& t) const {
  return index_.find(canon(t)) != index_.end();
}

int64_t TupleOrbit::index_of(const std::vector<Point>& t) const {
  auto it = index_.find(canon(t));
  if (it == index_.end()) return -1;
  return static_cast<int64_t>(it->second);
}

Perm TupleOrbit::witness(size_t member_index) const {
  std::vector<int32_t> path;
  size_t cur = member_index;
  while (via_[cur] >= 0) { path.push_back(via_[cur]); cur = parent_[cur]; }
  std::vector<Point> img(degree_);
  for (Point x = 0; x < degree_; ++x) img[x] = x;
  for (size_t k = path.size(); k-- > 0;) {
    const Perm& g = gens_[path[k]];
    for (Point x = 0; x < degree_; ++x) img[x] = g[img[x]];
  }
  return Perm(std::move(img));
}

std::vector<std::pair<Point, Point>> pair_orbit(uint32_t degree,
                                                const std::vector<Perm>& gens,
                                                Point a, Point b, uint64_t budget) {
  // encode pairs as a*degree+b; use a bitmap when it fits, else a hash set
  const uint64_t space = static_cast<uint64_t>(degree) * degree;
  std::vector<std::pair<Point, Point>> out;
  std::deque<std::pair<Point, Point>> queue;
  auto push = [&](Point x, Point y) {
    out.emplace_back(x, y);
    queue.emplace_back(x, y);
  };
  if (space <= (1ull << 32)) {
    std::vector<bool> seen(space, false);
    auto key = [&](Point x, Point y) { return static_cast<uint64_t>(x) * degree + y; };
    seen[key(a, b)] = true;
    push(a, b);
    while (!queue.empty()) {
      auto [x, y] = queue.front();
      queue.pop_front();
      for (const Perm& g : gens) {
        Point gx = g[x], gy = g[y];
        uint64_t k = key(gx, gy);
        if (!seen[k]) {
          if (budget && out.size() >= budget)
            throw ResourceError("pair orbit exceeds configured budget");
          seen[k] = true;
          push(gx, gy);
        }
      }
    }
  } else {
    std::unordered_map<uint64_t, bool> seen;
    auto key = [&](Point x, Point y) { return static_cast<uint64_t>(x) * degree + y; };
    seen[key(a, b)] = true;
    push(a, b);
    while (!queue.empty()) {
      auto [x, y] = queue.front();
      queue.pop_front();
      for (const Perm& g : gens) {
        Point gx = g[x], gy = g[y];
        uint64_t k = key(gx, gy);
        if (!seen.count(k)) {
          if (budget && out.size() >= budget)
            throw ResourceError("pair orbit exceeds configured budget");
          seen[k] = true;
          push(gx, gy);
        }
      }
    }
  }
  return out;
}

}  // namespace geoforge
