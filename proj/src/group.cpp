#include "geoforge/group.hpp"

#include <algorithm>
#include <cassert>

namespace geoforge {

// ---------------------------------------------------------------------------
// StabilizerChain
// ---------------------------------------------------------------------------

StabilizerChain::StabilizerChain(uint32_t degree, const std::vector<Perm>& generators,
                                 ChainOptions opt)
    : degree_(degree), explicit_budget_(opt.explicit_entry_budget) {
  for (const Perm& g : generators) {
    if (g.degree() != degree_)
      throw std::invalid_argument("generator degree mismatch");
    if (g.is_identity()) continue;
    strong_.push_back(g);
    strong_inv_.push_back(g.inverse());
  }

  for (Point p : opt.base_prefix) {
    if (p >= degree_) throw std::invalid_argument("base point out of range");
    if (std::find(base_.begin(), base_.end(), p) == base_.end()) base_.push_back(p);
  }
  // every strong generator must move some base point
  for (const Perm& g : strong_) {
    bool moves = false;
    for (Point b : base_)
      if (g[b] != b) { moves = true; break; }
    if (!moves) base_.push_back(g.smallest_moved());
  }

  for (Point b : base_) add_level(b);
  // assign generators to the levels whose prefix they fix
  for (uint32_t id = 0; id < strong_.size(); ++id) {
    for (size_t li = 0; li < levels_.size(); ++li) {
      bool fixes = true;
      for (size_t k = 0; k < li && fixes; ++k)
        fixes = strong_[id][base_[k]] == base_[k];
      if (fixes)
        append_gen_to_level(li, id);
      else
        break;
    }
  }

  // main loop: always work on the deepest level with pending pairs
  while (true) {
    size_t li = levels_.size();
    for (size_t j = levels_.size(); j-- > 0;) {
      if (!levels_[j].pending.empty()) { li = j; break; }
    }
    if (li == levels_.size()) break;
    process_pair(li);
  }
}

void StabilizerChain::add_level(Point base_point) {
  Level lv;
  lv.base = base_point;
  lv.pos.assign(degree_, -1);
  lv.orb.push_back(base_point);
  lv.pos[base_point] = 0;
  lv.parent_pos.push_back(0);
  lv.via_local.push_back(-1);
  lv.depth.push_back(0);
  lv.explicit_mode = degree_ <= explicit_budget_;
  if (lv.explicit_mode) {
    std::vector<Point> id(degree_);
    for (Point p = 0; p < degree_; ++p) id[p] = p;
    lv.tr.push_back(std::move(id));
  }
  levels_.push_back(std::move(lv));
}

void StabilizerChain::add_point(size_t li, Point p, uint32_t parent, int32_t via) {
  Level& lv = levels_[li];
  uint32_t npos = static_cast<uint32_t>(lv.orb.size());
  lv.orb.push_back(p);
  lv.pos[p] = static_cast<int32_t>(npos);
  lv.parent_pos.push_back(parent);
  lv.via_local.push_back(via);
  lv.depth.push_back(lv.depth[parent] + 1);
  if (lv.explicit_mode) {
    if (static_cast<uint64_t>(lv.orb.size()) * degree_ > explicit_budget_) {
      lv.explicit_mode = false;
      lv.tr.clear();
      lv.tr.shrink_to_fit();
    } else {
      const std::vector<Point>& pu = lv.tr[parent];
      const Perm& s = strong_[lv.gen_ids[via]];
      std::vector<Point> nu(degree_);
      for (Point x = 0; x < degree_; ++x) nu[x] = s[pu[x]];
      lv.tr.push_back(std::move(nu));
    }
  }
  for (uint32_t lg = 0; lg < lv.gen_ids.size(); ++lg)
    lv.pending.emplace_back(npos, lg);
}

void StabilizerChain::append_gen_to_level(size_t li, uint32_t gen_id) {
  Level& lv = levels_[li];
  uint32_t lg = static_cast<uint32_t>(lv.gen_ids.size());
  lv.gen_ids.push_back(gen_id);
  for (uint32_t p = 0; p < lv.orb.size(); ++p) lv.pending.emplace_back(p, lg);
}

void StabilizerChain::collect_path(size_t li, size_t opos,
                                   std::vector<uint32_t>& local_gens) const {
  const Level& lv = levels_[li];
  local_gens.clear();
  size_t cur = opos;
  while (lv.via_local[cur] >= 0) {
    local_gens.push_back(static_cast<uint32_t>(lv.via_local[cur]));
    cur = lv.parent_pos[cur];
  }
  std::reverse(local_gens.begin(), local_gens.end());  // root-to-node order
}

const std::vector<Point>& StabilizerChain::materialize_u(size_t li, size_t opos) const {
  const Level& lv = levels_[li];
  if (lv.explicit_mode) return lv.tr[opos];
  if (lv.cache_pos == opos) return lv.cache_u;
  std::vector<uint32_t> path;
  collect_path(li, opos, path);
  std::vector<Point>& u = lv.cache_u;
  u.resize(degree_);
  for (Point p = 0; p < degree_; ++p) u[p] = p;
  for (uint32_t lg : path) {
    const Perm& s = strong_[lv.gen_ids[lg]];
    for (Point p = 0; p < degree_; ++p) u[p] = s[u[p]];
  }
  lv.cache_pos = opos;
  return u;
}

Point StabilizerChain::u_inv_apply(size_t li, size_t opos, Point x) const {
  const Level& lv = levels_[li];
  size_t cur = opos;
  while (lv.via_local[cur] >= 0) {
    x = strong_inv_[lv.gen_ids[lv.via_local[cur]]][x];
    cur = lv.parent_pos[cur];
  }
  return x;
}

void StabilizerChain::process_pair(size_t li) {
  Level& lv = levels_[li];
  auto [p_, lg] = lv.pending.front();
  lv.pending.pop_front();
  Point beta = lv.orb[p_];
  const Perm& s = strong_[lv.gen_ids[lg]];
  Point beta2 = s[beta];
  int32_t o2 = lv.pos[beta2];
  if (o2 < 0) {
    add_point(li, beta2, p_, static_cast<int32_t>(lg));
    return;
  }
  // tree edge: transversal was defined as u_parent * s, nothing to check
  if (lv.parent_pos[o2] == p_ && lv.via_local[o2] == static_cast<int32_t>(lg) &&
      lv.depth[o2] == lv.depth[p_] + 1)
    return;

  // Schreier generator u_beta * s * u_beta2^-1
  Perm residue;
  if (lv.explicit_mode) {
    const std::vector<Point>& ub = lv.tr[p_];
    const std::vector<Point>& ub2 = lv.tr[o2];
    std::vector<Point> w(degree_);
    bool equal = true;
    for (Point x = 0; x < degree_; ++x) {
      w[x] = s[ub[x]];
      if (w[x] != ub2[x]) equal = false;
    }
    if (equal) return;
    std::vector<Point> inv2(degree_);
    for (Point x = 0; x < degree_; ++x) inv2[ub2[x]] = x;
    std::vector<Point> r(degree_);
    for (Point x = 0; x < degree_; ++x) r[x] = inv2[w[x]];
    residue = Perm(std::move(r));
  } else {
    const std::vector<Point>& ub = materialize_u(li, p_);
    std::vector<Point> w(degree_);
    for (Point x = 0; x < degree_; ++x) w[x] = s[ub[x]];
    std::vector<uint32_t> path2;
    collect_path(li, o2, path2);
    bool equal = true;
    for (Point x = 0; x < degree_ && equal; ++x) {
      Point y = x;
      for (uint32_t g2 : path2) y = strong_[lv.gen_ids[g2]][y];
      if (y != w[x]) equal = false;
    }
    if (equal) return;
    // r = w * u_beta2^-1, applying the inverse path pointwise
    std::vector<Point> r(degree_);
    for (Point x = 0; x < degree_; ++x) {
      Point y = w[x];
      for (size_t k = path2.size(); k-- > 0;)
        y = strong_inv_[lv.gen_ids[path2[k]]][y];
      r[x] = y;
    }
    residue = Perm(std::move(r));
  }

  auto [res, stuck] = strip(std::move(residue), li + 1);
  (void)stuck;
  if (res.is_identity()) return;

  bool fixes_all = true;
  for (Point b : base_)
    if (res[b] != b) { fixes_all = false; break; }
  if (fixes_all) {
    Point nb = res.smallest_moved();
    base_.push_back(nb);
    add_level(nb);
  }
  uint32_t id = static_cast<uint32_t>(strong_.size());
  strong_.push_back(res);
  strong_inv_.push_back(res.inverse());
  for (size_t j = li + 1; j < levels_.size(); ++j) {
    bool fixes = true;
    for (size_t k = 0; k < j && fixes; ++k)
      fixes = res[base_[k]] == base_[k];
    if (!fixes) break;
    append_gen_to_level(j, id);
  }
}

std::pair<Perm, size_t> StabilizerChain::strip(Perm g, size_t from) const {
  for (size_t j = from; j < levels_.size(); ++j) {
    const Level& lv = levels_[j];
    Point beta = g[lv.base];
    int32_t o = lv.pos[beta];
    if (o < 0) return {std::move(g), j};
    if (lv.via_local[o] < 0) continue;  // u is the identity
    if (lv.explicit_mode) {
      const std::vector<Point>& u = lv.tr[o];
      std::vector<Point> inv(degree_);
      for (Point x = 0; x < degree_; ++x) inv[u[x]] = x;
      std::vector<Point> r(degree_);
      for (Point x = 0; x < degree_; ++x) r[x] = inv[g[x]];
      g = Perm(std::move(r));
    } else {
      std::vector<Point> r(degree_);
      for (Point x = 0; x < degree_; ++x) r[x] = u_inv_apply(j, o, g[x]);
      g = Perm(std::move(r));
    }
  }
  return {std::move(g), levels_.size()};
}

uint64_t StabilizerChain::order_from(size_t level) const {
  uint64_t n = 1;
  for (size_t j = level; j < levels_.size(); ++j) n *= levels_[j].orb.size();
  return n;
}

uint32_t StabilizerChain::orbit_size(size_t level) const {
  return static_cast<uint32_t>(levels_.at(level).orb.size());
}

bool StabilizerChain::orbit_contains(size_t level, Point p) const {
  return levels_.at(level).pos[p] >= 0;
}

const std::vector<Point>& StabilizerChain::orbit_points(size_t level) const {
  return levels_.at(level).orb;
}

std::vector<Perm> StabilizerChain::level_generators(size_t level) const {
  level = std::min(level, base_.size());
  std::vector<Perm> out;
  for (const Perm& g : strong_) {
    bool fixes = true;
    for (size_t k = 0; k < level && fixes; ++k)
      fixes = g[base_[k]] == base_[k];
    if (fixes) out.push_back(g);
  }
  return out;
}

Perm StabilizerChain::transversal(size_t level, Point p) const {
  const Level& lv = levels_.at(level);
  int32_t o = lv.pos[p];
  if (o < 0) throw std::invalid_argument("point not in orbit at this level");
  return Perm(materialize_u(level, o));
}

bool StabilizerChain::contains(const Perm& g) const {
  if (g.degree() != degree_) return false;
  auto [res, lvl] = strip(g, 0);
  (void)lvl;
  return res.is_identity();
}

std::pair<Perm, size_t> StabilizerChain::sift(Perm g) const {
  return strip(std::move(g), 0);
}

// ---------------------------------------------------------------------------
// PermGroup
// ---------------------------------------------------------------------------

PermGroup::PermGroup(uint32_t degree, std::vector<Perm> generators)
    : degree_(degree), gens_(std::move(generators)) {
  if (gens_.empty()) throw std::invalid_argument("generator list must be nonempty");
  for (const Perm& g : gens_)
    if (g.degree() != degree_)
      throw std::invalid_argument("generator degree mismatch");
}

PermGroup PermGroup::trivial(uint32_t degree) {
  return PermGroup(degree, {Perm(degree)});
}

PermGroup::PermGroup(const PermGroup& o) : degree_(o.degree_), gens_(o.gens_) {
  std::lock_guard<std::mutex> lock(o.chain_mutex_);
  chain_ = o.chain_;
}

PermGroup& PermGroup::operator=(const PermGroup& o) {
  if (this == &o) return *this;
  std::shared_ptr<const StabilizerChain> ch;
  {
    std::lock_guard<std::mutex> lock(o.chain_mutex_);
    ch = o.chain_;
  }
  std::lock_guard<std::mutex> lock(chain_mutex_);
  degree_ = o.degree_;
  gens_ = o.gens_;
  chain_ = std::move(ch);
  return *this;
}

PermGroup::PermGroup(PermGroup&& o) noexcept : degree_(o.degree_), gens_(std::move(o.gens_)) {
  std::lock_guard<std::mutex> lock(o.chain_mutex_);
  chain_ = std::move(o.chain_);
}

PermGroup& PermGroup::operator=(PermGroup&& o) noexcept {
  if (this == &o) return *this;
  std::lock_guard<std::mutex> lock(chain_mutex_);
  degree_ = o.degree_;
  gens_ = std::move(o.gens_);
  chain_ = std::move(o.chain_);
  return *this;
}

const StabilizerChain& PermGroup::chain() const {
  std::lock_guard<std::mutex> lock(chain_mutex_);
  if (!chain_) chain_ = std::make_shared<const StabilizerChain>(degree_, gens_);
  return *chain_;
}

bool PermGroup::is_transitive() const {
  std::vector<bool> seen(degree_, false);
  std::vector<Point> queue{0};
  seen[0] = true;
  size_t count = 1;
  while (!queue.empty()) {
    Point p = queue.back();
    queue.pop_back();
    for (const Perm& g : gens_) {
      Point q = g[p];
      if (!seen[q]) { seen[q] = true; ++count; queue.push_back(q); }
    }
  }
  return count == degree_;
}

namespace {

// minimal block containing {a,b}; returns class labels via union-find
class UnionFind {
public:
  explicit UnionFind(uint32_t n) : parent_(n) {
    for (uint32_t i = 0; i < n; ++i) parent_[i] = i;
  }
  uint32_t find(uint32_t x) {
    while (parent_[x] != x) { parent_[x] = parent_[parent_[x]]; x = parent_[x]; }
    return x;
  }
  // returns false if already merged
  bool merge(uint32_t a, uint32_t b) {
    a = find(a); b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    return true;
  }
private:
  std::vector<uint32_t> parent_;
};

}  // namespace

std::optional<std::vector<Point>> PermGroup::find_block() const {
  if (!is_transitive())
    throw std::invalid_argument("block search requires a transitive group");
  if (degree_ <= 2) return std::nullopt;
  for (Point p = 1; p < degree_; ++p) {
    // smallest G-congruence identifying 0 and p
    UnionFind uf(degree_);
    std::deque<std::pair<Point, Point>> queue;
    uf.merge(0, p);
    queue.emplace_back(0, p);
    while (!queue.empty()) {
      auto [a, b] = queue.front();
      queue.pop_front();
      for (const Perm& g : gens_) {
        Point ga = g[a], gb = g[b];
        if (uf.merge(ga, gb)) queue.emplace_back(ga, gb);
      }
    }
    std::vector<Point> block;
    uint32_t root = uf.find(0);
    for (Point q = 0; q < degree_; ++q)
      if (uf.find(q) == root) block.push_back(q);
    if (block.size() < degree_) return block;  // nontrivial (size >= 2 by construction)
  }
  return std::nullopt;
}

bool PermGroup::is_primitive() const {
  return !find_block().has_value();
}

PermGroup PermGroup::stabilizer(std::span<const Point> pts) const {
  PermGroup cur = *this;
  for (Point p : pts) {
    if (p >= degree_) throw std::invalid_argument("stabilizer point out of range");
    bool fixed_by_all = true;
    for (const Perm& g : cur.gens_)
      if (g[p] != p) { fixed_by_all = false; break; }
    if (fixed_by_all) continue;
    const StabilizerChain* ch = &cur.chain();
    std::shared_ptr<const StabilizerChain> rebased;
    if (!(ch->num_levels() > 0 && ch->orbit_contains(0, p))) {
      ChainOptions opt;
      opt.base_prefix = {p};
      rebased = std::make_shared<const StabilizerChain>(degree_, cur.gens_, opt);
      ch = rebased.get();
    }
    std::vector<Perm> next;
    if (ch->base()[0] == p) {
      next = ch->level_generators(1);
    } else {
      Perm w = ch->transversal(0, p);
      Perm wi = w.inverse();
      for (const Perm& g : ch->level_generators(1))
        next.push_back(compose(compose(wi, g), w));
    }
    if (next.empty()) next.push_back(Perm(degree_));
    cur = PermGroup(degree_, std::move(next));
  }
  return cur;
}

bool generates_whole(const PermGroup& g, const std::vector<Perm>& subgens_a,
                     const std::vector<Perm>& subgens_b) {
  std::vector<Perm> all;
  for (const Perm& s : subgens_a) {
    if (!g.contains(s)) throw std::invalid_argument("subgroup generator not in group");
    all.push_back(s);
  }
  for (const Perm& s : subgens_b) {
    if (!g.contains(s)) throw std::invalid_argument("subgroup generator not in group");
    all.push_back(s);
  }
  if (all.empty()) return g.order() == 1;
  StabilizerChain joint(g.degree(), all);
  return joint.order() == g.order();
}

std::vector<Perm> reduce_generators(uint32_t degree, const std::vector<Perm>& gens) {
  std::vector<Perm> kept;
  uint64_t cur_order = 1;
  for (const Perm& g : gens) {
    if (g.is_identity()) continue;
    std::vector<Perm> trial = kept;
    trial.push_back(g);
    StabilizerChain ch(degree, trial);
    if (ch.order() > cur_order) {
      kept.push_back(g);
      cur_order = ch.order();
    }
  }
  if (kept.empty()) kept.push_back(Perm(degree));
  return kept;
}

}  // namespace geoforge
