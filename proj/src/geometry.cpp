#include "geoforge/geometry.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace geoforge {

uint64_t flag_budget() {
  if (const char* s = std::getenv("GEOFORGE_FLAG_BUDGET")) {
    uint64_t v = std::strtoull(s, nullptr, 10);
    if (v > 0) return v;
  }
  return 10'000'000;
}

Pregeometry::Pregeometry(std::vector<int> type_ids, std::vector<uint32_t> sizes)
    : type_ids_(std::move(type_ids)), sizes_(std::move(sizes)) {
  if (type_ids_.size() != sizes_.size())
    throw std::invalid_argument("type/size lists of unequal length");
  if (type_ids_.empty()) throw std::invalid_argument("a pregeometry needs a type");
  for (uint32_t s : sizes_)
    if (s == 0) throw std::invalid_argument("empty type class");
  labels_.resize(type_ids_.size());
  size_t r = type_ids_.size();
  nbrs_.resize(r);
  for (size_t t1 = 0; t1 < r; ++t1) {
    nbrs_[t1].resize(r);
    for (size_t t2 = 0; t2 < r; ++t2)
      if (t1 != t2) nbrs_[t1][t2].resize(sizes_[t1]);
  }
}

Pregeometry Pregeometry::rank1(uint32_t count, int type_id) {
  return Pregeometry({type_id}, {count});
}

uint64_t Pregeometry::total_elements() const {
  uint64_t n = 0;
  for (uint32_t s : sizes_) n += s;
  return n;
}

int64_t Pregeometry::type_position(int type_id) const {
  for (size_t t = 0; t < type_ids_.size(); ++t)
    if (type_ids_[t] == type_id) return static_cast<int64_t>(t);
  return -1;
}

void Pregeometry::set_labels(uint32_t t, std::vector<std::string> labels) {
  if (labels.size() != sizes_.at(t))
    throw std::invalid_argument("label count mismatch");
  labels_[t] = std::move(labels);
}

std::string Pregeometry::label(ElemRef e) const {
  if (!labels_[e.type].empty()) return labels_[e.type][e.index];
  return std::to_string(e.index + 1);
}

void Pregeometry::add_edge(ElemRef a, ElemRef b) {
  if (a.type == b.type) throw std::invalid_argument("incidence within a type");
  if (a.index >= sizes_.at(a.type) || b.index >= sizes_.at(b.type))
    throw std::invalid_argument("edge endpoint out of range");
  nbrs_[a.type][b.type][a.index].push_back(b.index);
  nbrs_[b.type][a.type][b.index].push_back(a.index);
  finalized_ = false;
}

void Pregeometry::finalize_edges() {
  for (auto& m1 : nbrs_)
    for (auto& m2 : m1)
      for (auto& row : m2) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
      }
  finalized_ = true;
}

bool Pregeometry::incident(ElemRef a, ElemRef b) const {
  if (a.type == b.type) return false;
  const auto& row = nbrs_[a.type][b.type][a.index];
  return std::binary_search(row.begin(), row.end(), b.index);
}

const std::vector<uint32_t>& Pregeometry::neighbors(ElemRef e, uint32_t t) const {
  return nbrs_.at(e.type).at(t).at(e.index);
}

uint64_t Pregeometry::edge_count(uint32_t t1, uint32_t t2) const {
  uint64_t n = 0;
  for (const auto& row : nbrs_.at(t1).at(t2)) n += row.size();
  return n;
}

uint64_t Pregeometry::edge_count() const {
  uint64_t n = 0;
  for (size_t t1 = 0; t1 < rank(); ++t1)
    for (size_t t2 = t1 + 1; t2 < rank(); ++t2) n += edge_count(t1, t2);
  return n;
}

std::vector<std::pair<ElemRef, ElemRef>> Pregeometry::edges() const {
  std::vector<std::pair<ElemRef, ElemRef>> out;
  for (uint32_t t1 = 0; t1 < rank(); ++t1)
    for (uint32_t t2 = t1 + 1; t2 < rank(); ++t2)
      for (uint32_t i = 0; i < sizes_[t1]; ++i)
        for (uint32_t j : nbrs_[t1][t2][i])
          out.push_back({ElemRef{t1, i}, ElemRef{t2, j}});
  return out;
}

uint32_t Pregeometry::union_offset(uint32_t t) const {
  uint32_t off = 0;
  for (uint32_t k = 0; k < t; ++k) off += sizes_[k];
  return off;
}

uint32_t Pregeometry::union_size() const {
  return static_cast<uint32_t>(total_elements());
}

ElemRef Pregeometry::from_union(uint32_t u) const {
  for (uint32_t t = 0; t < rank(); ++t) {
    if (u < sizes_[t]) return {t, u};
    u -= sizes_[t];
  }
  throw std::invalid_argument("union index out of range");
}

void Pregeometry::attach(PermGroup group, Flag base_chamber) {
  if (!finalized_) finalize_edges();
  if (group.degree() != union_size())
    throw std::invalid_argument("attached group degree must match the element count");
  // type partition and incidence preserved by every generator
  for (const Perm& g : group.generators()) {
    for (uint32_t t = 0; t < rank(); ++t) {
      uint32_t off = union_offset(t);
      for (uint32_t i = 0; i < sizes_[t]; ++i) {
        uint32_t im = g[off + i];
        if (im < off || im >= off + sizes_[t])
          throw std::invalid_argument("generator does not preserve the type partition");
      }
    }
    for (uint32_t t1 = 0; t1 < rank(); ++t1) {
      uint32_t off1 = union_offset(t1);
      for (uint32_t t2 = t1 + 1; t2 < rank(); ++t2) {
        uint32_t off2 = union_offset(t2);
        for (uint32_t i = 0; i < sizes_[t1]; ++i)
          for (uint32_t j : nbrs_[t1][t2][i]) {
            ElemRef ia{t1, g[off1 + i] - off1};
            ElemRef jb{t2, g[off2 + j] - off2};
            if (!incident(ia, jb))
              throw std::invalid_argument("generator does not preserve incidence");
          }
      }
    }
  }
  std::sort(base_chamber.begin(), base_chamber.end());
  if (!is_flag(base_chamber) || base_chamber.size() != rank())
    throw std::invalid_argument("base chamber is not a chamber");
  group_ = std::move(group);
  base_chamber_ = std::move(base_chamber);
  ft_verified_ = false;
}

const PermGroup& Pregeometry::group() const {
  if (!group_) throw std::invalid_argument("no group attached");
  return *group_;
}

const Flag& Pregeometry::base_chamber() const {
  if (!group_) throw std::invalid_argument("no group attached");
  return base_chamber_;
}

bool Pregeometry::is_flag(const Flag& f) const {
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i].type >= rank() || f[i].index >= sizes_[f[i].type]) return false;
    for (size_t j = i + 1; j < f.size(); ++j) {
      if (f[i].type == f[j].type) return false;
      if (!incident(f[i], f[j])) return false;
    }
  }
  return true;
}

uint64_t Pregeometry::content_hash() const {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  for (int t : type_ids_) mix(static_cast<uint64_t>(t) + 0x9e37);
  for (uint32_t s : sizes_) mix(s);
  for (uint32_t t1 = 0; t1 < rank(); ++t1)
    for (uint32_t t2 = t1 + 1; t2 < rank(); ++t2)
      for (uint32_t i = 0; i < sizes_[t1]; ++i) {
        mix(0xffffffffull);
        for (uint32_t j : nbrs_[t1][t2][i]) mix(j);
      }
  if (group_) {
    for (const Perm& g : group_->generators())
      for (Point p : g.images()) mix(p);
    for (const ElemRef& e : base_chamber_) mix((uint64_t(e.type) << 32) | e.index);
  }
  return h;
}

// --- chambers and flags ------------------------------------------------------

namespace {

// sorted intersection of candidate lists
std::vector<uint32_t> intersect(const std::vector<uint32_t>& a,
                                const std::vector<uint32_t>& b) {
  std::vector<uint32_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// candidates of type t incident to every element of the flag
std::vector<uint32_t> candidates(const Pregeometry& g, const Flag& f, uint32_t t) {
  std::vector<uint32_t> cand;
  bool first = true;
  for (const ElemRef& e : f) {
    if (e.type == t) return {};
    const auto& row = g.neighbors(e, t);
    if (first) {
      cand = row;
      first = false;
    } else {
      cand = intersect(cand, row);
    }
    if (cand.empty()) return cand;
  }
  if (first) {
    cand.resize(g.size(t));
    std::iota(cand.begin(), cand.end(), 0u);
  }
  return cand;
}

struct Budget {
  uint64_t left;
  void tick() {
    if (left-- == 0) throw ResourceError("flag enumeration exceeds the configured budget");
  }
};

uint64_t count_extensions(const Pregeometry& g, Flag& f, const std::vector<uint32_t>& types,
                          size_t k, Budget& budget) {
  if (k == types.size()) return 1;
  uint64_t total = 0;
  uint32_t t = types[k];
  for (uint32_t i : candidates(g, f, t)) {
    budget.tick();
    f.push_back({t, i});
    total += count_extensions(g, f, types, k + 1, budget);
    f.pop_back();
  }
  return total;
}

}  // namespace

uint64_t chambers_containing(const Pregeometry& g, const Flag& f, uint64_t budget) {
  if (!g.is_flag(f)) throw std::invalid_argument("not a flag");
  std::vector<uint32_t> missing;
  for (uint32_t t = 0; t < g.rank(); ++t) {
    bool present = false;
    for (const ElemRef& e : f) present |= e.type == t;
    if (!present) missing.push_back(t);
  }
  Budget b{budget ? budget : flag_budget()};
  Flag work = f;
  return count_extensions(g, work, missing, 0, b);
}

std::vector<Flag> enumerate_chambers(const Pregeometry& g, uint64_t budget) {
  std::vector<Flag> out;
  std::vector<uint32_t> types(g.rank());
  std::iota(types.begin(), types.end(), 0u);
  Budget b{budget ? budget : flag_budget()};
  Flag work;
  // depth-first extension in type order
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == types.size()) {
      out.push_back(work);
      return;
    }
    for (uint32_t i : candidates(g, work, types[k])) {
      b.tick();
      work.push_back({types[k], i});
      rec(k + 1);
      work.pop_back();
    }
  };
  rec(0);
  return out;
}

namespace {

// DFS over all flags (include-or-skip per type, in type order); at each full
// assignment checks that every absent type still has a candidate.
bool geometry_scan(const Pregeometry& g, Flag& f, uint32_t t, Budget& budget,
                   Flag* witness, int* blocked_type) {
  if (t == g.rank()) {
    for (uint32_t m = 0; m < g.rank(); ++m) {
      bool present = false;
      for (const ElemRef& e : f) present |= e.type == m;
      if (!present && candidates(g, f, m).empty()) {
        if (witness) *witness = f;
        if (blocked_type) *blocked_type = g.type_ids()[m];
        return false;
      }
    }
    return true;
  }
  if (!geometry_scan(g, f, t + 1, budget, witness, blocked_type)) return false;
  for (uint32_t i : candidates(g, f, t)) {
    budget.tick();
    f.push_back({t, i});
    bool ok = geometry_scan(g, f, t + 1, budget, witness, blocked_type);
    f.pop_back();
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool is_geometry_exhaustive(const Pregeometry& g, Flag* witness, int* blocked_type,
                            uint64_t budget) {
  Budget b{budget ? budget : flag_budget()};
  Flag f;
  return geometry_scan(g, f, 0, b, witness, blocked_type);
}

bool is_geometry_base(const Pregeometry& g, Flag* witness, int* blocked_type) {
  const Flag& k = g.base_chamber();
  const size_t r = g.rank();
  for (uint64_t mask = 0; mask < (1ull << r); ++mask) {
    Flag f;
    for (size_t t = 0; t < r; ++t)
      if (mask & (1ull << t)) f.push_back(k[t]);
    for (uint32_t m = 0; m < r; ++m) {
      if (mask & (1ull << m)) continue;
      if (candidates(g, f, m).empty()) {
        if (witness) *witness = f;
        if (blocked_type) *blocked_type = g.type_ids()[m];
        return false;
      }
    }
  }
  return true;
}

namespace {

bool thick_scan(const Pregeometry& g, Flag& f, uint32_t t, Budget& budget, Flag* witness) {
  if (t == g.rank()) {
    if (f.size() == g.rank()) return true;  // chambers are exempt
    if (chambers_containing(g, f) < 3) {
      if (witness) *witness = f;
      return false;
    }
    return true;
  }
  if (!thick_scan(g, f, t + 1, budget, witness)) return false;
  for (uint32_t i : candidates(g, f, t)) {
    budget.tick();
    f.push_back({t, i});
    bool ok = thick_scan(g, f, t + 1, budget, witness);
    f.pop_back();
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool is_thick_exhaustive(const Pregeometry& g, Flag* witness, uint64_t budget) {
  Budget b{budget ? budget : flag_budget()};
  Flag f;
  return thick_scan(g, f, 0, b, witness);
}

bool is_thick_base(const Pregeometry& g, Flag* witness) {
  const Flag& k = g.base_chamber();
  const size_t r = g.rank();
  for (uint64_t mask = 0; mask + 1 < (1ull << r); ++mask) {  // skip the chamber itself
    Flag f;
    for (size_t t = 0; t < r; ++t)
      if (mask & (1ull << t)) f.push_back(k[t]);
    if (chambers_containing(g, f) < 3) {
      if (witness) *witness = f;
      return false;
    }
  }
  return true;
}

// --- truncation / residue / quotient -----------------------------------------

Pregeometry truncation(const Pregeometry& g, const std::vector<int>& keep_type_ids) {
  if (keep_type_ids.empty()) throw std::invalid_argument("truncation needs a type");
  std::vector<uint32_t> keep;
  for (int id : keep_type_ids) {
    int64_t pos = g.type_position(id);
    if (pos < 0) throw std::invalid_argument("unknown type in truncation");
    keep.push_back(static_cast<uint32_t>(pos));
  }
  std::vector<int> ids;
  std::vector<uint32_t> sizes;
  for (uint32_t t : keep) {
    ids.push_back(g.type_ids()[t]);
    sizes.push_back(g.size(t));
  }
  Pregeometry out(ids, sizes);
  for (uint32_t a = 0; a < keep.size(); ++a)
    for (uint32_t b = a + 1; b < keep.size(); ++b)
      for (uint32_t i = 0; i < g.size(keep[a]); ++i)
        for (uint32_t j : g.neighbors({keep[a], i}, keep[b]))
          out.add_edge({a, i}, {b, j});
  out.finalize_edges();
  return out;
}

namespace {

// BFS over the union incidence graph restricted to the given types
uint64_t bfs_component_size(const Pregeometry& g, const std::vector<uint32_t>& types,
                            ElemRef start) {
  std::vector<std::vector<bool>> seen(g.rank());
  for (uint32_t t : types) seen[t].assign(g.size(t), false);
  std::deque<ElemRef> queue{start};
  seen[start.type][start.index] = true;
  uint64_t count = 1;
  while (!queue.empty()) {
    ElemRef e = queue.front();
    queue.pop_front();
    for (uint32_t t : types) {
      if (t == e.type) continue;
      for (uint32_t j : g.neighbors(e, t)) {
        if (!seen[t][j]) {
          seen[t][j] = true;
          ++count;
          queue.push_back({t, j});
        }
      }
    }
  }
  return count;
}

}  // namespace

bool is_connected(const Pregeometry& g) {
  std::vector<uint32_t> types(g.rank());
  std::iota(types.begin(), types.end(), 0u);
  return bfs_component_size(g, types, {0, 0}) == g.total_elements();
}

bool pair_connected(const Pregeometry& g, uint32_t t1, uint32_t t2) {
  return bfs_component_size(g, {t1, t2}, {t1, 0}) ==
         uint64_t(g.size(t1)) + g.size(t2);
}

Pregeometry residue(const Pregeometry& g, const Flag& f) {
  if (!g.is_flag(f)) throw std::invalid_argument("residue requires a flag");
  std::vector<uint32_t> out_types;
  for (uint32_t t = 0; t < g.rank(); ++t) {
    bool in_flag = false;
    for (const ElemRef& e : f) in_flag |= e.type == t;
    if (!in_flag) out_types.push_back(t);
  }
  if (out_types.empty()) {
    // empty residue is not representable; signal with a zero-rank error
    throw std::invalid_argument("residue of a chamber is empty");
  }
  std::vector<std::vector<uint32_t>> kept(g.rank());
  std::vector<std::vector<int64_t>> remap(g.rank());
  std::vector<int> ids;
  std::vector<uint32_t> sizes;
  for (uint32_t t : out_types) {
    remap[t].assign(g.size(t), -1);
    kept[t] = candidates(g, f, t);
    if (kept[t].empty())
      throw std::invalid_argument("residue has an empty type class");
    for (uint32_t k = 0; k < kept[t].size(); ++k) remap[t][kept[t][k]] = k;
    ids.push_back(g.type_ids()[t]);
    sizes.push_back(static_cast<uint32_t>(kept[t].size()));
  }
  Pregeometry out(ids, sizes);
  for (uint32_t a = 0; a < out_types.size(); ++a) {
    uint32_t ta = out_types[a];
    for (uint32_t b = a + 1; b < out_types.size(); ++b) {
      uint32_t tb = out_types[b];
      for (uint32_t i : kept[ta])
        for (uint32_t j : g.neighbors({ta, i}, tb))
          if (remap[tb][j] >= 0)
            out.add_edge({a, static_cast<uint32_t>(remap[ta][i])},
                         {b, static_cast<uint32_t>(remap[tb][j])});
    }
  }
  out.finalize_edges();
  // labels carried over
  for (uint32_t a = 0; a < out_types.size(); ++a) {
    std::vector<std::string> lab;
    for (uint32_t i : kept[out_types[a]]) lab.push_back(g.label({out_types[a], i}));
    out.set_labels(a, std::move(lab));
  }
  return out;
}

Pregeometry quotient(const Pregeometry& g,
                     const std::vector<std::vector<std::vector<uint32_t>>>& parts,
                     QuotientCounterexample* counterexample) {
  if (parts.size() != g.rank())
    throw std::invalid_argument("quotient partition must cover every type");
  // element -> part index, with coverage check
  std::vector<std::vector<int64_t>> part_of(g.rank());
  std::vector<uint32_t> nparts(g.rank());
  for (uint32_t t = 0; t < g.rank(); ++t) {
    part_of[t].assign(g.size(t), -1);
    for (uint32_t p = 0; p < parts[t].size(); ++p) {
      for (uint32_t i : parts[t][p]) {
        if (i >= g.size(t)) throw std::invalid_argument("partition element out of range");
        if (part_of[t][i] >= 0) throw std::invalid_argument("partition parts overlap");
        part_of[t][i] = p;
      }
    }
    for (uint32_t i = 0; i < g.size(t); ++i)
      if (part_of[t][i] < 0) throw std::invalid_argument("partition does not cover type");
    nparts[t] = static_cast<uint32_t>(parts[t].size());
    if (nparts[t] == 0) throw std::invalid_argument("type with no parts");
  }

  // group invariance
  std::vector<Perm> induced;
  if (g.has_group()) {
    for (size_t gi = 0; gi < g.group().generators().size(); ++gi) {
      const Perm& gen = g.group().generators()[gi];
      std::vector<Point> img;
      for (uint32_t t = 0; t < g.rank(); ++t) {
        uint32_t off = g.union_offset(t);
        std::vector<int64_t> part_img(nparts[t], -1);
        for (uint32_t p = 0; p < nparts[t]; ++p) {
          std::vector<uint32_t> image;
          for (uint32_t i : parts[t][p]) image.push_back(gen[off + i] - off);
          std::sort(image.begin(), image.end());
          int64_t target = part_of[t][image[0]];
          std::vector<uint32_t> target_sorted = parts[t][target];
          std::sort(target_sorted.begin(), target_sorted.end());
          if (image != target_sorted) {
            if (counterexample)
              *counterexample = {gi, t, parts[t][p], image};
            throw std::invalid_argument("partition is not invariant under the group");
          }
          part_img[p] = target;
        }
        for (int64_t v : part_img) img.push_back(static_cast<Point>(v));
      }
      // img currently concatenates per-type part images with local indices;
      // convert to union numbering
      std::vector<Point> uimg;
      uint32_t off = 0;
      size_t cursor = 0;
      for (uint32_t t = 0; t < g.rank(); ++t) {
        for (uint32_t p = 0; p < nparts[t]; ++p)
          uimg.push_back(off + static_cast<Point>(img[cursor++]));
        off += nparts[t];
      }
      induced.push_back(Perm(std::move(uimg)));
    }
  }

  std::vector<uint32_t> qsizes(nparts.begin(), nparts.end());
  Pregeometry out(g.type_ids(), qsizes);
  for (uint32_t t1 = 0; t1 < g.rank(); ++t1)
    for (uint32_t t2 = t1 + 1; t2 < g.rank(); ++t2)
      for (uint32_t i = 0; i < g.size(t1); ++i)
        for (uint32_t j : g.neighbors({t1, i}, t2))
          out.add_edge({t1, static_cast<uint32_t>(part_of[t1][i])},
                       {t2, static_cast<uint32_t>(part_of[t2][j])});
  out.finalize_edges();

  if (g.has_group()) {
    // base chamber maps to the parts containing it
    Flag qchamber;
    for (const ElemRef& e : g.base_chamber())
      qchamber.push_back({e.type, static_cast<uint32_t>(part_of[e.type][e.index])});
    out.attach(PermGroup(out.union_size(), std::move(induced)), qchamber);
  }
  return out;
}

// --- rank-2 analysis -----------------------------------------------------------

namespace {

struct UnionGraph {
  // flattened adjacency for a rank-2 pregeometry
  uint32_t n1, n2, n;
  std::vector<std::vector<uint32_t>> adj;  // union indices
  explicit UnionGraph(const Pregeometry& g) {
    n1 = g.size(0);
    n2 = g.size(1);
    n = n1 + n2;
    adj.resize(n);
    for (uint32_t i = 0; i < n1; ++i)
      for (uint32_t j : g.neighbors({0, i}, 1)) {
        adj[i].push_back(n1 + j);
        adj[n1 + j].push_back(i);
      }
  }
};

}  // namespace

DiagramParams rank2_params(const Pregeometry& g) {
  if (g.rank() != 2) throw std::invalid_argument("rank-2 pregeometry required");
  if (!pair_connected(g, 0, 1))
    throw std::invalid_argument("rank2_params requires a connected incidence graph");
  UnionGraph ug(g);
  DiagramParams out;
  out.n1 = ug.n1;
  out.n2 = ug.n2;
  // regular degrees
  auto side_degree = [&](uint32_t from, uint32_t count) -> int64_t {
    size_t d = ug.adj[from].size();
    for (uint32_t i = from; i < from + count; ++i)
      if (ug.adj[i].size() != d) return -1;
    return static_cast<int64_t>(d) - 1;
  };
  out.s1 = side_degree(0, ug.n1);
  out.s2 = side_degree(ug.n1, ug.n2);

  uint32_t girth = UINT32_MAX;
  std::vector<int32_t> dist(ug.n);
  std::vector<int32_t> parent(ug.n);
  uint32_t ecc1 = 0, ecc2 = 0;
  for (uint32_t s = 0; s < ug.n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), -1);
    std::deque<uint32_t> queue{s};
    dist[s] = 0;
    uint32_t ecc = 0;
    while (!queue.empty()) {
      uint32_t u = queue.front();
      queue.pop_front();
      for (uint32_t v : ug.adj[u]) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          parent[v] = static_cast<int32_t>(u);
          ecc = std::max<uint32_t>(ecc, static_cast<uint32_t>(dist[v]));
          queue.push_back(v);
        } else if (static_cast<int32_t>(v) != parent[u]) {
          girth = std::min<uint32_t>(girth, static_cast<uint32_t>(dist[u] + dist[v] + 1));
        }
      }
    }
    if (s < ug.n1)
      ecc1 = std::max(ecc1, ecc);
    else
      ecc2 = std::max(ecc2, ecc);
  }
  out.d1 = ecc1;
  out.d2 = ecc2;
  if (girth != UINT32_MAX) out.g = girth / 2;
  return out;
}

bool is_complete_bipartite(const Pregeometry& g) {
  if (g.rank() != 2) throw std::invalid_argument("rank-2 pregeometry required");
  return g.edge_count(0, 1) == uint64_t(g.size(0)) * g.size(1);
}

// --- bipartite isomorphism ------------------------------------------------------

namespace {

struct RefinedGraph {
  uint32_t n1, n2, n;
  std::vector<std::vector<uint32_t>> adj;
  std::vector<uint64_t> color;

  explicit RefinedGraph(const Pregeometry& g, bool swap_sides) {
    uint32_t s1 = g.size(0), s2 = g.size(1);
    n1 = swap_sides ? s2 : s1;
    n2 = swap_sides ? s1 : s2;
    n = n1 + n2;
    adj.resize(n);
    for (uint32_t i = 0; i < s1; ++i)
      for (uint32_t j : g.neighbors({0, i}, 1)) {
        uint32_t a = swap_sides ? n1 + i : i;
        uint32_t b = swap_sides ? j : n1 + j;
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    refine();
  }

  void refine() {
    color.assign(n, 0);
    for (uint32_t v = 0; v < n; ++v)
      color[v] = (v < n1 ? 1ull : 2ull) * 1000003ull + adj[v].size();
    for (int round = 0; round < 16; ++round) {
      std::vector<uint64_t> next(n);
      for (uint32_t v = 0; v < n; ++v) {
        std::vector<uint64_t> nc;
        for (uint32_t w : adj[v]) nc.push_back(color[w]);
        std::sort(nc.begin(), nc.end());
        uint64_t h = color[v] * 1099511628211ull;
        for (uint64_t c : nc) {
          h ^= c;
          h *= 1099511628211ull;
        }
        next[v] = h;
      }
      if (next == color) break;
      color = std::move(next);
    }
  }
};

bool backtrack_iso(const RefinedGraph& A, const RefinedGraph& B) {
  if (A.n1 != B.n1 || A.n2 != B.n2) return false;
  {
    std::vector<uint64_t> ca = A.color, cb = B.color;
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    if (ca != cb) return false;
  }
  // order A's vertices: rarest color first for earlier pruning
  std::map<uint64_t, uint32_t> freq;
  for (uint64_t c : A.color) ++freq[c];
  std::vector<uint32_t> order(A.n);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    return freq[A.color[a]] < freq[A.color[b]];
  });
  std::vector<int64_t> map_ab(A.n, -1), map_ba(B.n, -1);

  std::function<bool(size_t)> rec = [&](size_t k) -> bool {
    if (k == order.size()) return true;
    uint32_t a = order[k];
    for (uint32_t b = 0; b < B.n; ++b) {
      if (map_ba[b] >= 0 || B.color[b] != A.color[a]) continue;
      bool ok = true;
      for (uint32_t an : A.adj[a]) {
        if (map_ab[an] >= 0 &&
            !std::binary_search(B.adj[b].begin(), B.adj[b].end(),
                                static_cast<uint32_t>(map_ab[an]))) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      // also degree must match exactly
      if (A.adj[a].size() != B.adj[b].size()) continue;
      map_ab[a] = b;
      map_ba[b] = a;
      if (rec(k + 1)) return true;
      map_ab[a] = -1;
      map_ba[b] = -1;
    }
    return false;
  };
  return rec(0);
}

}  // namespace

bool bipartite_isomorphic(const Pregeometry& a, const Pregeometry& b) {
  if (a.rank() != 2 || b.rank() != 2)
    throw std::invalid_argument("bipartite isomorphism needs rank-2 inputs");
  if (a.total_elements() != b.total_elements() || a.edge_count() != b.edge_count())
    return false;
  RefinedGraph ra(a, false);
  if (a.size(0) == b.size(0) && a.size(1) == b.size(1)) {
    if (backtrack_iso(ra, RefinedGraph(b, false))) return true;
  }
  if (a.size(0) == b.size(1) && a.size(1) == b.size(0)) {
    if (backtrack_iso(ra, RefinedGraph(b, true))) return true;
  }
  return false;
}

// --- basic diagram ----------------------------------------------------------------

std::vector<DiagramEntry> basic_diagram(const Pregeometry& g) {
  if (!g.has_group()) throw std::invalid_argument("basic diagram needs an attached group");
  if (!g.ft_verified())
    throw std::invalid_argument("basic diagram needs verified flag-transitivity");
  const Flag& k = g.base_chamber();
  std::vector<DiagramEntry> out;
  for (uint32_t t1 = 0; t1 < g.rank(); ++t1)
    for (uint32_t t2 = t1 + 1; t2 < g.rank(); ++t2) {
      Flag f;
      for (const ElemRef& e : k)
        if (e.type != t1 && e.type != t2) f.push_back(e);
      Pregeometry res = g.rank() == 2 ? g : residue(g, f);
      DiagramEntry entry;
      entry.type1 = g.type_ids()[t1];
      entry.type2 = g.type_ids()[t2];
      entry.connected = pair_connected(res, 0, 1);
      entry.edge = !is_complete_bipartite(res);
      if (entry.connected) entry.params = rank2_params(res);
      out.push_back(entry);
    }
  return out;
}

std::string diagram_dot(const Pregeometry& g, const std::vector<DiagramEntry>& entries) {
  std::ostringstream out;
  out << "graph basic_diagram {\n  node [shape=circle];\n";
  for (uint32_t t = 0; t < g.rank(); ++t) {
    out << "  t" << g.type_ids()[t] << " [label=\"" << g.type_ids()[t]
        << "\\nn=" << g.size(t);
    for (const DiagramEntry& e : entries) {
      if (!e.edge || !e.connected) continue;
      if (e.type1 == g.type_ids()[t]) {
        out << " s=" << e.params.s1;
        break;
      }
      if (e.type2 == g.type_ids()[t]) {
        out << " s=" << e.params.s2;
        break;
      }
    }
    out << "\"];\n";
  }
  for (const DiagramEntry& e : entries) {
    if (!e.edge) continue;
    out << "  t" << e.type1 << " -- t" << e.type2;
    if (e.connected) {
      out << " [label=\"" << e.params.d1 << " "
          << (e.params.g ? std::to_string(*e.params.g) : std::string("-")) << " "
          << e.params.d2 << "\"]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

// --- model geometries -----------------------------------------------------------

namespace {

std::vector<std::vector<uint32_t>> subsets(uint32_t m, uint32_t k) {
  std::vector<std::vector<uint32_t>> out;
  std::vector<uint32_t> cur;
  std::function<void(uint32_t)> rec = [&](uint32_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (uint32_t v = start; v < m; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

struct ColoredSet {
  std::vector<uint32_t> elems;   // sorted
  std::vector<uint32_t> colors;  // parallel to elems
};

std::vector<ColoredSet> colored_subsets(uint32_t m, uint32_t k, uint32_t delta) {
  std::vector<ColoredSet> out;
  for (const auto& s : subsets(m, k)) {
    std::vector<uint32_t> col(k, 0);
    while (true) {
      out.push_back({s, col});
      uint32_t i = k;
      while (i > 0) {
        if (++col[i - 1] < delta) break;
        col[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
    }
  }
  return out;
}

std::string colored_label(const ColoredSet& c, uint32_t delta) {
  std::ostringstream out;
  out << '{';
  for (size_t i = 0; i < c.elems.size(); ++i) {
    if (i) out << ',';
    out << c.elems[i] + 1;
    if (delta > 1) out << ':' << c.colors[i] + 1;
  }
  out << '}';
  return out.str();
}

bool colored_contains(const ColoredSet& big, const ColoredSet& small) {
  size_t j = 0;
  for (size_t i = 0; i < small.elems.size(); ++i) {
    while (j < big.elems.size() && big.elems[j] < small.elems[i]) ++j;
    if (j == big.elems.size() || big.elems[j] != small.elems[i] ||
        big.colors[j] != small.colors[i])
      return false;
  }
  return true;
}

bool sets_disjoint(const ColoredSet& a, const ColoredSet& b) {
  size_t i = 0, j = 0;
  while (i < a.elems.size() && j < b.elems.size()) {
    if (a.elems[i] == b.elems[j]) return false;
    if (a.elems[i] < b.elems[j])
      ++i;
    else
      ++j;
  }
  return true;
}

}  // namespace

Pregeometry model_geometry(ModelKind kind, uint32_t a, uint32_t b, uint32_t m,
                           uint32_t delta) {
  if (delta < 1) throw std::invalid_argument("palette must be nonempty");
  if (a > m || b > m) throw std::invalid_argument("subset sizes exceed the ground set");
  if (kind == ModelKind::Inclusion && a == b)
    throw std::invalid_argument("inclusion model needs distinct subset sizes");
  if (kind == ModelKind::Disjoint && a + b > m)
    throw std::invalid_argument("disjoint model needs a+b <= m");
  auto t1 = colored_subsets(m, a, delta);
  auto t2 = colored_subsets(m, b, delta);
  Pregeometry out({1, 2}, {static_cast<uint32_t>(t1.size()), static_cast<uint32_t>(t2.size())});
  std::vector<std::string> l1, l2;
  for (const auto& c : t1) l1.push_back(colored_label(c, delta));
  for (const auto& c : t2) l2.push_back(colored_label(c, delta));
  out.set_labels(0, std::move(l1));
  out.set_labels(1, std::move(l2));
  for (uint32_t i = 0; i < t1.size(); ++i)
    for (uint32_t j = 0; j < t2.size(); ++j) {
      bool inc;
      if (kind == ModelKind::Inclusion)
        inc = a < b ? colored_contains(t2[j], t1[i]) : colored_contains(t1[i], t2[j]);
      else
        inc = sets_disjoint(t1[i], t2[j]);
      if (inc) out.add_edge({0, i}, {1, j});
    }
  out.finalize_edges();
  return out;
}

}  // namespace geoforge
