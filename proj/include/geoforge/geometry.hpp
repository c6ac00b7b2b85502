#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geoforge/group.hpp"

namespace geoforge {

struct ElemRef {
  uint32_t type;   // position in type_ids()
  uint32_t index;  // position within the type's element list
  bool operator==(const ElemRef& o) const { return type == o.type && index == o.index; }
  bool operator<(const ElemRef& o) const {
    return type != o.type ? type < o.type : index < o.index;
  }
};

using Flag = std::vector<ElemRef>;  // pairwise incident, kept sorted by type

/// Decorated parameters of a connected rank-2 incidence graph.
struct DiagramParams {
  uint32_t n1 = 0, n2 = 0;          // elements per type
  int64_t s1 = -1, s2 = -1;         // common degree minus one, -1 if not regular
  uint32_t d1 = 0, d2 = 0;          // largest distance from an element of each type
  std::optional<uint32_t> g;        // gonality: half the shortest cycle length
  bool operator==(const DiagramParams& o) const {
    return n1 == o.n1 && n2 == o.n2 && s1 == o.s1 && s2 == o.s2 && d1 == o.d1 &&
           d2 == o.d2 && g == o.g;
  }
};

/// Typed element set with a symmetric cross-type incidence relation and an
/// optional attached automorphism group with base chamber. Reflexive
/// incidence is implicit and never stored.
class Pregeometry {
public:
  Pregeometry() = default;
  Pregeometry(std::vector<int> type_ids, std::vector<uint32_t> sizes);
  static Pregeometry rank1(uint32_t count, int type_id = 1);

  size_t rank() const { return type_ids_.size(); }
  const std::vector<int>& type_ids() const { return type_ids_; }
  uint32_t size(uint32_t t) const { return sizes_.at(t); }
  uint64_t total_elements() const;
  int64_t type_position(int type_id) const;  // -1 if absent

  void set_labels(uint32_t t, std::vector<std::string> labels);
  std::string label(ElemRef e) const;  // defaults to 1-based index

  void add_edge(ElemRef a, ElemRef b);
  void finalize_edges();  // sort adjacency; call after bulk add_edge
  bool incident(ElemRef a, ElemRef b) const;
  const std::vector<uint32_t>& neighbors(ElemRef e, uint32_t t) const;
  uint64_t edge_count(uint32_t t1, uint32_t t2) const;
  uint64_t edge_count() const;
  /// All edges as (smaller type, larger type) pairs, lexicographically sorted.
  std::vector<std::pair<ElemRef, ElemRef>> edges() const;

  // disjoint-union numbering (type blocks in order)
  uint32_t union_offset(uint32_t t) const;
  uint32_t union_size() const;
  uint32_t union_index(ElemRef e) const { return union_offset(e.type) + e.index; }
  ElemRef from_union(uint32_t u) const;

  /// Attach a group acting on the disjoint union. Validates that every
  /// generator preserves the type partition and the incidence relation, and
  /// that the base chamber is a chamber.
  void attach(PermGroup group, Flag base_chamber);
  bool has_group() const { return group_.has_value(); }
  const PermGroup& group() const;
  const Flag& base_chamber() const;
  void set_ft_verified(bool v) { ft_verified_ = v; }
  bool ft_verified() const { return ft_verified_; }

  bool is_flag(const Flag& f) const;  // pairwise incident, distinct types

  uint64_t content_hash() const;  // stable across runs, ignores ft flag

private:
  std::vector<int> type_ids_;
  std::vector<uint32_t> sizes_;
  std::vector<std::vector<std::string>> labels_;
  // nbrs_[t1][t2][i] = sorted neighbor indices of element (t1,i) in type t2
  std::vector<std::vector<std::vector<std::vector<uint32_t>>>> nbrs_;
  std::optional<PermGroup> group_;
  Flag base_chamber_;
  bool ft_verified_ = false;
  bool finalized_ = true;
};

uint64_t flag_budget();  // GEOFORGE_FLAG_BUDGET, default 10^7 partial flags

// --- chambers and flags ----------------------------------------------------

/// Number of chambers containing the given flag (empty flag: all chambers).
/// Counts partial flags against `budget` (0 = library default).
uint64_t chambers_containing(const Pregeometry& g, const Flag& f, uint64_t budget = 0);
std::vector<Flag> enumerate_chambers(const Pregeometry& g, uint64_t budget = 0);

/// Exhaustive: every flag admits an incident element in every missing type.
/// On failure the unextendable flag and the blocked type are reported.
bool is_geometry_exhaustive(const Pregeometry& g, Flag* witness = nullptr,
                            int* blocked_type = nullptr, uint64_t budget = 0);
/// Same check restricted to subflags of the base chamber; sound when a
/// flag-transitive group is attached (flag must have been verified).
bool is_geometry_base(const Pregeometry& g, Flag* witness = nullptr,
                      int* blocked_type = nullptr);

bool is_thick_exhaustive(const Pregeometry& g, Flag* witness = nullptr,
                         uint64_t budget = 0);
bool is_thick_base(const Pregeometry& g, Flag* witness = nullptr);

// --- truncation / residue / quotient ---------------------------------------

Pregeometry truncation(const Pregeometry& g, const std::vector<int>& keep_type_ids);
bool is_connected(const Pregeometry& g);
bool pair_connected(const Pregeometry& g, uint32_t t1, uint32_t t2);

Pregeometry residue(const Pregeometry& g, const Flag& f);

/// Per-type partition given as part lists of element indices. When a group is
/// attached the partition must be invariant; otherwise the offending
/// (generator index, part) pair is reported via `counterexample`.
struct QuotientCounterexample {
  size_t generator;
  uint32_t type;
  std::vector<uint32_t> part;
  std::vector<uint32_t> image;
};
Pregeometry quotient(const Pregeometry& g,
                     const std::vector<std::vector<std::vector<uint32_t>>>& parts,
                     QuotientCounterexample* counterexample = nullptr);

// --- rank-2 analysis ---------------------------------------------------------

DiagramParams rank2_params(const Pregeometry& g);  // rank 2, connected
bool is_complete_bipartite(const Pregeometry& g);

/// Exact bipartite-graph isomorphism (refinement + backtracking); sides may
/// be matched directly or swapped when sizes permit.
bool bipartite_isomorphic(const Pregeometry& a, const Pregeometry& b);

struct DiagramEntry {
  int type1, type2;       // type ids
  bool connected;
  bool edge;              // residue not complete bipartite
  DiagramParams params;   // valid when connected
};
/// One residue per type pair, taken at the base chamber co-flag; requires an
/// attached group whose flag-transitivity has been verified.
std::vector<DiagramEntry> basic_diagram(const Pregeometry& g);
std::string diagram_dot(const Pregeometry& g, const std::vector<DiagramEntry>& entries);

// --- model rank-2 geometries -------------------------------------------------

enum class ModelKind { Inclusion, Disjoint };  // U_{a,b}(m,delta) / Ubar_{a,b}(m,delta)
Pregeometry model_geometry(ModelKind kind, uint32_t a, uint32_t b, uint32_t m,
                           uint32_t delta);

}  // namespace geoforge
