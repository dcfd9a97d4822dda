#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "masa/group.hpp"

namespace masa {

/// Subset of the ground set Γ = {0..n-1}.
using IndexSet = boost::dynamic_bitset<std::uint64_t>;

IndexSet make_index_set(std::size_t ground, std::span<const std::size_t> members);
std::vector<std::size_t> members_of(const IndexSet& set);
std::string format_index_set(const IndexSet& set);

using Pair = std::pair<std::size_t, std::size_t>;

/// A subset Ω of Γ×Γ standing for the diagonal-masa bimodule M(Ω).
///
/// Orientation: (g,h) ∈ Ω means the matrix unit e_h⊗e_g^*, i.e. the entry at
/// row h and column g, belongs to M(Ω). Row h of the storage holds every g
/// with (g,h) ∈ Ω, so rows of the relation are rows of the matrix pattern.
class SupportRelation {
 public:
  explicit SupportRelation(std::size_t ground = 0);

  static SupportRelation diagonal(std::size_t ground);
  static SupportRelation full(std::size_t ground);
  /// Throws InputError on out-of-range pairs.
  static SupportRelation from_pairs(std::size_t ground, std::span<const Pair> pairs);

  std::size_t ground() const { return rows_.size(); }
  bool contains(std::size_t g, std::size_t h) const { return rows_[h].test(g); }
  void insert(std::size_t g, std::size_t h);
  void erase(std::size_t g, std::size_t h);

  /// {g : (g,h) ∈ Ω}
  const IndexSet& row(std::size_t h) const { return rows_[h]; }

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  /// Pairs in (g,h) lexicographic order.
  std::vector<Pair> pairs() const;

  bool is_subset_of(const SupportRelation& other) const;
  bool contains_diagonal() const;
  bool is_symmetric() const;

  SupportRelation operator|(const SupportRelation& other) const;
  SupportRelation operator&(const SupportRelation& other) const;
  /// Complement within Γ×Γ.
  SupportRelation complement() const;

  friend bool operator==(const SupportRelation& a, const SupportRelation& b) {
    return a.rows_ == b.rows_;
  }

 private:
  void check_same_ground(const SupportRelation& other) const;

  std::vector<IndexSet> rows_;
};

/// Support of {T^* : T ∈ M(Ω)}, the transpose {(h,g) : (g,h) ∈ Ω}.
SupportRelation adjoint_support(const SupportRelation& omega);

/// Support of the product set M(Ω₁)·M(Ω₂):
///   {(g,h) : ∃k, (g,k) ∈ Ω₂ and (k,h) ∈ Ω₁}.
/// Because Ω₂ acts first, compose(E^⋆, F^⋆) = (F·E)^⋆ (the factors swap).
SupportRelation compose(const SupportRelation& outer, const SupportRelation& inner);

/// E^⋆ = {(g,h) : g⁻¹h ∈ E}.
SupportRelation e_star(const FiniteGroup& group, std::span<const Element> subset);

/// Partition of Γ into the classes A_i; C*(M(Ω)) is ⊕ M_{|A_i|} over them.
struct BlockStructure {
  /// Classes ordered by least element, each sorted ascending.
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> class_of;

  std::vector<std::size_t> block_dims() const;
  /// ⋃ A_i × A_i
  SupportRelation relation() const;
};

struct StarClosure {
  SupportRelation relation;
  BlockStructure blocks;
};

/// Smallest symmetric, transitive, composition-closed relation containing Ω
/// together with the diagonal: the connected components of Ω seen as an
/// undirected graph. Untouched ground elements become singleton classes.
StarClosure star_closure(const SupportRelation& omega);

struct PredicateTriple {
  bool unital = false;
  bool selfadjoint = false;
  bool algebra = false;
  friend bool operator==(const PredicateTriple&, const PredicateTriple&) = default;
};

struct ModuleReport {
  /// Support-side verdicts: diagonal inclusion, symmetry, composition closure.
  bool unital = false;
  bool selfadjoint = false;
  bool algebra = false;
  bool von_neumann = false;
  /// Group-side verdicts for the same properties: 1 ∈ E, E = E⁻¹, E·E ⊆ E.
  PredicateTriple group_side;
  std::optional<Subgroup> generated_subgroup;
  std::optional<CosetPartition> coset_classes;

  PredicateTriple support_side() const { return {unital, selfadjoint, algebra}; }
  bool sides_agree() const { return support_side() == group_side; }
};

ModuleReport module_properties(const FiniteGroup& group, std::span<const Element> subset);

/// Relation literal: ground size, then one `g h` pair per line. Blank lines
/// and `#` comments are ignored. Errors carry line and column.
SupportRelation read_relation(std::istream& in);
void write_relation(std::ostream& out, const SupportRelation& omega);

}  // namespace masa
