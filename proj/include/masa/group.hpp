#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace masa {

using Element = std::size_t;

/// Sorted, duplicate-free list of element indices.
using ElementSet = std::vector<Element>;

/// A finite group stored as its multiplication table over dense indices
/// 0..n-1. The identity is always index 0. Copies share the immutable table.
class FiniteGroup {
 public:
  /// Validates the table (range, identity, inverses, associativity) and
  /// relabels so that the identity becomes index 0. Throws InputError naming
  /// the first failing element or triple.
  static FiniteGroup from_table(const std::vector<std::vector<Element>>& table,
                                std::vector<std::string> labels = {},
                                std::string name = "table");

  std::size_t order() const { return data_->order; }
  static constexpr Element identity() { return 0; }

  Element multiply(Element a, Element b) const { return data_->table[a * data_->order + b]; }
  Element inverse(Element a) const { return data_->inverse[a]; }

  /// Smallest k >= 1 with a^k = 1.
  std::size_t element_order(Element a) const;

  const std::string& label(Element a) const { return data_->labels[a]; }
  const std::string& name() const { return data_->name; }

  bool contains(Element a) const { return a < order(); }

 private:
  struct Data {
    std::size_t order = 0;
    std::vector<Element> table;
    std::vector<Element> inverse;
    std::vector<std::string> labels;
    std::string name;
  };
  explicit FiniteGroup(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

FiniteGroup cyclic_group(std::size_t n);
/// Symmetries of the n-gon, order 2n. Index k is r^k, index n+k is s r^k.
FiniteGroup dihedral_group(std::size_t n);
/// Permutations of {0..n-1} in lexicographic order, n <= 5.
FiniteGroup symmetric_group(std::size_t n);
/// Pairs (a,b) encoded as a * |right| + b.
FiniteGroup direct_product(const FiniteGroup& left, const FiniteGroup& right);

/// Parses `cyclic:n`, `dihedral:n`, `symmetric:n`, `product:(spec,spec)` or
/// `table:<path>`.
FiniteGroup build_group(std::string_view spec);

/// Table file: first token n, then n*n whitespace-separated indices.
FiniteGroup read_group_table(std::istream& in, std::string name = "table");

/// A subgroup together with the group it lives in.
class Subgroup {
 public:
  /// Checks identity membership and closure; throws InputError otherwise.
  Subgroup(FiniteGroup parent, ElementSet elements);

  const FiniteGroup& parent() const { return parent_; }
  const ElementSet& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(Element a) const;

 private:
  FiniteGroup parent_;
  ElementSet elements_;
  std::vector<bool> member_;
};

/// Partition of G into left cosets gH, ordered by least representative,
/// each class sorted ascending.
struct CosetPartition {
  std::vector<ElementSet> classes;
  /// class_of[g] is the index of the class containing g.
  std::vector<std::size_t> class_of;
};

/// Sorts and deduplicates; throws InputError on out-of-range indices.
ElementSet normalize_subset(const FiniteGroup& group, std::vector<Element> elements);

/// Closure of a nonempty subset under products and inverses.
Subgroup generate_subgroup(const FiniteGroup& group, std::span<const Element> generators);

CosetPartition left_cosets(const Subgroup& subgroup);
std::size_t index(const Subgroup& subgroup);

/// Every subgroup of `group`, sorted by (order, elements).
std::vector<Subgroup> all_subgroups(const FiniteGroup& group);

/// {e * f : e in E, f in F}
ElementSet product_set(const FiniteGroup& group, std::span<const Element> left,
                       std::span<const Element> right);
ElementSet inverse_set(const FiniteGroup& group, std::span<const Element> set);

/// The subgroup as a group in its own right, reindexed by position in
/// `elements()` (so the identity stays at index 0).
FiniteGroup subgroup_as_group(const Subgroup& subgroup);

inline constexpr std::size_t kMaxIsomorphismOrder = 12;

/// Exhaustive isomorphism search pruned by element orders. Throws
/// UnsupportedSize above kMaxIsomorphismOrder.
bool groups_isomorphic(const FiniteGroup& a, const FiniteGroup& b);
bool small_group_isomorphic(const Subgroup& a, const Subgroup& b);

}  // namespace masa
