#include "masa/blocks.hpp"

#include <algorithm>

#include "masa/error.hpp"

namespace masa {

BlockStructure cstar_support(const SupportRelation& omega) {
  if (!omega.contains_diagonal()) {
    throw InputError(
        "cstar_support: Ω is not unital; use star_closure for the generated von Neumann algebra");
  }
  return star_closure(omega).blocks;
}

namespace {

// Does Ω meet the rectangle A_i × A_i of block i?
std::vector<bool> blocks_met(const SupportRelation& omega, const BlockStructure& blocks) {
  std::vector<bool> met(blocks.classes.size(), false);
  for (auto [g, h] : omega.pairs()) {
    if (blocks.class_of[g] == blocks.class_of[h]) met[blocks.class_of[g]] = true;
  }
  return met;
}

}  // namespace

TipResult trivial_intersection(const SupportRelation& omega, IdealSearch mode) {
  const BlockStructure blocks = cstar_support(omega);
  const std::size_t k = blocks.classes.size();
  const std::vector<bool> met = blocks_met(omega, blocks);

  TipResult result;
  if (k > kMaxIdealClasses) {
    if (mode == IdealSearch::kExhaustive) {
      throw UnsupportedSize("trivial_intersection: " + std::to_string(k) +
                            " blocks exceed the enumeration bound of " +
                            std::to_string(kMaxIdealClasses));
    }
    // Ω ∩ (sum of blocks) is empty iff it is empty on every block, so the
    // minimal ideals decide the property.
    result.exhaustive = false;
    for (std::size_t i = 0; i < k; ++i) {
      ++result.masks_checked;
      if (!met[i]) {
        result.holds = false;
        result.witness = IdealMask{{i}};
        return result;
      }
    }
    return result;
  }

  const std::uint64_t limit = std::uint64_t{1} << k;
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    ++result.masks_checked;
    bool meets = false;
    for (std::size_t i = 0; i < k && !meets; ++i) meets = ((mask >> i) & 1U) && met[i];
    if (!meets) {
      IdealMask witness;
      for (std::size_t i = 0; i < k; ++i)
        if ((mask >> i) & 1U) witness.blocks.push_back(i);
      result.holds = false;
      result.witness = std::move(witness);
      return result;
    }
  }
  return result;
}

std::vector<std::size_t> envelope_report(const SupportRelation& omega) {
  if (!trivial_intersection(omega).holds) {
    // Unreachable for unital bimodule supports; kept as an internal check.
    throw std::logic_error("envelope_report: unital support failed the trivial intersection test");
  }
  std::vector<std::size_t> dims = cstar_support(omega).block_dims();
  std::sort(dims.begin(), dims.end());
  return dims;
}

SupportRelation permute_support(std::span<const std::size_t> f, const SupportRelation& omega) {
  if (f.size() != omega.ground()) throw InputError("permutation length differs from ground size");
  SupportRelation out(omega.ground());
  for (auto [g, h] : omega.pairs()) out.insert(f[g], f[h]);
  return out;
}

bool permutation_maps_support(std::span<const std::size_t> f, const SupportRelation& from,
                              const SupportRelation& to) {
  if (from.ground() != to.ground() || f.size() != from.ground()) return false;
  std::vector<bool> hit(f.size(), false);
  for (std::size_t x : f) {
    if (x >= f.size() || hit[x]) return false;
    hit[x] = true;
  }
  return permute_support(f, from) == to;
}

Permutation module_iso_unitary(const Subgroup& h1, const Subgroup& h2) {
  if (h1.order() != h2.order() || index(h1) != index(h2)) {
    throw InputError("module_iso_unitary: subgroup orders or indices differ, no witness exists");
  }
  const CosetPartition c1 = left_cosets(h1);
  const CosetPartition c2 = left_cosets(h2);
  Permutation f(h1.parent().order());
  for (std::size_t i = 0; i < c1.classes.size(); ++i)
    for (std::size_t j = 0; j < c1.classes[i].size(); ++j) f[c1.classes[i][j]] = c2.classes[i][j];

  const SupportRelation s1 = e_star(h1.parent(), h1.elements());
  const SupportRelation s2 = e_star(h2.parent(), h2.elements());
  if (!permutation_maps_support(f, s1, s2)) {
    throw std::logic_error("module_iso_unitary: constructed coset pairing failed verification");
  }
  return f;
}

ClassificationVerdict module_iso_decide(const Subgroup& h1, const Subgroup& h2) {
  ClassificationVerdict v;
  v.subgroup_orders = {h1.order(), h2.order()};
  v.indices = {index(h1), index(h2)};
  v.isomorphic = v.subgroup_orders.first == v.subgroup_orders.second &&
                 v.indices.first == v.indices.second;
  if (v.isomorphic) v.witness = module_iso_unitary(h1, h2);
  return v;
}

SubsetInvariants subset_module_invariants(const FiniteGroup& group,
                                          std::span<const Element> subset) {
  const ElementSet e = normalize_subset(group, {subset.begin(), subset.end()});
  if (!std::binary_search(e.begin(), e.end(), FiniteGroup::identity())) {
    throw InputError("subset_module_invariants: E must contain the identity (M(E^⋆) unital)");
  }
  const Subgroup h = generate_subgroup(group, e);
  return {h.order(), index(h)};
}

}  // namespace masa
