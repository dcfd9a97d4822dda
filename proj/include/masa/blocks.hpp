#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "masa/group.hpp"
#include "masa/support.hpp"

namespace masa {

/// Connected components of a unital Ω. C*(M(Ω)) = M(⋃ A_i×A_i), a direct sum
/// of full matrix blocks. Throws InputError for non-unital Ω; use
/// star_closure there.
BlockStructure cstar_support(const SupportRelation& omega);

/// A two-sided ideal of ⊕_i M_{d_i}: the sum of the selected blocks.
struct IdealMask {
  std::vector<std::size_t> blocks;  // ascending block indices
  friend bool operator==(const IdealMask&, const IdealMask&) = default;
};

inline constexpr std::size_t kMaxIdealClasses = 20;

enum class IdealSearch {
  /// All 2^k − 1 nonzero masks; UnsupportedSize above kMaxIdealClasses.
  kExhaustive,
  /// Exhaustive up to the bound, single-block sweep beyond it.
  kAuto,
};

struct TipResult {
  bool holds = true;
  std::optional<IdealMask> witness;  // first ideal J ≠ 0 with U ∩ J = 0
  std::size_t masks_checked = 0;
  bool exhaustive = true;
};

/// Trivial intersection property of M(Ω) inside C*(M(Ω)). An ideal meets
/// M(Ω) trivially exactly when Ω misses every selected block rectangle.
TipResult trivial_intersection(const SupportRelation& omega,
                               IdealSearch mode = IdealSearch::kAuto);

/// Block dimensions of C*_e(M(Ω)) = C*(M(Ω)), sorted ascending.
std::vector<std::size_t> envelope_report(const SupportRelation& omega);

/// f as an index list: f[g] is the image of g.
using Permutation = std::vector<std::size_t>;

struct ClassificationVerdict {
  bool isomorphic = false;
  std::pair<std::size_t, std::size_t> subgroup_orders;
  std::pair<std::size_t, std::size_t> indices;
  std::optional<Permutation> witness;
};

/// M(H₁^⋆) and M(H₂^⋆) are *-isomorphic iff |H₁| = |H₂| and the indices
/// agree. A positive verdict carries a verified coset-pairing permutation.
ClassificationVerdict module_iso_decide(const Subgroup& h1, const Subgroup& h2);

/// Pairs the cosets of H₁ and H₂ by least representative and matches elements
/// within each coset pair in ascending order. The result satisfies
/// (f×f)(H₁^⋆) = H₂^⋆; throws InputError when no such map exists.
Permutation module_iso_unitary(const Subgroup& h1, const Subgroup& h2);

/// (f×f)(from) == to
bool permutation_maps_support(std::span<const std::size_t> f, const SupportRelation& from,
                              const SupportRelation& to);

/// (f×f)(Ω)
SupportRelation permute_support(std::span<const std::size_t> f, const SupportRelation& omega);

struct SubsetInvariants {
  std::size_t generated_order = 0;
  std::size_t generated_index = 0;
  friend bool operator==(const SubsetInvariants&, const SubsetInvariants&) = default;
};

/// (|⟨E⟩|, [G:⟨E⟩]) for a unital subset E (1 ∈ E), the complete invariants
/// for unital complete isometries between the spaces M(E^⋆).
SubsetInvariants subset_module_invariants(const FiniteGroup& group, std::span<const Element> subset);

}  // namespace masa
