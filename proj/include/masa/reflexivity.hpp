#pragma once

#include <optional>
#include <span>
#include <vector>

#include "masa/dense.hpp"
#include "masa/support.hpp"

namespace masa {

/// The projection map P ↦ [M(Ω)P] restricted to the diagonal masa, with
/// images of atoms cached. φ(A) for a general A is the union of atom images,
/// which is exact because φ preserves joins.
class PhiMap {
 public:
  explicit PhiMap(SupportRelation source);

  const SupportRelation& source() const { return source_; }
  const IndexSet& atom(std::size_t g) const { return atoms_[g]; }
  /// {h : ∃g ∈ A, (g,h) ∈ Ω}
  IndexSet operator()(const IndexSet& subset) const;

 private:
  SupportRelation source_;
  std::vector<IndexSet> atoms_;
};

IndexSet map_phi(const SupportRelation& omega, const IndexSet& subset);

/// Support of the diagonal-masa bimodule generated by `generators`: every
/// (g,h) with |T(h,g)| > tolerance for some T.
SupportRelation bimodule_support(std::span<const DenseMatrix> generators,
                                 double tolerance = kEntryTolerance);

/// Reflexive hull computed through atom images, {(g,h) : h ∈ φ({g})}. At
/// finite dimension every masa bimodule is reflexive, so this returns Ω; the
/// result is nonetheless rebuilt from φ and not copied.
SupportRelation ref_hull(const SupportRelation& omega);

/// X = {T : φ(A)^⊥ T P(A) = 0}, i.e. Γ×Γ minus A × (Γ∖φ(A)).
/// Requires Ω to contain the diagonal.
SupportRelation x_space(const SupportRelation& omega, const IndexSet& subset);

struct CslSummands {
  IndexSet q;  // φ(A) ∖ A
  SupportRelation a1;  // {(g,h) ∈ X : g ∈ Q ⇒ h ∈ Q}
  SupportRelation a2;  // {(g,h) ∈ X : g ∉ Q ⇒ h ∉ Q}
};

CslSummands csl_summands(const SupportRelation& omega, const IndexSet& subset);

/// The self-adjoint case: B = Alg{P(A), φ(A)^⊥} with B ∪ Bᵀ = X ∩ Xᵀ.
/// Requires Ω unital and symmetric.
SupportRelation delta_decomposition(const SupportRelation& omega, const IndexSet& subset);

/// Finite-dimensional marks of a CSL algebra support: contains the diagonal,
/// closed under composition, equal to its own reflexive hull.
bool is_csl_algebra_support(const SupportRelation& omega);

struct DecompositionVerdicts {
  bool union_identity = false;  // X = A₁ ∪ A₂
  bool a1_algebra = false;      // diagonal ⊆ A₁ and A₁∘A₁ ⊆ A₁
  bool a2_algebra = false;
  std::optional<bool> b_identity;  // B ∪ Bᵀ = X ∩ Xᵀ
  std::optional<bool> b_algebra;

  bool all() const {
    return union_identity && a1_algebra && a2_algebra && b_identity.value_or(true) &&
           b_algebra.value_or(true);
  }
};

struct DecompositionCertificate {
  std::size_t atom = 0;
  SupportRelation x_support;
  IndexSet q_set;
  SupportRelation summand_a1;
  SupportRelation summand_a2;
  std::optional<SupportRelation> selfadjoint_summand_b;
  DecompositionVerdicts verified;
};

/// One certificate per atom. B summands are filled in when Ω is symmetric.
std::vector<DecompositionCertificate> full_decomposition(const SupportRelation& omega);

/// ⋂_g (A₁,g ∪ A₂,g)
SupportRelation intersect_csl_sums(std::span<const DecompositionCertificate> certificates,
                                   std::size_t ground);
/// ⋂_g (B_g ∪ B_gᵀ); requires every certificate to carry B.
SupportRelation intersect_selfadjoint_sums(
    std::span<const DecompositionCertificate> certificates, std::size_t ground);

}  // namespace masa
