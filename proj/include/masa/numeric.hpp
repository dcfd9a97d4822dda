#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "masa/blocks.hpp"
#include "masa/dense.hpp"
#include "masa/support.hpp"

namespace masa {

/// Dense brute-force layer. Every check here works with actual complex
/// matrices; finite-dimensional WOT and w*-closures are plain linear spans.
struct NumericConfig {
  double rank_tolerance = kRankTolerance;
  double entry_tolerance = kEntryTolerance;
  /// Largest Hilbert-space dimension n accepted by algebra_closure.
  std::size_t max_dimension = 16;
  /// Seed for the generic central element used to split the center.
  std::uint64_t seed = 1;
};

/// Linear span of n×n complex matrices with an independent basis. Keeps an
/// orthonormal copy of the vectorized basis for membership tests.
class SpanSpace {
 public:
  explicit SpanSpace(std::size_t n, double tolerance = kRankTolerance);

  /// Greedy independent subset of `matrices`, in order.
  static SpanSpace from_matrices(std::span<const DenseMatrix> matrices,
                                 double tolerance = kRankTolerance);

  std::size_t matrix_dimension() const { return n_; }
  std::size_t size() const { return basis_.size(); }
  const std::vector<DenseMatrix>& basis() const { return basis_; }

  /// Relative distance ‖m − proj(m)‖ / ‖m‖; zero for the zero matrix.
  double residual(const DenseMatrix& m) const;
  bool contains(const DenseMatrix& m) const { return residual(m) <= tolerance_; }

  /// Appends m when it is independent of the current basis. Throws
  /// ToleranceError when the residual falls in the ambiguous band just above
  /// the tolerance.
  bool try_add(const DenseMatrix& m);

 private:
  std::size_t n_;
  double tolerance_;
  std::vector<DenseMatrix> basis_;
  std::vector<DenseVector> orthonormal_;
};

/// Matrix units e_h⊗e_g^* for (g,h) ∈ Ω, in Ω's pair order.
SpanSpace matrix_unit_space(const SupportRelation& omega);

/// e_h⊗e_g^* as an n×n matrix (entry at row h, column g).
DenseMatrix matrix_unit(std::size_t n, std::size_t g, std::size_t h);

struct AlgebraStructure {
  SpanSpace algebra;
  /// Minimal central projections, ordered by their first nonzero diagonal
  /// coordinate.
  std::vector<DenseMatrix> central_projections;
  std::vector<std::size_t> block_dims;
  std::size_t center_dimension = 0;
};

/// Smallest *-algebra containing the span (and I when `unital`), its center,
/// minimal central projections and block sizes.
AlgebraStructure algebra_closure(const SpanSpace& generators, bool unital,
                                 const NumericConfig& config = {});

struct NumericTipResult {
  bool holds = true;
  /// First nonzero ideal (by mask order) meeting U only at 0.
  std::optional<IdealMask> witness;
  /// Every nonzero ideal meeting U only at 0.
  std::vector<IdealMask> all_witnesses;
  AlgebraStructure cstar;
};

/// Trivial intersection property for a unital span U: for every nonzero sum J
/// of central blocks of C*(U), dim(U ∩ J) > 0.
NumericTipResult numeric_tip_check(const SpanSpace& space, const NumericConfig& config = {});

/// dim(U ∩ p·C*(U)) for a central projection p of a unital C*(U), computed as
/// the nullity of c ↦ (I − p)·Σ c_i U_i.
std::size_t intersection_with_ideal(const SpanSpace& space, const DenseMatrix& central_projection,
                                    double tolerance = kRankTolerance);

struct EnvelopeHypotheses {
  bool commutant_products_in_space = false;  // S·C*(U)′ ⊆ U
  bool identity_in_selfadjoint_span = false;  // I ∈ span(S ∪ S^*)
  bool holds = false;
  /// numeric_tip_check(U).holds, evaluated only when `holds`.
  std::optional<bool> tip_holds;
};

/// Basis of {X : XA = AX for every A in `generators` and its adjoint}.
std::vector<DenseMatrix> commutant(std::span<const DenseMatrix> generators,
                                   double tolerance = kRankTolerance);

/// Throws InputError when some element of `subset` is not in span U.
EnvelopeHypotheses enve_hypotheses_check(const SpanSpace& space,
                                         std::span<const DenseMatrix> subset,
                                         const NumericConfig& config = {});

inline constexpr std::size_t kMaxOracleGround = 6;

/// Reflexive hull of D·S·D from the definition: (g,h) belongs iff for every
/// characteristic vector χ_A, (e_h⊗e_g^*)χ_A lies in span{Mχ_A}.
SupportRelation ref_oracle(std::span<const DenseMatrix> generators,
                           double tolerance = kRankTolerance);

/// Independent complex entries with modulus uniform on [0.5, 1] and uniform
/// phase at the positions of Ω, zero elsewhere. Deterministic per seed.
DenseMatrix random_support_matrix(const SupportRelation& omega, std::uint64_t seed);

/// Nonzero pattern of a matrix as a support relation.
SupportRelation numeric_support(const DenseMatrix& m, double tolerance = kEntryTolerance);

/// {T : M_λ T M_κ = 0 for all κ×λ ⊆ Ω^c}, solved as a null space.
SpanSpace annihilation_space(const SupportRelation& omega, double tolerance = kRankTolerance);

struct SpaceComparison {
  std::size_t left_dimension = 0;
  std::size_t right_dimension = 0;
  /// Largest membership residual of either basis in the other span.
  double max_residual = 0.0;
  bool equal(double tolerance = kRankTolerance) const {
    return left_dimension == right_dimension && max_residual < tolerance;
  }
};

SpaceComparison compare_spaces(const SpanSpace& left, const SpanSpace& right);

/// Permutation unitary U with U e_g = e_{f[g]}.
DenseMatrix permutation_unitary(std::span<const std::size_t> f);

/// Checks U·M(from)·U^* = M(to) on matrix units.
bool verify_unitary_conjugation(std::span<const std::size_t> f, const SupportRelation& from,
                                const SupportRelation& to, double tolerance = kRankTolerance);

}  // namespace masa
