#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "masa/dense.hpp"
#include "masa/group.hpp"
#include "masa/support.hpp"

namespace masa::verify {

/// Brute-force oracles and the randomized/exhaustive suites behind
/// `masa verify`. Oracles here never call the routine they are checking.

/// Named groups used by the suites, in increasing order, filtered to
/// order <= max_order.
std::vector<FiniteGroup> catalog(std::size_t max_order);

/// The fixed seven-group catalog Z2, Z3, Z4, Z2×Z2, Z5, Z6, S3.
std::vector<FiniteGroup> small_catalog();

/// ∃ bijection f : G₁ → G₂ with g⁻¹h ∈ H₁ ⇔ f(g)⁻¹f(h) ∈ H₂, by trying all
/// |G₂|! bijections.
bool brute_force_module_iso(const Subgroup& h1, const Subgroup& h2);

/// Classes {h : g⁻¹h ∈ H} computed by a full pairwise scan.
std::vector<ElementSet> coset_classes_by_scan(const Subgroup& h);

/// Each pair present independently with probability `density`.
SupportRelation random_relation(std::size_t ground, double density, std::mt19937_64& rng);
SupportRelation random_unital_relation(std::size_t ground, std::mt19937_64& rng);
SupportRelation random_symmetric_unital_relation(std::size_t ground, std::mt19937_64& rng);

/// Subset as a bitmask over the group elements.
ElementSet subset_from_mask(std::uint64_t mask, std::size_t order);

struct SuiteOptions {
  std::size_t max_order = 6;
  std::size_t gamma = 6;
  std::size_t trials = 100;
  std::uint64_t seed = 7;
  double tolerance = kRankTolerance;
};

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::optional<std::string> first_counterexample;

  bool passed() const { return failures == 0; }
  void fail(std::string what) {
    ++failures;
    if (!first_counterexample) first_counterexample = std::move(what);
  }
};

inline constexpr std::string_view kSuiteNames[] = {"prop43", "cor44", "decomp23", "lemma21",
                                                   "tip",    "thm45", "lemma42"};

bool is_suite(std::string_view name);

/// Every subset of every catalog group: group-side and support-side
/// predicates (unit, adjoint, product closure) agree.
SuiteResult run_prop43(const SuiteOptions& options);
/// Every nonempty subset: star_closure classes are the left cosets of ⟨E⟩;
/// plus `trials` random subsets of catalog groups up to order 12.
SuiteResult run_cor44(const SuiteOptions& options);
/// `trials` random unital supports on 2..gamma points: per-atom CSL
/// decomposition intersects back to Ω; half as many symmetric supports for
/// the self-adjoint form.
SuiteResult run_decomp23(const SuiteOptions& options);
/// Random generator sets on up to min(gamma, 6) points: ref_hull of the
/// generated bimodule equals the definitional oracle; φ(A)^⊥ T P(A) = 0 on
/// random elements for every A.
SuiteResult run_lemma21(const SuiteOptions& options);
/// Random unital supports on up to gamma points: numeric and combinatorial
/// trivial-intersection checks agree, closure blocks match, hypothesis check
/// implies the property; plus the fixed diagonal counterexample.
SuiteResult run_tip(const SuiteOptions& options);
/// All subgroup pairs of catalog groups up to max_order: invariant decision
/// equals brute-force bijection search; witnesses verify.
SuiteResult run_thm45(const SuiteOptions& options);
/// Random Ω on up to min(gamma, 5) points: annihilation-defined space equals
/// the matrix-unit span.
SuiteResult run_lemma42(const SuiteOptions& options);

/// Throws InputError for an unknown name.
SuiteResult run_suite(std::string_view name, const SuiteOptions& options);

}  // namespace masa::verify
