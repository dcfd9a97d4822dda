#include "masa/verify.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "masa/blocks.hpp"
#include "masa/error.hpp"
#include "masa/numeric.hpp"
#include "masa/reflexivity.hpp"

namespace masa::verify {

namespace {

std::string describe(const FiniteGroup& g, const ElementSet& e) {
  std::ostringstream os;
  os << g.name() << " E={";
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  os << "}";
  return os.str();
}

std::string describe(const SupportRelation& omega) {
  std::ostringstream os;
  os << "Γ=" << omega.ground() << " Ω={";
  bool first = true;
  for (auto [g, h] : omega.pairs()) {
    os << (first ? "" : ",") << "(" << g << "," << h << ")";
    first = false;
  }
  os << "}";
  return os.str();
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t trial) {
  return std::mt19937_64(seed * 1'000'003ULL + trial);
}

}  // namespace

std::vector<FiniteGroup> catalog(std::size_t max_order) {
  static const char* const kSpecs[] = {
      "cyclic:1",
      "cyclic:2",
      "cyclic:3",
      "cyclic:4",
      "product:(cyclic:2,cyclic:2)",
      "cyclic:5",
      "cyclic:6",
      "symmetric:3",
      "cyclic:7",
      "cyclic:8",
      "product:(cyclic:2,cyclic:4)",
      "dihedral:4",
      "product:(cyclic:2,product:(cyclic:2,cyclic:2))",
      "cyclic:9",
      "product:(cyclic:3,cyclic:3)",
      "cyclic:10",
      "dihedral:5",
      "cyclic:11",
      "cyclic:12",
      "product:(cyclic:2,cyclic:6)",
      "dihedral:6",
  };
  std::vector<FiniteGroup> out;
  for (const char* spec : kSpecs) {
    FiniteGroup g = build_group(spec);
    if (g.order() <= max_order) out.push_back(std::move(g));
  }
  return out;
}

std::vector<FiniteGroup> small_catalog() {
  std::vector<FiniteGroup> out;
  for (const char* spec : {"cyclic:2", "cyclic:3", "cyclic:4", "product:(cyclic:2,cyclic:2)",
                           "cyclic:5", "cyclic:6", "symmetric:3"}) {
    out.push_back(build_group(spec));
  }
  return out;
}

bool brute_force_module_iso(const Subgroup& h1, const Subgroup& h2) {
  const FiniteGroup& g1 = h1.parent();
  const FiniteGroup& g2 = h2.parent();
  if (g1.order() != g2.order()) return false;
  const std::size_t n = g1.order();

  std::vector<std::vector<bool>> rel1(n, std::vector<bool>(n)), rel2(n, std::vector<bool>(n));
  for (Element g = 0; g < n; ++g) {
    for (Element h = 0; h < n; ++h) {
      rel1[g][h] = h1.contains(g1.multiply(g1.inverse(g), h));
      rel2[g][h] = h2.contains(g2.multiply(g2.inverse(g), h));
    }
  }
  std::vector<std::size_t> f(n);
  std::iota(f.begin(), f.end(), std::size_t{0});
  do {
    bool ok = true;
    for (std::size_t g = 0; g < n && ok; ++g)
      for (std::size_t h = 0; h < n && ok; ++h) ok = rel1[g][h] == rel2[f[g]][f[h]];
    if (ok) return true;
  } while (std::next_permutation(f.begin(), f.end()));
  return false;
}

std::vector<ElementSet> coset_classes_by_scan(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  std::vector<ElementSet> classes;
  std::vector<bool> placed(g.order(), false);
  for (Element a = 0; a < g.order(); ++a) {
    if (placed[a]) continue;
    ElementSet cls;
    for (Element b = 0; b < g.order(); ++b) {
      if (h.contains(g.multiply(g.inverse(a), b))) {
        cls.push_back(b);
        placed[b] = true;
      }
    }
    classes.push_back(std::move(cls));
  }
  return classes;
}

SupportRelation random_relation(std::size_t ground, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(density);
  SupportRelation r(ground);
  for (std::size_t h = 0; h < ground; ++h)
    for (std::size_t g = 0; g < ground; ++g)
      if (coin(rng)) r.insert(g, h);
  return r;
}

SupportRelation random_unital_relation(std::size_t ground, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> density(0.05, 0.6);
  return random_relation(ground, density(rng), rng) | SupportRelation::diagonal(ground);
}

SupportRelation random_symmetric_unital_relation(std::size_t ground, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> density(0.05, 0.4);
  SupportRelation r = random_relation(ground, density(rng), rng);
  return r | adjoint_support(r) | SupportRelation::diagonal(ground);
}

ElementSet subset_from_mask(std::uint64_t mask, std::size_t order) {
  ElementSet e;
  for (std::size_t i = 0; i < order; ++i)
    if ((mask >> i) & 1U) e.push_back(i);
  return e;
}

bool is_suite(std::string_view name) {
  return std::find(std::begin(kSuiteNames), std::end(kSuiteNames), name) != std::end(kSuiteNames);
}

SuiteResult run_prop43(const SuiteOptions& options) {
  SuiteResult result;
  result.name = "prop43";
  for (const FiniteGroup& g : catalog(options.max_order)) {
    if (g.order() < 2) continue;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.order()); ++mask) {
      const ElementSet e = subset_from_mask(mask, g.order());
      ++result.cases;
      const ModuleReport report = module_properties(g, e);
      bool is_subgroup = true;
      try {
        Subgroup(g, e);
      } catch (const InputError&) {
        is_subgroup = false;
      }
      if (!report.sides_agree() || report.von_neumann != is_subgroup) result.fail(describe(g, e));
    }
  }
  return result;
}

SuiteResult run_cor44(const SuiteOptions& options) {
  SuiteResult result;
  result.name = "cor44";
  const auto check = [&result](const FiniteGroup& g, const ElementSet& e) {
    ++result.cases;
    const StarClosure closure = star_closure(e_star(g, e));
    const Subgroup h = generate_subgroup(g, e);
    if (closure.blocks.classes != left_cosets(h).classes ||
        closure.blocks.classes != coset_classes_by_scan(h) ||
        closure.relation != e_star(g, h.elements())) {
      result.fail(describe(g, e));
    }
  };
  for (const FiniteGroup& g : catalog(options.max_order)) {
    if (g.order() < 2) continue;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << g.order()); ++mask) {
      check(g, subset_from_mask(mask, g.order()));
    }
  }
  std::vector<FiniteGroup> larger;
  for (FiniteGroup& g : catalog(12))
    if (g.order() > options.max_order) larger.push_back(std::move(g));
  if (!larger.empty()) {
    for (std::size_t t = 0; t < options.trials; ++t) {
      auto rng = trial_rng(options.seed, t);
      const FiniteGroup& g = larger[t % larger.size()];
      std::uint64_t mask = 0;
      while (mask == 0) mask = rng() & ((std::uint64_t{1} << g.order()) - 1);
      check(g, subset_from_mask(mask, g.order()));
    }
  }
  return result;
}

SuiteResult run_decomp23(const SuiteOptions& options) {
  SuiteResult result;
  result.name = "decomp23";
  const std::size_t top = std::max<std::size_t>(options.gamma, 2);
  for (std::size_t t = 0; t < options.trials; ++t) {
    auto rng = trial_rng(options.seed, t);
    const std::size_t n = 2 + t % (top - 1);
    const SupportRelation omega = random_unital_relation(n, rng);
    ++result.cases;
    const auto certs = full_decomposition(omega);
    bool ok = intersect_csl_sums(certs, n) == omega;
    for (const auto& c : certs) {
      ok = ok && c.verified.all() && is_csl_algebra_support(c.summand_a1) &&
           is_csl_algebra_support(c.summand_a2);
    }
    if (!ok) result.fail("unital " + describe(omega));
  }
  for (std::size_t t = 0; t < options.trials / 2; ++t) {
    auto rng = trial_rng(options.seed + 1, t);
    const std::size_t n = 2 + t % (top - 1);
    const SupportRelation omega = random_symmetric_unital_relation(n, rng);
    ++result.cases;
    const auto certs = full_decomposition(omega);
    bool ok = intersect_selfadjoint_sums(certs, n) == omega;
    for (const auto& c : certs) ok = ok && c.verified.all() && is_csl_algebra_support(*c.selfadjoint_summand_b);
    if (!ok) result.fail("symmetric " + describe(omega));
  }
  return result;
}

SuiteResult run_lemma21(const SuiteOptions& options) {
  SuiteResult result;
  result.name = "lemma21";
  const std::size_t top = std::clamp<std::size_t>(options.gamma, 1, kMaxOracleGround);
  for (std::size_t t = 0; t < options.trials; ++t) {
    auto rng = trial_rng(options.seed, t);
    const std::size_t n = 1 + t % top;
    const std::size_t count = 1 + rng() % 3;
    std::uniform_real_distribution<double> density(0.1, 0.7);
    std::vector<DenseMatrix> generators;
    for (std::size_t k = 0; k < count; ++k) {
      generators.push_back(random_support_matrix(random_relation(n, density(rng), rng), rng()));
    }
    ++result.cases;
    const SupportRelation omega = bimodule_support(generators);
    if (ref_hull(omega) != ref_oracle(generators, options.tolerance)) {
      result.fail("hull/oracle mismatch on " + describe(omega));
      continue;
    }
    // φ(A)^⊥ T P(A) = 0 for a random T ∈ M(Ω) and every A.
    const DenseMatrix tm = random_support_matrix(omega, rng());
    const PhiMap phi(omega);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      IndexSet a(n);
      for (std::size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1U) a.set(i);
      const IndexSet image = phi(a);
      DenseMatrix masked = DenseMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      for (std::size_t h = 0; h < n; ++h)
        for (std::size_t g = 0; g < n; ++g)
          if (a.test(g) && !image.test(h)) masked(static_cast<Eigen::Index>(h), static_cast<Eigen::Index>(g)) = tm(static_cast<Eigen::Index>(h), static_cast<Eigen::Index>(g));
      if (masked.norm() > options.tolerance) {
        result.fail("annihilation fails on " + describe(omega));
        break;
      }
    }
  }
  return result;
}

SuiteResult run_tip(const SuiteOptions& options) {
  SuiteResult result;
  result.name = "tip";
  {
    ++result.cases;
    DenseMatrix d = DenseMatrix::Zero(3, 3);
    d(0, 0) = 1.0;
    d(1, 1) = -1.0;
    const std::vector<DenseMatrix> gens{DenseMatrix::Identity(3, 3), d};
    const auto tip = numeric_tip_check(SpanSpace::from_matrices(gens, options.tolerance));
    const bool has_block2 = std::find(tip.all_witnesses.begin(), tip.all_witnesses.end(),
                                      IdealMask{{2}}) != tip.all_witnesses.end();
    if (tip.holds || !has_block2) result.fail("span{I, diag(1,-1,0)} should fail with block {2}");
  }
  const std::size_t top = std::max<std::size_t>(options.gamma, 2);
  NumericConfig config;
  config.rank_tolerance = options.tolerance;
  for (std::size_t t = 0; t < options.trials; ++t) {
    auto rng = trial_rng(options.seed, t);
    const std::size_t n = 2 + t % (top - 1);
    const SupportRelation omega = random_unital_relation(n, rng);
    ++result.cases;
    config.seed = options.seed + t;
    const SpanSpace u = matrix_unit_space(omega);
    const auto tip = numeric_tip_check(u, config);
    const BlockStructure blocks = cstar_support(omega);
    std::size_t square_sum = 0;
    for (std::size_t d : tip.cstar.block_dims) square_sum += d * d;
    std::vector<DenseMatrix> diagonal_units;
    for (std::size_t g = 0; g < n; ++g) diagonal_units.push_back(matrix_unit(n, g, g));
    const auto hyp = enve_hypotheses_check(u, diagonal_units, config);
    const bool ok = tip.holds && trivial_intersection(omega).holds &&
                    tip.cstar.block_dims == blocks.block_dims() &&
                    square_sum == tip.cstar.algebra.size() &&
                    square_sum == star_closure(omega).relation.size() && hyp.holds &&
                    hyp.tip_holds.value_or(false);
    if (!ok) result.fail(describe(omega));
  }
  return result;
}

SuiteResult run_thm45(const SuiteOptions& options) {
  SuiteResult result;
  result.name = "thm45";
  std::vector<Subgroup> subgroups;
  for (const FiniteGroup& g : catalog(options.max_order))
    for (Subgroup& h : all_subgroups(g)) subgroups.push_back(std::move(h));
  for (const Subgroup& a : subgroups) {
    for (const Subgroup& b : subgroups) {
      ++result.cases;
      const ClassificationVerdict v = module_iso_decide(a, b);
      bool ok = v.isomorphic == brute_force_module_iso(a, b);
      if (ok && v.isomorphic) {
        const SupportRelation sa = e_star(a.parent(), a.elements());
        const SupportRelation sb = e_star(b.parent(), b.elements());
        ok = v.witness && permutation_maps_support(*v.witness, sa, sb) &&
             verify_unitary_conjugation(*v.witness, sa, sb, options.tolerance);
      }
      if (!ok) {
        result.fail(describe(a.parent(), a.elements()) + " vs " +
                    describe(b.parent(), b.elements()));
      }
    }
  }
  return result;
}

SuiteResult run_lemma42(const SuiteOptions& options) {
  SuiteResult result;
  result.name = "lemma42";
  const std::size_t top = std::clamp<std::size_t>(options.gamma, 1, 5);
  for (std::size_t t = 0; t < options.trials; ++t) {
    auto rng = trial_rng(options.seed, t);
    const std::size_t n = 1 + t % top;
    std::uniform_real_distribution<double> density(0.0, 1.0);
    const SupportRelation omega = random_relation(n, density(rng), rng);
    ++result.cases;
    const SpaceComparison cmp =
        compare_spaces(annihilation_space(omega, options.tolerance), matrix_unit_space(omega));
    if (!cmp.equal(options.tolerance)) result.fail(describe(omega));
  }
  return result;
}

SuiteResult run_suite(std::string_view name, const SuiteOptions& options) {
  if (name == "prop43") return run_prop43(options);
  if (name == "cor44") return run_cor44(options);
  if (name == "decomp23") return run_decomp23(options);
  if (name == "lemma21") return run_lemma21(options);
  if (name == "tip") return run_tip(options);
  if (name == "thm45") return run_thm45(options);
  if (name == "lemma42") return run_lemma42(options);
  throw InputError("unknown suite '" + std::string(name) + "'");
}

}  // namespace masa::verify
