#include <doctest.h>

#include <random>
#include <sstream>

#include "masa/error.hpp"
#include "masa/support.hpp"
#include "masa/verify.hpp"

using namespace masa;

namespace {

SupportRelation rel(std::size_t n, std::initializer_list<Pair> pairs) {
  const std::vector<Pair> v(pairs);
  return SupportRelation::from_pairs(n, v);
}

}  // namespace

TEST_CASE("e_star basics") {
  const FiniteGroup z4 = build_group("cyclic:4");
  const Element one[] = {1};
  CHECK(e_star(z4, one) == rel(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
  CHECK(e_star(z4, std::span<const Element>{}).empty());
  const Element bad[] = {4};
  CHECK_THROWS_AS(e_star(z4, bad), InputError);
}

TEST_CASE("e_star of a coset subgroup is block diagonal") {
  const FiniteGroup g = build_group("product:(cyclic:2,cyclic:4)");
  const Subgroup h1(g, {0, 1, 2, 3});
  const SupportRelation s = e_star(g, h1.elements());
  CHECK(s.size() == 32);
  const auto classes = verify::coset_classes_by_scan(h1);
  REQUIRE(classes.size() == 2);
  for (const auto& cls : classes)
    for (Element a : cls)
      for (Element b : cls) CHECK(s.contains(a, b));
}

TEST_CASE("e_star rows and columns hold |E| pairs") {
  std::mt19937_64 rng(3);
  for (const FiniteGroup& g : verify::catalog(8)) {
    const ElementSet e = verify::subset_from_mask(rng() & ((1ULL << g.order()) - 1), g.order());
    const SupportRelation s = e_star(g, e);
    CHECK(s.size() == g.order() * e.size());
    const SupportRelation t = adjoint_support(s);
    for (std::size_t h = 0; h < g.order(); ++h) {
      CHECK(s.row(h).count() == e.size());
      CHECK(t.row(h).count() == e.size());
    }
  }
}

TEST_CASE("compose follows operator products") {
  CHECK(compose(rel(2, {{0, 1}}), rel(2, {{1, 0}})) == rel(2, {{1, 1}}));
  CHECK(compose(rel(2, {{1, 0}}), rel(2, {{0, 1}})) == rel(2, {{0, 0}}));
  CHECK_THROWS_AS(compose(SupportRelation(2), SupportRelation(3)), InputError);

  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + t % 7;
    const SupportRelation a = verify::random_relation(n, 0.3, rng);
    const SupportRelation b = verify::random_relation(n, 0.3, rng);
    const SupportRelation c = verify::random_relation(n, 0.3, rng);
    const SupportRelation d = SupportRelation::diagonal(n);
    CHECK(compose(a, d) == a);
    CHECK(compose(d, a) == a);
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    CHECK(adjoint_support(compose(a, b)) == compose(adjoint_support(b), adjoint_support(a)));
    CHECK(adjoint_support(adjoint_support(a)) == a);
  }
}

TEST_CASE("compose of E-star relations swaps the factors") {
  for (const FiniteGroup& g : {build_group("symmetric:3"), build_group("cyclic:4")}) {
    for (std::uint64_t m1 = 0; m1 < (1ULL << g.order()); m1 += 3) {
      for (std::uint64_t m2 = 0; m2 < (1ULL << g.order()); m2 += 5) {
        const ElementSet e = verify::subset_from_mask(m1, g.order());
        const ElementSet f = verify::subset_from_mask(m2, g.order());
        CHECK(compose(e_star(g, e), e_star(g, f)) == e_star(g, product_set(g, f, e)));
      }
    }
  }
}

TEST_CASE("adjoint support") {
  CHECK(adjoint_support(rel(2, {{0, 1}})) == rel(2, {{1, 0}}));
  const SupportRelation sym = rel(3, {{0, 1}, {1, 0}, {2, 2}});
  CHECK(adjoint_support(sym) == sym);
  const FiniteGroup s3 = build_group("symmetric:3");
  for (std::uint64_t m = 0; m < 64; ++m) {
    const ElementSet e = verify::subset_from_mask(m, 6);
    CHECK(adjoint_support(e_star(s3, e)) == e_star(s3, inverse_set(s3, e)));
  }
}

TEST_CASE("module_properties examples") {
  const FiniteGroup z4 = build_group("cyclic:4");
  const Element half[] = {0, 2};
  ModuleReport r = module_properties(z4, half);
  CHECK(r.unital);
  CHECK(r.selfadjoint);
  CHECK(r.algebra);
  CHECK(r.von_neumann);
  CHECK(r.sides_agree());
  REQUIRE(r.generated_subgroup);
  CHECK(r.coset_classes->classes == std::vector<ElementSet>{{0, 2}, {1, 3}});

  const Element one[] = {1};
  r = module_properties(z4, one);
  CHECK_FALSE(r.unital);
  CHECK_FALSE(r.selfadjoint);
  CHECK_FALSE(r.algebra);
  CHECK(r.sides_agree());

  // [0,2,1] is a transposition in symmetric:3.
  const FiniteGroup s3 = build_group("symmetric:3");
  const Element transposition[] = {0, 1};
  r = module_properties(s3, transposition);
  CHECK(r.unital);
  CHECK(r.selfadjoint);
  CHECK(r.algebra);
  CHECK(r.von_neumann);

  r = module_properties(z4, std::span<const Element>{});
  CHECK_FALSE(r.generated_subgroup.has_value());
  CHECK_FALSE(r.unital);
  CHECK(r.selfadjoint);
  CHECK(r.algebra);
  CHECK(r.sides_agree());
}

TEST_CASE("star_closure") {
  const FiniteGroup z8 = build_group("cyclic:8");
  const Element two[] = {2};
  const StarClosure c = star_closure(e_star(z8, two));
  CHECK(c.blocks.classes == std::vector<std::vector<std::size_t>>{{0, 2, 4, 6}, {1, 3, 5, 7}});
  CHECK(star_closure(SupportRelation::full(5)).blocks.classes.size() == 1);

  // Untouched points become singletons.
  const StarClosure partial = star_closure(rel(4, {{0, 2}}));
  CHECK(partial.blocks.classes == std::vector<std::vector<std::size_t>>{{0, 2}, {1}, {3}});
  CHECK(partial.relation.contains_diagonal());

  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    const SupportRelation omega = verify::random_relation(1 + t % 8, 0.2, rng);
    const SupportRelation closed = star_closure(omega).relation;
    CHECK(omega.is_subset_of(closed));
    CHECK(closed.is_symmetric());
    CHECK(compose(closed, closed) == closed);
  }
}

TEST_CASE("relation literal format") {
  std::istringstream in("# a nest\n3\n0 0\n1 1\n2 2\n\n0 1  # upper\n");
  const SupportRelation r = read_relation(in);
  CHECK(r == rel(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}}));

  std::ostringstream out;
  write_relation(out, r);
  std::istringstream back(out.str());
  CHECK(read_relation(back) == r);

  std::istringstream bad_index("2\n0 5\n");
  CHECK_THROWS_WITH_AS(read_relation(bad_index), "relation line 2, column 3: index 5 outside ground set",
                       InputError);
  std::istringstream bad_token("2\n0 x\n");
  CHECK_THROWS_WITH_AS(read_relation(bad_token),
                       "relation line 2, column 3: expected a non-negative integer, got 'x'",
                       InputError);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_relation(empty), InputError);
}
