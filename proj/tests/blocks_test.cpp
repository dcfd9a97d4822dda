#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "masa/blocks.hpp"
#include "masa/error.hpp"
#include "masa/verify.hpp"

using namespace masa;

namespace {

const FiniteGroup& z2z4() {
  static const FiniteGroup g = build_group("product:(cyclic:2,cyclic:4)");
  return g;
}

Subgroup h1() { return Subgroup(z2z4(), {0, 1, 2, 3}); }
Subgroup h2() { return Subgroup(z2z4(), {0, 2, 4, 6}); }

using Classes = std::vector<std::vector<std::size_t>>;

}  // namespace

TEST_CASE("cstar_support") {
  const BlockStructure b = cstar_support(e_star(z2z4(), h1().elements()));
  CHECK(b.classes == Classes{{0, 1, 2, 3}, {4, 5, 6, 7}});
  CHECK(b.block_dims() == std::vector<std::size_t>{4, 4});
  CHECK(cstar_support(SupportRelation::diagonal(3)).classes == Classes{{0}, {1}, {2}});
  CHECK(cstar_support(SupportRelation::full(3)).classes.size() == 1);
  CHECK_THROWS_AS(cstar_support(SupportRelation(3)), InputError);
}

TEST_CASE("trivial_intersection") {
  const FiniteGroup s3 = build_group("symmetric:3");
  const Element id[] = {0};
  TipResult r = trivial_intersection(e_star(s3, id));
  CHECK(r.holds);
  CHECK_FALSE(r.witness.has_value());
  CHECK(r.masks_checked == 63);
  CHECK(cstar_support(e_star(s3, id)).classes.size() == 6);

  const FiniteGroup z6 = build_group("cyclic:6");
  const Element half[] = {0, 3};
  r = trivial_intersection(e_star(z6, half));
  CHECK(r.holds);
  CHECK(cstar_support(e_star(z6, half)).block_dims() == std::vector<std::size_t>{2, 2, 2});

  const SupportRelation big = SupportRelation::diagonal(21);
  CHECK_THROWS_AS(trivial_intersection(big, IdealSearch::kExhaustive), UnsupportedSize);
  r = trivial_intersection(big);
  CHECK(r.holds);
  CHECK_FALSE(r.exhaustive);
  CHECK(r.masks_checked == 21);

  CHECK_THROWS_AS(trivial_intersection(SupportRelation(2)), InputError);

  std::mt19937_64 rng(31);
  for (int t = 0; t < 30; ++t) CHECK(trivial_intersection(verify::random_unital_relation(1 + t % 8, rng)).holds);
}

TEST_CASE("envelope_report") {
  CHECK(envelope_report(e_star(z2z4(), h1().elements())) == std::vector<std::size_t>{4, 4});
  const FiniteGroup s3 = build_group("symmetric:3");
  const ElementSet all{0, 1, 2, 3, 4, 5};
  CHECK(envelope_report(e_star(s3, all)) == std::vector<std::size_t>{6});
  const FiniteGroup z4 = build_group("cyclic:4");
  const Element id[] = {0};
  CHECK(envelope_report(e_star(z4, id)) == std::vector<std::size_t>{1, 1, 1, 1});

  std::mt19937_64 rng(13);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + t % 7;
    const SupportRelation omega = verify::random_unital_relation(n, rng);
    Permutation f(n);
    std::iota(f.begin(), f.end(), 0);
    std::shuffle(f.begin(), f.end(), rng);
    CHECK(envelope_report(permute_support(f, omega)) == envelope_report(omega));
  }
}

TEST_CASE("block dims of subgroup supports are |H| repeated [G:H] times") {
  for (const FiniteGroup& g : verify::catalog(12)) {
    for (const Subgroup& h : all_subgroups(g)) {
      const auto dims = cstar_support(e_star(g, h.elements())).block_dims();
      CHECK(dims == std::vector<std::size_t>(index(h), h.order()));
    }
  }
}

TEST_CASE("module_iso_decide") {
  const ClassificationVerdict v = module_iso_decide(h1(), h2());
  CHECK(v.isomorphic);
  CHECK(v.subgroup_orders == std::pair<std::size_t, std::size_t>{4, 4});
  CHECK(v.indices == std::pair<std::size_t, std::size_t>{2, 2});
  REQUIRE(v.witness);
  CHECK(permutation_maps_support(*v.witness, e_star(z2z4(), h1().elements()),
                                 e_star(z2z4(), h2().elements())));

  const FiniteGroup z4 = build_group("cyclic:4");
  const ClassificationVerdict no = module_iso_decide(Subgroup(z4, {0, 1, 2, 3}), Subgroup(z4, {0, 2}));
  CHECK_FALSE(no.isomorphic);
  CHECK_FALSE(no.witness.has_value());
  CHECK(no.subgroup_orders == std::pair<std::size_t, std::size_t>{4, 2});

  const FiniteGroup z6 = build_group("cyclic:6");
  const FiniteGroup s3 = build_group("symmetric:3");
  const Subgroup a(z6, {0, 3});
  const Subgroup b(s3, {0, 1});
  const ClassificationVerdict cross = module_iso_decide(a, b);
  CHECK(cross.isomorphic);
  CHECK(cross.indices == std::pair<std::size_t, std::size_t>{3, 3});
  CHECK(verify::brute_force_module_iso(a, b));
}

TEST_CASE("module_iso_unitary") {
  const Subgroup h = h1();
  const Permutation same = module_iso_unitary(h, h);
  CHECK(permutation_maps_support(same, e_star(z2z4(), h.elements()), e_star(z2z4(), h.elements())));

  const Permutation f = module_iso_unitary(h1(), h2());
  // Cosets paired by least representative, elements matched ascending.
  CHECK(f == Permutation{0, 2, 4, 6, 1, 3, 5, 7});

  const FiniteGroup z4 = build_group("cyclic:4");
  CHECK_THROWS_AS(module_iso_unitary(Subgroup(z4, {0, 1, 2, 3}), Subgroup(z4, {0, 2})), InputError);

  const FiniteGroup z6 = build_group("cyclic:6");
  const FiniteGroup s3 = build_group("symmetric:3");
  const Subgroup a(z6, {0, 3});
  const Subgroup b(s3, {0, 1});
  CHECK(permutation_maps_support(module_iso_unitary(a, b), e_star(z6, a.elements()),
                                 e_star(s3, b.elements())));
}

TEST_CASE("module_iso_decide agrees with bijection search on small groups") {
  std::vector<Subgroup> pool;
  for (const FiniteGroup& g : verify::catalog(4))
    for (const Subgroup& h : all_subgroups(g)) pool.push_back(h);
  for (const Subgroup& a : pool) {
    for (const Subgroup& b : pool) {
      if (a.parent().order() != b.parent().order()) {
        CHECK_FALSE(module_iso_decide(a, b).isomorphic);
        continue;
      }
      CHECK(module_iso_decide(a, b).isomorphic == verify::brute_force_module_iso(a, b));
    }
  }
}

TEST_CASE("subset_module_invariants") {
  const FiniteGroup z8 = build_group("cyclic:8");
  const Element e1[] = {0, 2};
  CHECK(subset_module_invariants(z8, e1) == SubsetInvariants{4, 2});
  const Element e2[] = {0};
  CHECK(subset_module_invariants(z8, e2) == SubsetInvariants{1, 8});
  const FiniteGroup s3 = build_group("symmetric:3");
  // [1,2,0] is a 3-cycle.
  const Element e3[] = {0, 3};
  CHECK(subset_module_invariants(s3, e3) == SubsetInvariants{3, 2});
  const Element e4[] = {2};
  CHECK_THROWS_AS(subset_module_invariants(z8, e4), InputError);
}
