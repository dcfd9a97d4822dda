#include <doctest.h>

#include <sstream>

#include "masa/error.hpp"
#include "masa/group.hpp"
#include "masa/verify.hpp"

using namespace masa;

namespace {

const FiniteGroup& z2z4() {
  static const FiniteGroup g = build_group("product:(cyclic:2,cyclic:4)");
  return g;
}

// (a,b) in Z2×Z4
Element pair_index(std::size_t a, std::size_t b) { return a * 4 + b; }

}  // namespace

TEST_CASE("cyclic group table is addition mod n") {
  const FiniteGroup g = build_group("cyclic:4");
  REQUIRE(g.order() == 4);
  for (Element a = 0; a < 4; ++a)
    for (Element b = 0; b < 4; ++b) CHECK(g.multiply(a, b) == (a + b) % 4);
  CHECK(g.inverse(1) == 3);
  CHECK(g.element_order(2) == 2);
}

TEST_CASE("direct product encodes pairs row-major") {
  const FiniteGroup& g = z2z4();
  REQUIRE(g.order() == 8);
  CHECK(g.label(pair_index(0, 1)) == "(0,1)");
  CHECK(g.label(pair_index(1, 2)) == "(1,2)");
  CHECK(g.multiply(pair_index(1, 3), pair_index(1, 2)) == pair_index(0, 1));
}

TEST_CASE("symmetric and dihedral groups") {
  const FiniteGroup s3 = build_group("symmetric:3");
  CHECK(s3.order() == 6);
  CHECK(s3.label(0) == "[0,1,2]");
  // [0,2,1] and [1,0,2] do not commute.
  CHECK(s3.multiply(1, 2) != s3.multiply(2, 1));
  CHECK(build_group("symmetric:5").order() == 120);
  CHECK_THROWS_AS(build_group("symmetric:6"), InputError);

  const FiniteGroup d3 = build_group("dihedral:3");
  CHECK(d3.order() == 6);
  CHECK(groups_isomorphic(d3, s3));
  CHECK_FALSE(groups_isomorphic(build_group("cyclic:6"), s3));
  CHECK(groups_isomorphic(build_group("dihedral:2"), build_group("product:(cyclic:2,cyclic:2)")));
}

TEST_CASE("table validation") {
  SUBCASE("missing inverse") {
    const std::vector<std::vector<Element>> t{{0, 1}, {1, 1}};
    CHECK_THROWS_WITH_AS(FiniteGroup::from_table(t), "element 1 has no inverse", InputError);
  }
  SUBCASE("non-associative loop of order 5") {
    const std::vector<std::vector<Element>> t{
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    try {
      FiniteGroup::from_table(t);
      FAIL("expected an associativity error");
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).starts_with("associativity fails at ("));
    }
  }
  SUBCASE("no identity") {
    const std::vector<std::vector<Element>> t{{1, 0}, {1, 0}};
    CHECK_THROWS_AS(FiniteGroup::from_table(t), InputError);
  }
  SUBCASE("entry out of range") {
    const std::vector<std::vector<Element>> t{{0, 2}, {1, 0}};
    CHECK_THROWS_AS(FiniteGroup::from_table(t), InputError);
  }
  SUBCASE("identity is relabelled to index 0") {
    const std::vector<std::vector<Element>> t{{1, 0}, {0, 1}};
    const FiniteGroup g = FiniteGroup::from_table(t);
    CHECK(g.multiply(0, 1) == 1);
    CHECK(g.multiply(1, 1) == 0);
  }
}

TEST_CASE("table file") {
  std::istringstream in("3\n0 1 2\n1 2 0\n2 0 1\n");
  const FiniteGroup g = read_group_table(in);
  CHECK(groups_isomorphic(g, build_group("cyclic:3")));

  std::istringstream truncated("2\n0 1\n1\n");
  CHECK_THROWS_AS(read_group_table(truncated), InputError);
}

TEST_CASE("malformed specs") {
  for (const char* spec : {"cyclic:", "foo:3", "product:(cyclic:2", "product:(cyclic:2,cyclic:3",
                           "cyclic:0", "cyclic:3x", "table:/nonexistent/file"}) {
    CAPTURE(spec);
    CHECK_THROWS_AS(build_group(spec), InputError);
  }
}

TEST_CASE("generate_subgroup") {
  const FiniteGroup z8 = build_group("cyclic:8");
  const Element two[] = {2};
  CHECK(generate_subgroup(z8, two).elements() == ElementSet{0, 2, 4, 6});

  const Element h1_gen[] = {pair_index(0, 1)};
  const Subgroup h1 = generate_subgroup(z2z4(), h1_gen);
  CHECK(h1.order() == 4);
  CHECK(h1.elements() == ElementSet{0, 1, 2, 3});

  const Element h2_gen[] = {pair_index(0, 2), pair_index(1, 0)};
  const Subgroup h2 = generate_subgroup(z2z4(), h2_gen);
  CHECK(h2.elements() ==
        ElementSet{pair_index(0, 0), pair_index(0, 2), pair_index(1, 0), pair_index(1, 2)});

  CHECK_THROWS_AS(generate_subgroup(z8, std::span<const Element>{}), InputError);
  const Element out_of_range[] = {9};
  CHECK_THROWS_AS(generate_subgroup(z8, out_of_range), InputError);
}

TEST_CASE("left cosets and index") {
  const FiniteGroup z4 = build_group("cyclic:4");
  const Subgroup half(z4, {0, 2});
  const CosetPartition c = left_cosets(half);
  CHECK(c.classes == std::vector<ElementSet>{{0, 2}, {1, 3}});
  CHECK(index(half) == 2);
  CHECK(index(Subgroup(z4, {0, 1, 2, 3})) == 1);
  CHECK(left_cosets(Subgroup(z4, {0, 1, 2, 3})).classes.size() == 1);

  const Subgroup h1(z2z4(), {0, 1, 2, 3});
  const auto classes = left_cosets(h1).classes;
  CHECK(classes == verify::coset_classes_by_scan(h1));
  CHECK(classes.size() == 2);
  CHECK(classes[0].size() == 4);
  CHECK(index(Subgroup(z2z4(), {0, 2, 4, 6})) == 2);

  CHECK_THROWS_AS(Subgroup(z4, {0, 1}), InputError);
  CHECK_THROWS_AS(Subgroup(z4, {2}), InputError);
}

TEST_CASE("small group isomorphism") {
  const Subgroup h1(z2z4(), {0, 1, 2, 3});
  const Subgroup h2(z2z4(), {0, 2, 4, 6});
  CHECK_FALSE(small_group_isomorphic(h1, h2));
  CHECK_FALSE(small_group_isomorphic(h2, h1));

  const FiniteGroup z4 = build_group("cyclic:4");
  CHECK(small_group_isomorphic(Subgroup(z4, {0, 1, 2, 3}), Subgroup(z4, {0, 1, 2, 3})));

  const FiniteGroup z6 = build_group("cyclic:6");
  const FiniteGroup z3 = build_group("cyclic:3");
  CHECK(small_group_isomorphic(Subgroup(z6, {0, 2, 4}), Subgroup(z3, {0, 1, 2})));

  CHECK_THROWS_AS(groups_isomorphic(build_group("cyclic:13"), build_group("cyclic:13")),
                  UnsupportedSize);
}

TEST_CASE("subgroup lattice sizes") {
  CHECK(all_subgroups(build_group("symmetric:3")).size() == 6);
  CHECK(all_subgroups(build_group("cyclic:6")).size() == 4);
  CHECK(all_subgroups(build_group("product:(cyclic:2,cyclic:2)")).size() == 5);
  CHECK(all_subgroups(z2z4()).size() == 8);
  CHECK(all_subgroups(build_group("dihedral:4")).size() == 10);
}

TEST_CASE("catalog invariants: group axioms, closure stability, Lagrange, cosets") {
  for (const FiniteGroup& g : verify::catalog(12)) {
    CAPTURE(g.name());
    const std::size_t n = g.order();
    for (Element a = 0; a < n; ++a) {
      CHECK(g.multiply(0, a) == a);
      CHECK(g.multiply(a, g.inverse(a)) == 0);
      for (Element b = 0; b < n; ++b)
        for (Element c = 0; c < n; ++c)
          REQUIRE(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c)));
    }
    const auto subgroups = all_subgroups(g);
    for (const Subgroup& h : subgroups) {
      CHECK(n % h.order() == 0);
      CHECK(generate_subgroup(g, h.elements()).elements() == h.elements());
      const auto cosets = left_cosets(h);
      CHECK(cosets.classes == verify::coset_classes_by_scan(h));
      CHECK(cosets.classes.size() * h.order() == n);
    }
    if (n <= 8) {
      for (const Subgroup& a : subgroups) {
        CHECK(small_group_isomorphic(a, a));
        for (const Subgroup& b : subgroups)
          CHECK(small_group_isomorphic(a, b) == small_group_isomorphic(b, a));
      }
    }
  }
}
