#include "masa/support.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "masa/error.hpp"

namespace masa {

IndexSet make_index_set(std::size_t ground, std::span<const std::size_t> members) {
  IndexSet set(ground);
  for (std::size_t m : members) {
    if (m >= ground) {
      throw InputError("index " + std::to_string(m) + " outside ground set of size " +
                       std::to_string(ground));
    }
    set.set(m);
  }
  return set;
}

std::vector<std::size_t> members_of(const IndexSet& set) {
  std::vector<std::size_t> out;
  for (auto i = set.find_first(); i != IndexSet::npos; i = set.find_next(i)) out.push_back(i);
  return out;
}

std::string format_index_set(const IndexSet& set) {
  std::string s = "{";
  bool first = true;
  for (std::size_t i : members_of(set)) {
    s += (first ? "" : ",") + std::to_string(i);
    first = false;
  }
  return s + "}";
}

SupportRelation::SupportRelation(std::size_t ground) : rows_(ground, IndexSet(ground)) {}

SupportRelation SupportRelation::diagonal(std::size_t ground) {
  SupportRelation r(ground);
  for (std::size_t g = 0; g < ground; ++g) r.rows_[g].set(g);
  return r;
}

SupportRelation SupportRelation::full(std::size_t ground) {
  SupportRelation r(ground);
  for (auto& row : r.rows_) row.set();
  return r;
}

SupportRelation SupportRelation::from_pairs(std::size_t ground, std::span<const Pair> pairs) {
  SupportRelation r(ground);
  for (auto [g, h] : pairs) r.insert(g, h);
  return r;
}

void SupportRelation::insert(std::size_t g, std::size_t h) {
  if (g >= ground() || h >= ground()) {
    throw InputError("pair (" + std::to_string(g) + "," + std::to_string(h) +
                     ") outside ground set of size " + std::to_string(ground()));
  }
  rows_[h].set(g);
}

void SupportRelation::erase(std::size_t g, std::size_t h) {
  if (g < ground() && h < ground()) rows_[h].reset(g);
}

std::size_t SupportRelation::size() const {
  std::size_t n = 0;
  for (const auto& row : rows_) n += row.count();
  return n;
}

std::vector<Pair> SupportRelation::pairs() const {
  std::vector<Pair> out;
  for (std::size_t h = 0; h < ground(); ++h)
    for (std::size_t g : members_of(rows_[h])) out.emplace_back(g, h);
  std::sort(out.begin(), out.end());
  return out;
}

void SupportRelation::check_same_ground(const SupportRelation& other) const {
  if (ground() != other.ground()) {
    throw InputError("relations on ground sets of size " + std::to_string(ground()) + " and " +
                     std::to_string(other.ground()));
  }
}

bool SupportRelation::is_subset_of(const SupportRelation& other) const {
  check_same_ground(other);
  for (std::size_t h = 0; h < ground(); ++h)
    if (!rows_[h].is_subset_of(other.rows_[h])) return false;
  return true;
}

bool SupportRelation::contains_diagonal() const {
  for (std::size_t g = 0; g < ground(); ++g)
    if (!rows_[g].test(g)) return false;
  return true;
}

bool SupportRelation::is_symmetric() const { return *this == adjoint_support(*this); }

SupportRelation SupportRelation::operator|(const SupportRelation& other) const {
  check_same_ground(other);
  SupportRelation r = *this;
  for (std::size_t h = 0; h < ground(); ++h) r.rows_[h] |= other.rows_[h];
  return r;
}

SupportRelation SupportRelation::operator&(const SupportRelation& other) const {
  check_same_ground(other);
  SupportRelation r = *this;
  for (std::size_t h = 0; h < ground(); ++h) r.rows_[h] &= other.rows_[h];
  return r;
}

SupportRelation SupportRelation::complement() const {
  SupportRelation r = *this;
  for (auto& row : r.rows_) row.flip();
  return r;
}

SupportRelation adjoint_support(const SupportRelation& omega) {
  SupportRelation r(omega.ground());
  for (std::size_t h = 0; h < omega.ground(); ++h)
    for (std::size_t g : members_of(omega.row(h))) r.insert(h, g);
  return r;
}

SupportRelation compose(const SupportRelation& outer, const SupportRelation& inner) {
  if (outer.ground() != inner.ground()) {
    throw InputError("compose: ground sizes " + std::to_string(outer.ground()) + " and " +
                     std::to_string(inner.ground()) + " differ");
  }
  // Row h of the product: OR of inner rows k over all k with (k,h) ∈ outer.
  const std::size_t n = outer.ground();
  SupportRelation r(n);
  for (std::size_t h = 0; h < n; ++h) {
    IndexSet acc(n);
    for (std::size_t k : members_of(outer.row(h))) acc |= inner.row(k);
    for (std::size_t g : members_of(acc)) r.insert(g, h);
  }
  return r;
}

SupportRelation e_star(const FiniteGroup& group, std::span<const Element> subset) {
  ElementSet e = normalize_subset(group, {subset.begin(), subset.end()});
  SupportRelation r(group.order());
  for (Element g = 0; g < group.order(); ++g)
    for (Element x : e) r.insert(g, group.multiply(g, x));
  return r;
}

std::vector<std::size_t> BlockStructure::block_dims() const {
  std::vector<std::size_t> dims;
  for (const auto& c : classes) dims.push_back(c.size());
  return dims;
}

SupportRelation BlockStructure::relation() const {
  SupportRelation r(class_of.size());
  for (const auto& c : classes)
    for (std::size_t g : c)
      for (std::size_t h : c) r.insert(g, h);
  return r;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

StarClosure star_closure(const SupportRelation& omega) {
  const std::size_t n = omega.ground();
  UnionFind uf(n);
  for (auto [g, h] : omega.pairs()) uf.unite(g, h);

  BlockStructure blocks;
  blocks.class_of.assign(n, 0);
  std::vector<std::size_t> slot(n, n);
  for (std::size_t g = 0; g < n; ++g) {
    std::size_t root = uf.find(g);
    if (slot[root] == n) {
      slot[root] = blocks.classes.size();
      blocks.classes.emplace_back();
    }
    blocks.classes[slot[root]].push_back(g);
    blocks.class_of[g] = slot[root];
  }
  SupportRelation rel = blocks.relation();
  return {std::move(rel), std::move(blocks)};
}

ModuleReport module_properties(const FiniteGroup& group, std::span<const Element> subset) {
  const ElementSet e = normalize_subset(group, {subset.begin(), subset.end()});
  const SupportRelation omega = e_star(group, e);

  ModuleReport report;
  report.unital = omega.contains_diagonal();
  report.selfadjoint = omega.is_symmetric();
  report.algebra = compose(omega, omega).is_subset_of(omega);
  report.von_neumann = report.unital && report.selfadjoint && report.algebra;

  report.group_side.unital = std::binary_search(e.begin(), e.end(), FiniteGroup::identity());
  report.group_side.selfadjoint = inverse_set(group, e) == e;
  const ElementSet ee = product_set(group, e, e);
  report.group_side.algebra = std::includes(e.begin(), e.end(), ee.begin(), ee.end());

  if (!e.empty()) {
    report.generated_subgroup = generate_subgroup(group, e);
    report.coset_classes = left_cosets(*report.generated_subgroup);
  }
  return report;
}

SupportRelation read_relation(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<SupportRelation> rel;

  auto fail = [&](std::size_t column, const std::string& what) {
    throw InputError("relation line " + std::to_string(line_no) + ", column " +
                     std::to_string(column) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::vector<std::pair<long long, std::size_t>> tokens;  // value, column
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      const std::string tok = line.substr(start, i - start);
      if (!std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        fail(start + 1, "expected a non-negative integer, got '" + tok + "'");
      }
      if (tok.size() > 9) fail(start + 1, "number too large");
      tokens.emplace_back(std::stoll(tok), start + 1);
    }
    if (tokens.empty()) continue;
    if (!rel) {
      if (tokens.size() != 1) fail(tokens[1].second, "expected only the ground size");
      if (tokens[0].first == 0) fail(tokens[0].second, "ground size must be positive");
      rel.emplace(static_cast<std::size_t>(tokens[0].first));
      continue;
    }
    if (tokens.size() != 2) fail(tokens.front().second, "expected a pair 'g h'");
    for (auto [value, column] : tokens) {
      if (static_cast<std::size_t>(value) >= rel->ground()) {
        fail(column, "index " + std::to_string(value) + " outside ground set");
      }
    }
    rel->insert(static_cast<std::size_t>(tokens[0].first),
                static_cast<std::size_t>(tokens[1].first));
  }
  if (!rel) throw InputError("relation: missing ground size");
  return *rel;
}

void write_relation(std::ostream& out, const SupportRelation& omega) {
  out << omega.ground() << '\n';
  for (auto [g, h] : omega.pairs()) out << g << ' ' << h << '\n';
}

}  // namespace masa
